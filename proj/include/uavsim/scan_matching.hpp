#pragma once

#include "uavsim/frames.hpp"
#include "uavsim/occupancy_grid.hpp"

namespace uavsim {

struct ScanMatchParams {
  double window_xy = 0.5;                  // m, correlative search half-width
  double window_theta = deg_to_rad(15.0);  // rad, half-width
  double coarse_step_theta = deg_to_rad(1.0);
  int refine_iterations = 10;
  double refine_association_dist = 0.15;   // m, point-to-cell association cut
  double min_score = 0.2;                  // below this the match is unusable
  int min_valid_beams = 10;
};

struct ScanMatchResult {
  Pose2 pose;
  double score = 0.0;  // fraction of endpoints landing on occupied cells
};

// Fraction of valid beam endpoints, transformed by `pose`, that land on
// occupied map cells.
double scan_score(const LaserScan& scan, const OccupancyGrid& map, const Pose2& pose);

// Correlative grid search over +-window followed by Gauss-Newton
// point-to-nearest-occupied-cell refinement. Ties in the coarse search
// prefer the candidate closest to the initial guess. Throws kLowOverlap
// when the best achievable score stays below min_score, kValidation when
// the map is empty or the scan has too few valid beams.
ScanMatchResult scan_match(const LaserScan& scan, const OccupancyGrid& map,
                           const Pose2& initial, const ScanMatchParams& params = {});

}  // namespace uavsim
