#pragma once

#include <vector>

#include "uavsim/frames.hpp"
#include "uavsim/geometry.hpp"
#include "uavsim/world.hpp"

namespace uavsim {

// 2D log-odds occupancy map over the world's (x, y) footprint.
class OccupancyGrid {
 public:
  static constexpr double kLogOddsMin = -10.0;
  static constexpr double kLogOddsMax = 10.0;
  static constexpr double kLogOddsHit = 0.85;
  static constexpr double kLogOddsMiss = 0.4;
  static constexpr double kOccupiedThreshold = 0.0;

  OccupancyGrid() = default;
  OccupancyGrid(const Vec2& origin, double cell_size, int width, int height);

  // Grid sized to cover the world bounds.
  static OccupancyGrid for_world(const WorldModel& world);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  const Vec2& origin() const { return origin_; }

  bool inside(int ix, int iy) const {
    return ix >= 0 && ix < width_ && iy >= 0 && iy < height_;
  }
  double log_odds(int ix, int iy) const {
    return cells_[static_cast<std::size_t>(iy) * width_ + ix];
  }
  bool occupied(int ix, int iy) const {
    return inside(ix, iy) && log_odds(ix, iy) > kOccupiedThreshold;
  }
  double probability(int ix, int iy) const {
    const double lo = log_odds(ix, iy);
    return 1.0 / (1.0 + std::exp(-lo));
  }

  std::pair<int, int> cell_of(const Vec2& p) const {
    return {static_cast<int>(std::floor((p.x() - origin_.x()) / cell_size_)),
            static_cast<int>(std::floor((p.y() - origin_.y()) / cell_size_))};
  }
  Vec2 cell_center(int ix, int iy) const {
    return {origin_.x() + (ix + 0.5) * cell_size_, origin_.y() + (iy + 0.5) * cell_size_};
  }

  void add_hit(int ix, int iy);
  void add_miss(int ix, int iy);
  void set_log_odds(int ix, int iy, double value);

  std::size_t occupied_count() const;
  std::vector<std::pair<int, int>> occupied_cells() const;

  // Nearest occupied cell center within max_dist of p, or a negative value
  // if none is found.
  double nearest_occupied_distance(const Vec2& p, double max_dist) const;

 private:
  Vec2 origin_ = Vec2::Zero();
  double cell_size_ = 0.05;
  int width_ = 0;
  int height_ = 0;
  std::vector<float> cells_;
};

// Ray-traversal update: free cells along each valid beam are decremented and
// the endpoint cell incremented. Invalid beams carve free space to range_max.
void integrate_scan(OccupancyGrid& map, const LaserScan& scan, const Pose2& pose);

// Same update from explicit planar endpoints (used for depth-camera clouds).
// `hit` marks whether the segment ends on a surface or is a free-space carve.
void integrate_ray(OccupancyGrid& map, const Vec2& origin, const Vec2& endpoint, bool hit);

// Ground-truth rasterization: a cell is occupied iff its square overlaps an
// obstacle footprint, free otherwise.
OccupancyGrid rasterize_world(const WorldModel& world);

// Surface fidelity score: RMS over ground-truth surface samples (obstacle
// footprint perimeters plus the room boundary) of the distance to the
// nearest mapped-occupied cell center, capped at 1.0 m for unmapped samples.
double map_rmse(const OccupancyGrid& map, const WorldModel& world);

// Surface sample points used by map_rmse (exposed for evaluation code).
std::vector<Vec2> world_surface_samples(const WorldModel& world, double spacing);

}  // namespace uavsim
