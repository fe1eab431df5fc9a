#include "uavsim/scan_matching.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Cholesky>

#include "uavsim/errors.hpp"

namespace uavsim {

namespace {

std::vector<Vec2> scan_points(const LaserScan& scan) {
  std::vector<Vec2> pts;
  pts.reserve(scan.ranges.size());
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    const double r = scan.ranges[i];
    if (!range_valid(r)) continue;
    const double a = scan.angle(i);
    pts.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  return pts;
}

double score_points(const std::vector<Vec2>& pts, const OccupancyGrid& map,
                    const Pose2& pose) {
  if (pts.empty()) return 0.0;
  std::size_t hits = 0;
  for (const Vec2& p : pts) {
    const auto [ix, iy] = map.cell_of(pose.transform(p));
    hits += map.occupied(ix, iy) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(pts.size());
}

}  // namespace

double scan_score(const LaserScan& scan, const OccupancyGrid& map, const Pose2& pose) {
  return score_points(scan_points(scan), map, pose);
}

ScanMatchResult scan_match(const LaserScan& scan, const OccupancyGrid& map,
                           const Pose2& initial, const ScanMatchParams& params) {
  if (map.occupied_count() == 0) {
    throw_error(ErrorCategory::kValidation, "scan_match: map has no occupied cells");
  }
  const std::vector<Vec2> pts = scan_points(scan);
  if (static_cast<int>(pts.size()) < params.min_valid_beams) {
    throw_error(ErrorCategory::kValidation, "scan_match: too few valid beams");
  }

  // Correlative search on a cell-size translation lattice.
  const double step_xy = map.cell_size();
  const int nx = static_cast<int>(std::round(params.window_xy / step_xy));
  const int nt = static_cast<int>(std::round(params.window_theta / params.coarse_step_theta));

  Pose2 best = initial;
  double best_score = -1.0;
  double best_dist = 0.0;
  for (int it = -nt; it <= nt; ++it) {
    const double theta = wrap_angle(initial.theta + it * params.coarse_step_theta);
    for (int iy = -nx; iy <= nx; ++iy) {
      for (int ix = -nx; ix <= nx; ++ix) {
        const Pose2 candidate{initial.x + ix * step_xy, initial.y + iy * step_xy, theta};
        const double score = score_points(pts, map, candidate);
        const double dist = std::abs(ix) + std::abs(iy) + std::abs(it);
        if (score > best_score || (score == best_score && dist < best_dist)) {
          best_score = score;
          best = candidate;
          best_dist = dist;
        }
      }
    }
  }

  if (best_score < params.min_score) {
    throw_error(ErrorCategory::kLowOverlap, "scan_match: best score below usable threshold");
  }

  // Gauss-Newton refinement on point-to-nearest-occupied-cell-center
  // residuals, re-associated each iteration.
  Pose2 refined = best;
  for (int iter = 0; iter < params.refine_iterations; ++iter) {
    Mat3 h = Mat3::Zero();
    Vec3 b = Vec3::Zero();
    int associated = 0;
    const double c = std::cos(refined.theta), s = std::sin(refined.theta);
    for (const Vec2& p : pts) {
      const Vec2 wp = refined.transform(p);
      const auto [ix, iy] = map.cell_of(wp);
      // Nearest occupied cell center in a small neighborhood.
      double best_d2 = params.refine_association_dist * params.refine_association_dist;
      Vec2 target;
      bool found = false;
      const int radius = static_cast<int>(
          std::ceil(params.refine_association_dist / map.cell_size()));
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          if (!map.occupied(ix + dx, iy + dy)) continue;
          const Vec2 cc = map.cell_center(ix + dx, iy + dy);
          const double d2 = (cc - wp).squaredNorm();
          if (d2 < best_d2) {
            best_d2 = d2;
            target = cc;
            found = true;
          }
        }
      }
      if (!found) continue;
      ++associated;

      const Vec2 r = wp - target;
      Eigen::Matrix<double, 2, 3> j;
      j << 1.0, 0.0, -s * p.x() - c * p.y(),
           0.0, 1.0, c * p.x() - s * p.y();
      h += j.transpose() * j;
      b += j.transpose() * r;
    }
    if (associated < params.min_valid_beams) break;
    h += Mat3::Identity() * 1e-9;
    const Vec3 step = h.ldlt().solve(-b);
    refined.x += step.x();
    refined.y += step.y();
    refined.theta = wrap_angle(refined.theta + step.z());
    if (step.head<2>().norm() < 1e-6 && std::abs(step.z()) < 1e-6) break;
  }

  const double refined_score = score_points(pts, map, refined);
  ScanMatchResult result;
  if (refined_score >= best_score) {
    result.pose = refined;
    result.score = refined_score;
  } else {
    // Keep the refinement only if it did not lose endpoint agreement.
    result.pose = best;
    result.score = best_score;
  }
  return result;
}

}  // namespace uavsim
