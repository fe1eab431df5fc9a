#include "uavsim/occupancy_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uavsim/errors.hpp"

namespace uavsim {

OccupancyGrid::OccupancyGrid(const Vec2& origin, double cell_size, int width, int height)
    : origin_(origin), cell_size_(cell_size), width_(width), height_(height) {
  cells_.assign(static_cast<std::size_t>(width) * height, 0.0f);
}

OccupancyGrid OccupancyGrid::for_world(const WorldModel& world) {
  const Vec3 e = world.bounds.extents();
  const int w = static_cast<int>(std::ceil(e.x() / world.cell_size));
  const int h = static_cast<int>(std::ceil(e.y() / world.cell_size));
  return OccupancyGrid({world.bounds.min.x(), world.bounds.min.y()}, world.cell_size, w, h);
}

void OccupancyGrid::add_hit(int ix, int iy) {
  if (!inside(ix, iy)) return;
  auto& c = cells_[static_cast<std::size_t>(iy) * width_ + ix];
  c = static_cast<float>(std::clamp(static_cast<double>(c) + kLogOddsHit,
                                    kLogOddsMin, kLogOddsMax));
}

void OccupancyGrid::add_miss(int ix, int iy) {
  if (!inside(ix, iy)) return;
  auto& c = cells_[static_cast<std::size_t>(iy) * width_ + ix];
  c = static_cast<float>(std::clamp(static_cast<double>(c) - kLogOddsMiss,
                                    kLogOddsMin, kLogOddsMax));
}

void OccupancyGrid::set_log_odds(int ix, int iy, double value) {
  if (!inside(ix, iy)) return;
  cells_[static_cast<std::size_t>(iy) * width_ + ix] =
      static_cast<float>(std::clamp(value, kLogOddsMin, kLogOddsMax));
}

std::size_t OccupancyGrid::occupied_count() const {
  std::size_t n = 0;
  for (float c : cells_) n += (c > kOccupiedThreshold) ? 1 : 0;
  return n;
}

std::vector<std::pair<int, int>> OccupancyGrid::occupied_cells() const {
  std::vector<std::pair<int, int>> out;
  for (int iy = 0; iy < height_; ++iy) {
    for (int ix = 0; ix < width_; ++ix) {
      if (occupied(ix, iy)) out.emplace_back(ix, iy);
    }
  }
  return out;
}

double OccupancyGrid::nearest_occupied_distance(const Vec2& p, double max_dist) const {
  const auto [cx, cy] = cell_of(p);
  const int max_ring = static_cast<int>(std::ceil(max_dist / cell_size_)) + 1;
  double best = std::numeric_limits<double>::infinity();
  for (int ring = 0; ring <= max_ring; ++ring) {
    // Once a hit exists, cells in farther rings cannot beat it by more than
    // one ring of slack.
    if (std::isfinite(best) && (ring - 1) * cell_size_ > best) break;
    for (int dy = -ring; dy <= ring; ++dy) {
      for (int dx = -ring; dx <= ring; ++dx) {
        if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
        const int ix = cx + dx, iy = cy + dy;
        if (!occupied(ix, iy)) continue;
        best = std::min(best, (cell_center(ix, iy) - p).norm());
      }
    }
  }
  if (!std::isfinite(best) || best > max_dist) return -1.0;
  return best;
}

namespace {

// Amanatides-Woo traversal of the cells along [origin, endpoint).
template <typename Fn>
void traverse_cells(const OccupancyGrid& map, const Vec2& origin, const Vec2& endpoint,
                    Fn&& visit) {
  const double cs = map.cell_size();
  auto [ix, iy] = map.cell_of(origin);
  const auto [ex, ey] = map.cell_of(endpoint);
  const Vec2 d = endpoint - origin;
  const double len = d.norm();
  if (len == 0.0) return;
  const Vec2 dir = d / len;

  const int step_x = dir.x() > 0.0 ? 1 : (dir.x() < 0.0 ? -1 : 0);
  const int step_y = dir.y() > 0.0 ? 1 : (dir.y() < 0.0 ? -1 : 0);

  double t_max_x = std::numeric_limits<double>::infinity();
  double t_max_y = std::numeric_limits<double>::infinity();
  double t_delta_x = std::numeric_limits<double>::infinity();
  double t_delta_y = std::numeric_limits<double>::infinity();
  if (step_x != 0) {
    const double next_x = map.origin().x() + (ix + (step_x > 0 ? 1 : 0)) * cs;
    t_max_x = (next_x - origin.x()) / dir.x();
    t_delta_x = cs / std::abs(dir.x());
  }
  if (step_y != 0) {
    const double next_y = map.origin().y() + (iy + (step_y > 0 ? 1 : 0)) * cs;
    t_max_y = (next_y - origin.y()) / dir.y();
    t_delta_y = cs / std::abs(dir.y());
  }

  int guard = static_cast<int>(len / cs) * 2 + 4;
  while ((ix != ex || iy != ey) && guard-- > 0) {
    visit(ix, iy);
    if (t_max_x < t_max_y) {
      ix += step_x;
      t_max_x += t_delta_x;
    } else {
      iy += step_y;
      t_max_y += t_delta_y;
    }
  }
}

}  // namespace

void integrate_ray(OccupancyGrid& map, const Vec2& origin, const Vec2& endpoint, bool hit) {
  traverse_cells(map, origin, endpoint, [&map](int ix, int iy) { map.add_miss(ix, iy); });
  if (hit) {
    const auto [ex, ey] = map.cell_of(endpoint);
    map.add_hit(ex, ey);
  }
}

void integrate_scan(OccupancyGrid& map, const LaserScan& scan, const Pose2& pose) {
  const Vec2 origin = pose.translation();
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    const double r = scan.ranges[i];
    const bool hit = range_valid(r);
    const double range = hit ? r : scan.range_max;
    const double a = pose.theta + scan.angle(i);
    const Vec2 endpoint = origin + range * Vec2(std::cos(a), std::sin(a));
    integrate_ray(map, origin, endpoint, hit);
  }
}

OccupancyGrid rasterize_world(const WorldModel& world) {
  OccupancyGrid grid = OccupancyGrid::for_world(world);
  const double cs = grid.cell_size();
  for (const Aabb& box : world.obstacles) {
    const auto [x0, y0] = grid.cell_of({box.min.x(), box.min.y()});
    const auto [x1, y1] = grid.cell_of({box.max.x() - 1e-12, box.max.y() - 1e-12});
    for (int iy = y0; iy <= y1; ++iy) {
      for (int ix = x0; ix <= x1; ++ix) {
        // Positive-area overlap between the cell square and the footprint.
        const Vec2 c = grid.cell_center(ix, iy);
        const double ox = std::min(c.x() + cs / 2, box.max.x()) - std::max(c.x() - cs / 2, box.min.x());
        const double oy = std::min(c.y() + cs / 2, box.max.y()) - std::max(c.y() - cs / 2, box.min.y());
        if (ox > 1e-12 && oy > 1e-12) grid.set_log_odds(ix, iy, OccupancyGrid::kLogOddsMax);
      }
    }
  }
  return grid;
}

std::vector<Vec2> world_surface_samples(const WorldModel& world, double spacing) {
  std::vector<Vec2> samples;
  auto sample_rect_perimeter = [&samples, spacing](double x0, double y0, double x1, double y1) {
    const double w = x1 - x0, h = y1 - y0;
    const int nx = std::max(1, static_cast<int>(std::ceil(w / spacing)));
    const int ny = std::max(1, static_cast<int>(std::ceil(h / spacing)));
    for (int i = 0; i <= nx; ++i) {
      const double x = x0 + w * i / nx;
      samples.push_back({x, y0});
      samples.push_back({x, y1});
    }
    for (int i = 1; i < ny; ++i) {
      const double y = y0 + h * i / ny;
      samples.push_back({x0, y});
      samples.push_back({x1, y});
    }
  };

  sample_rect_perimeter(world.bounds.min.x(), world.bounds.min.y(),
                        world.bounds.max.x(), world.bounds.max.y());
  for (const Aabb& box : world.obstacles) {
    sample_rect_perimeter(box.min.x(), box.min.y(), box.max.x(), box.max.y());
  }
  return samples;
}

double map_rmse(const OccupancyGrid& map, const WorldModel& world) {
  if (map.occupied_count() == 0) {
    throw_error(ErrorCategory::kNoData, "map_rmse: map has no occupied cells");
  }
  constexpr double kPenalty = 1.0;  // m, cap for unmapped surface samples
  const std::vector<Vec2> samples = world_surface_samples(world, world.cell_size / 2.0);
  double sum_sq = 0.0;
  for (const Vec2& s : samples) {
    double d = map.nearest_occupied_distance(s, kPenalty);
    if (d < 0.0) d = kPenalty;
    sum_sq += d * d;
  }
  return std::sqrt(sum_sq / static_cast<double>(samples.size()));
}

}  // namespace uavsim
