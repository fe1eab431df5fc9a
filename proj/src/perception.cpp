#include "uavsim/perception.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>

#include "uavsim/errors.hpp"

namespace uavsim {

PointCloud depth_to_cloud(const DepthImage& depth, const Vec3& camera_position,
                          const Vec3& camera_rpy, const DepthCameraSpec& spec) {
  PointCloud cloud;
  cloud.stamp = depth.stamp;
  const Mat3 r = rotation_body_to_world(camera_rpy.x(), camera_rpy.y(), camera_rpy.z());
  const double f = spec.focal_px();
  const double cx = depth.width / 2.0, cy = depth.height / 2.0;

  for (int py = 0; py < depth.height; ++py) {
    for (int px = 0; px < depth.width; ++px) {
      const float z = depth.at(px, py);
      if (!range_valid(z)) continue;
      const double u = (px + 0.5 - cx) / f;
      const double v = (py + 0.5 - cy) / f;
      const Vec3 p_body(z, z * u, z * v);
      cloud.points.push_back(camera_position + r * p_body);
    }
  }
  return cloud;
}

namespace {

constexpr int kGaussRadius = 2;
constexpr double kGaussSigma = 1.4;

std::array<double, 25> gaussian_kernel() {
  std::array<double, 25> k{};
  double sum = 0.0;
  for (int dy = -kGaussRadius; dy <= kGaussRadius; ++dy) {
    for (int dx = -kGaussRadius; dx <= kGaussRadius; ++dx) {
      const double w = std::exp(-(dx * dx + dy * dy) / (2.0 * kGaussSigma * kGaussSigma));
      k[static_cast<std::size_t>((dy + kGaussRadius) * 5 + (dx + kGaussRadius))] = w;
      sum += w;
    }
  }
  for (double& w : k) w /= sum;
  return k;
}

inline int clamp_coord(int v, int n) { return std::clamp(v, 0, n - 1); }

}  // namespace

EdgeImage canny_edges(const GrayImage& image, double low, double high) {
  if (image.width < 5 || image.height < 5) {
    throw_error(ErrorCategory::kDimension, "canny_edges requires an image of at least 5x5");
  }
  if (!(low > 0.0) || !(low < high)) {
    throw_error(ErrorCategory::kValidation, "canny_edges requires 0 < low < high");
  }
  const int w = image.width, h = image.height;
  const std::size_t n = static_cast<std::size_t>(w) * h;

  // Gaussian smoothing with clamped borders.
  static const std::array<double, 25> kernel = gaussian_kernel();
  std::vector<double> smooth(n, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dy = -kGaussRadius; dy <= kGaussRadius; ++dy) {
        for (int dx = -kGaussRadius; dx <= kGaussRadius; ++dx) {
          const double px = image.at(clamp_coord(x + dx, w), clamp_coord(y + dy, h));
          acc += px * kernel[static_cast<std::size_t>((dy + kGaussRadius) * 5 +
                                                      (dx + kGaussRadius))];
        }
      }
      smooth[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }

  // Sobel gradients (clamped borders), magnitude, and quantized direction.
  std::vector<double> mag(n, 0.0);
  std::vector<std::uint8_t> dir(n, 0);
  auto s = [&](int x, int y) {
    return smooth[static_cast<std::size_t>(clamp_coord(y, h)) * w + clamp_coord(x, w)];
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = -s(x - 1, y - 1) + s(x + 1, y - 1) - 2.0 * s(x - 1, y) +
                        2.0 * s(x + 1, y) - s(x - 1, y + 1) + s(x + 1, y + 1);
      const double gy = -s(x - 1, y - 1) - 2.0 * s(x, y - 1) - s(x + 1, y - 1) +
                        s(x - 1, y + 1) + 2.0 * s(x, y + 1) + s(x + 1, y + 1);
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      mag[i] = std::sqrt(gx * gx + gy * gy);
      double angle = std::atan2(gy, gx) * 180.0 / kPi;  // degrees
      if (angle < 0.0) angle += 180.0;
      std::uint8_t bin = 0;
      if (angle >= 22.5 && angle < 67.5) bin = 1;
      else if (angle >= 67.5 && angle < 112.5) bin = 2;
      else if (angle >= 112.5 && angle < 157.5) bin = 3;
      dir[i] = bin;
    }
  }

  // Non-maximum suppression along the gradient direction. The strict test
  // toward +d keeps plateau edges one pixel wide.
  static constexpr int kDx[4] = {1, 1, 0, -1};
  static constexpr int kDy[4] = {0, 1, 1, 1};
  auto mag_at = [&](int x, int y) -> double {
    if (x < 0 || x >= w || y < 0 || y >= h) return 0.0;
    return mag[static_cast<std::size_t>(y) * w + x];
  };
  std::vector<double> nms(n, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const int dx = kDx[dir[i]], dy = kDy[dir[i]];
      const double m = mag[i];
      if (m >= mag_at(x - dx, y - dy) && m > mag_at(x + dx, y + dy)) nms[i] = m;
    }
  }

  // Double threshold + 8-connected hysteresis grown from strong pixels.
  EdgeImage edges;
  edges.width = w;
  edges.height = h;
  edges.threshold_low = low;
  edges.threshold_high = high;
  edges.mask.assign(n, 0);
  std::deque<std::pair<int, int>> frontier;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (nms[i] >= high) {
        edges.mask[i] = 1;
        frontier.emplace_back(x, y);
      }
    }
  }
  while (!frontier.empty()) {
    const auto [x, y] = frontier.front();
    frontier.pop_front();
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
        if (edges.mask[ni] == 0 && nms[ni] >= low) {
          edges.mask[ni] = 1;
          frontier.emplace_back(nx, ny);
        }
      }
    }
  }
  return edges;
}

ConfidenceMap confidence_from_depth(const DepthImage& depth,
                                    const std::vector<float>& incidence,
                                    double max_range) {
  if (incidence.size() != depth.depth.size()) {
    throw_error(ErrorCategory::kDimension, "incidence buffer does not match depth image");
  }
  ConfidenceMap conf;
  conf.width = depth.width;
  conf.height = depth.height;
  conf.confidence.assign(depth.depth.size(), 0.0f);
  for (std::size_t i = 0; i < depth.depth.size(); ++i) {
    const float z = depth.depth[i];
    if (!range_valid(z)) continue;
    const double c = std::cos(static_cast<double>(incidence[i])) * (1.0 - z / max_range);
    conf.confidence[i] = static_cast<float>(std::clamp(c, 0.0, 1.0));
  }
  return conf;
}

GrayImage gray_from_depth(const DepthImage& depth, const DepthCameraSpec& spec) {
  GrayImage g;
  g.width = depth.width;
  g.height = depth.height;
  g.pixels.assign(depth.depth.size(), 0.0f);
  const double inv_near = 1.0 / spec.min_range;
  const double inv_far = 1.0 / spec.max_range;
  for (std::size_t i = 0; i < depth.depth.size(); ++i) {
    const float z = depth.depth[i];
    if (!range_valid(z)) continue;
    const double t = (1.0 / z - inv_far) / (inv_near - inv_far);
    g.pixels[i] = static_cast<float>(255.0 * std::clamp(t, 0.0, 1.0));
  }
  return g;
}

LaserScan scan_from_depth(const DepthImage& depth, const DepthCameraSpec& spec,
                          double stamp, int rows) {
  LaserScan scan;
  scan.stamp = stamp;
  const int beams = depth.width;
  scan.angle_increment = spec.h_fov / beams;
  scan.angle_min = -spec.h_fov / 2.0 + scan.angle_increment / 2.0;
  scan.range_max = spec.max_range;
  scan.ranges.assign(static_cast<std::size_t>(beams), kInvalidRange);

  const double f = spec.focal_px();
  const double cx = depth.width / 2.0;
  const int row0 = std::max(0, depth.height / 2 - rows / 2);
  const int row1 = std::min(depth.height, row0 + rows);

  for (int i = 0; i < beams; ++i) {
    const double a = scan.angle(static_cast<std::size_t>(i));
    const int px = clamp_coord(static_cast<int>(std::lround(cx + f * std::tan(a) - 0.5)),
                               depth.width);
    float zmin = kInvalidRange;
    for (int py = row0; py < row1; ++py) {
      const float z = depth.at(px, py);
      if (!range_valid(z)) continue;
      if (!range_valid(zmin) || z < zmin) zmin = z;
    }
    if (!range_valid(zmin)) continue;
    const double u = (px + 0.5 - cx) / f;
    scan.ranges[static_cast<std::size_t>(i)] = zmin * std::sqrt(1.0 + u * u);
  }
  return scan;
}

}  // namespace uavsim
