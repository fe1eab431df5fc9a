#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Geometry>

#include "uavsim/geometry.hpp"

namespace uavsim {

inline constexpr float kInvalidRange = std::numeric_limits<float>::quiet_NaN();

inline bool range_valid(double r) { return std::isfinite(r); }

struct LaserScan {
  double stamp = 0.0;
  double angle_min = 0.0;        // body-relative, rad
  double angle_increment = 0.0;  // rad
  double range_max = 0.0;        // meters
  std::vector<double> ranges;    // NaN marks an invalid beam

  double angle(std::size_t i) const { return angle_min + angle_increment * static_cast<double>(i); }
  std::size_t valid_count() const {
    std::size_t n = 0;
    for (double r : ranges) n += range_valid(r) ? 1 : 0;
    return n;
  }
};

// Depth along the camera forward axis per pixel, meters, 32-bit floats.
// NaN marks pixels outside the sensing window.
struct DepthImage {
  int width = 0;
  int height = 0;
  double stamp = 0.0;
  std::vector<float> depth;

  float at(int x, int y) const { return depth[static_cast<std::size_t>(y) * width + x]; }
  float& at(int x, int y) { return depth[static_cast<std::size_t>(y) * width + x]; }
};

struct ImuSample {
  double stamp = 0.0;
  Vec3 angular_velocity = Vec3::Zero();     // body rates, rad/s
  Vec3 linear_acceleration = Vec3::Zero();  // specific force, body frame, m/s^2
  Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
};

// Internal bookkeeping of the visual-odometry drift model, carried along
// with each sample so the sampler stays a pure function of (truth, prev).
struct OdomDriftState {
  bool initialized = false;
  Pose2 true_prev;           // ground-truth pose at the previous sample
  double true_z_prev = 0.0;
  double drift_yaw = 0.0;    // accumulated heading error, rad
  double distance = 0.0;     // total distance travelled, m
};

struct OdomSample {
  double stamp = 0.0;
  Pose2 pose;                // reported (x, y, yaw)
  double z = 0.0;            // reported altitude (NED down)
  Mat3 covariance = Mat3::Zero();  // over (x, y, yaw)
  OdomDriftState drift;
};

struct PointCloud {
  double stamp = 0.0;
  int source_pose_id = -1;
  std::vector<Vec3> points;  // world frame, meters
};

// Per-pixel confidence in [0, 1], 32-bit floats; 0 for invalid depth.
struct ConfidenceMap {
  int width = 0;
  int height = 0;
  std::vector<float> confidence;
};

struct EdgeImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> mask;  // 0 or 1
  double threshold_low = 0.0;
  double threshold_high = 0.0;
};

// Grayscale raster with values in [0, 255]; input to edge detection.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<float> pixels;

  float at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  float& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
};

}  // namespace uavsim
