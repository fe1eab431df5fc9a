#pragma once

#include <vector>

#include "uavsim/frames.hpp"
#include "uavsim/rng.hpp"
#include "uavsim/world.hpp"

namespace uavsim {

inline constexpr double kGravity = 9.80665;  // m/s^2

struct DepthCameraSpec {
  double min_range = 0.3;             // m
  double max_range = 10.0;            // m
  double h_fov = deg_to_rad(110.0);   // rad
  int width = 64;                     // desk-scale raster
  int height = 36;
  double rate = 6.18;                 // Hz
  double noise_sigma_per_m = 0.0;     // range-proportional depth noise
  double scale_factor = 1.0;          // monocular scale corruption

  double focal_px() const { return (width / 2.0) / std::tan(h_fov / 2.0); }
};

struct LidarSpec {
  double rate = 6.4;          // Hz
  int beams = 360;            // per revolution, uniform over 2*pi
  double max_range = 12.0;    // m
  double noise_sigma = 0.01;  // m
};

struct ImuSpec {
  double rate = 300.31;            // Hz
  double gyro_noise_sigma = 0.0;   // rad/s per sample
  double accel_noise_sigma = 0.0;  // m/s^2 per sample
  double gyro_bias_sigma = 0.0;    // rad/s, constant bias drawn once per run
  double orientation_noise_sigma = 0.0;  // rad, small-angle
};

struct OdomDriftParams {
  double rate = 7.59;                    // Hz
  double yaw_rate_per_m = 0.0;           // deterministic heading drift, rad/m
  double yaw_walk_sigma = 0.0;           // rad per sqrt(m), random walk
  double trans_noise_sigma = 0.0;        // m per sqrt(m)
  double scale_factor = 1.0;             // monocular scale error
  double cov_xy_per_m = 1e-4;            // covariance growth per meter
  double cov_yaw_per_m = 1e-5;
};

// One full revolution sampled through raycast from the vehicle pose. The
// scan plane stays world-horizontal at the vehicle altitude and rotates
// with yaw only, which keeps the 2D occupancy model exact.
LaserScan sample_lidar(const WorldModel& world, const VehicleState& truth,
                       const LidarSpec& spec, Rng& rng);

// Per-pixel pinhole raycast; stores depth along the camera forward axis.
// Values outside [min_range, max_range] are marked invalid. When
// `incidence` is non-null it receives the per-pixel angle between the ray
// and the hit surface normal (radians; invalid pixels get pi/2).
DepthImage sample_depth(const WorldModel& world, const VehicleState& truth,
                        const DepthCameraSpec& spec, Rng& rng,
                        std::vector<float>* incidence = nullptr);

// Body rates plus bias and noise; specific force from the world-frame
// acceleration and gravity; orientation from truth with small-angle noise.
ImuSample sample_imu(const VehicleState& truth, const Vec3& accel_world,
                     const ImuSpec& spec, const Vec3& gyro_bias, double stamp, Rng& rng);

// Draws the constant per-run gyro bias.
Vec3 draw_gyro_bias(const ImuSpec& spec, Rng& rng);

// First odometry sample, anchored at the ground-truth pose.
OdomSample make_initial_odom(const VehicleState& truth, double stamp);

// Visual-odometry proxy: the true incremental motion corrupted by a
// per-meter heading drift (deterministic rate plus random walk) and an
// optional monocular scale factor. Covariance grows with distance.
OdomSample sample_odom(const VehicleState& truth, const OdomSample& prev,
                       const OdomDriftParams& params, double stamp, Rng& rng);

}  // namespace uavsim
