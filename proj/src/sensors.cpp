#include "uavsim/sensors.hpp"

#include <algorithm>
#include <cmath>

namespace uavsim {

LaserScan sample_lidar(const WorldModel& world, const VehicleState& truth,
                       const LidarSpec& spec, Rng& rng) {
  LaserScan scan;
  scan.angle_min = 0.0;
  scan.angle_increment = 2.0 * kPi / spec.beams;
  scan.range_max = spec.max_range;
  scan.ranges.resize(static_cast<std::size_t>(spec.beams), kInvalidRange);

  const double yaw = truth.attitude.z();
  for (int i = 0; i < spec.beams; ++i) {
    const double a = yaw + scan.angle(static_cast<std::size_t>(i));
    const Vec3 dir(std::cos(a), std::sin(a), 0.0);
    const auto hit = raycast(world, truth.position, dir, spec.max_range);
    if (!hit.has_value()) continue;
    const double noisy = *hit + rng.gauss(0.0, spec.noise_sigma);
    if (noisy < 0.0 || noisy > spec.max_range) continue;
    scan.ranges[static_cast<std::size_t>(i)] = noisy;
  }
  return scan;
}

DepthImage sample_depth(const WorldModel& world, const VehicleState& truth,
                        const DepthCameraSpec& spec, Rng& rng,
                        std::vector<float>* incidence) {
  DepthImage img;
  img.width = spec.width;
  img.height = spec.height;
  img.depth.assign(static_cast<std::size_t>(spec.width) * spec.height, kInvalidRange);
  if (incidence != nullptr) {
    incidence->assign(img.depth.size(), static_cast<float>(kPi / 2.0));
  }

  const Mat3 body_to_world = rotation_body_to_world(
      truth.attitude.x(), truth.attitude.y(), truth.attitude.z());
  const double f = spec.focal_px();
  const double cx = spec.width / 2.0, cy = spec.height / 2.0;

  for (int py = 0; py < spec.height; ++py) {
    for (int px = 0; px < spec.width; ++px) {
      // Camera frame: x forward, y right (image +x), z down (image +y).
      const double u = (px + 0.5 - cx) / f;
      const double v = (py + 0.5 - cy) / f;
      Vec3 dir_body(1.0, u, v);
      const double ray_scale = dir_body.norm();
      dir_body /= ray_scale;
      const Vec3 dir_world = body_to_world * dir_body;

      // Cast far enough that a max_range forward depth is always reachable.
      const auto hit = raycast_hit(world, truth.position, dir_world,
                                   spec.max_range * ray_scale + 1.0);
      if (!hit.has_value()) continue;
      double z = hit->distance / ray_scale;  // depth along the forward axis
      z *= spec.scale_factor;
      if (spec.noise_sigma_per_m > 0.0) {
        z += rng.gauss(0.0, spec.noise_sigma_per_m * z);
      }
      if (z < spec.min_range || z > spec.max_range) continue;
      img.at(px, py) = static_cast<float>(z);
      if (incidence != nullptr) {
        const double c = std::clamp(-dir_world.dot(hit->normal), -1.0, 1.0);
        (*incidence)[static_cast<std::size_t>(py) * spec.width + px] =
            static_cast<float>(std::acos(c));
      }
    }
  }
  return img;
}

Vec3 draw_gyro_bias(const ImuSpec& spec, Rng& rng) {
  return {rng.gauss(0.0, spec.gyro_bias_sigma), rng.gauss(0.0, spec.gyro_bias_sigma),
          rng.gauss(0.0, spec.gyro_bias_sigma)};
}

ImuSample sample_imu(const VehicleState& truth, const Vec3& accel_world,
                     const ImuSpec& spec, const Vec3& gyro_bias, double stamp, Rng& rng) {
  ImuSample s;
  s.stamp = stamp;

  s.angular_velocity = truth.angular_rate + gyro_bias;
  for (int a = 0; a < 3; ++a) {
    s.angular_velocity[a] += rng.gauss(0.0, spec.gyro_noise_sigma);
  }

  const Mat3 world_to_body = rotation_body_to_world(
      truth.attitude.x(), truth.attitude.y(), truth.attitude.z()).transpose();
  const Vec3 gravity(0.0, 0.0, kGravity);  // NED, down positive
  s.linear_acceleration = world_to_body * (accel_world - gravity);
  for (int a = 0; a < 3; ++a) {
    s.linear_acceleration[a] += rng.gauss(0.0, spec.accel_noise_sigma);
  }

  Vec3 rpy = truth.attitude;
  if (spec.orientation_noise_sigma > 0.0) {
    for (int a = 0; a < 3; ++a) rpy[a] += rng.gauss(0.0, spec.orientation_noise_sigma);
  }
  s.orientation = Eigen::AngleAxisd(rpy.z(), Vec3::UnitZ()) *
                  Eigen::AngleAxisd(rpy.y(), Vec3::UnitY()) *
                  Eigen::AngleAxisd(rpy.x(), Vec3::UnitX());
  return s;
}

OdomSample make_initial_odom(const VehicleState& truth, double stamp) {
  OdomSample s;
  s.stamp = stamp;
  s.pose = {truth.position.x(), truth.position.y(), truth.attitude.z()};
  s.z = truth.position.z();
  s.covariance = Mat3::Identity() * 1e-6;
  s.drift.initialized = true;
  s.drift.true_prev = s.pose;
  s.drift.true_z_prev = s.z;
  return s;
}

OdomSample sample_odom(const VehicleState& truth, const OdomSample& prev,
                       const OdomDriftParams& params, double stamp, Rng& rng) {
  const Pose2 true_now{truth.position.x(), truth.position.y(), truth.attitude.z()};

  OdomSample s;
  s.stamp = stamp;
  s.drift = prev.drift;

  if (!prev.drift.initialized) {
    OdomSample init = make_initial_odom(truth, stamp);
    return init;
  }

  const Pose2 delta = prev.drift.true_prev.between(true_now);
  const double dz = truth.position.z() - prev.drift.true_z_prev;
  const double dist = delta.translation().norm();

  double drift_step = params.yaw_rate_per_m * dist;
  if (params.yaw_walk_sigma > 0.0 && dist > 0.0) {
    drift_step += rng.gauss(0.0, params.yaw_walk_sigma * std::sqrt(dist));
  }
  s.drift.drift_yaw = wrap_angle(s.drift.drift_yaw + drift_step);
  s.drift.distance += dist;

  Pose2 corrupted;
  const double c = std::cos(drift_step), sn = std::sin(drift_step);
  double tx = delta.x * params.scale_factor;
  double ty = delta.y * params.scale_factor;
  corrupted.x = c * tx - sn * ty;
  corrupted.y = sn * tx + c * ty;
  corrupted.theta = wrap_angle(delta.theta + drift_step);
  if (params.trans_noise_sigma > 0.0 && dist > 0.0) {
    const double sigma = params.trans_noise_sigma * std::sqrt(dist);
    corrupted.x += rng.gauss(0.0, sigma);
    corrupted.y += rng.gauss(0.0, sigma);
  }

  s.pose = prev.pose.compose(corrupted);
  s.z = prev.z + dz * params.scale_factor;
  s.covariance = prev.covariance;
  s.covariance(0, 0) += params.cov_xy_per_m * dist;
  s.covariance(1, 1) += params.cov_xy_per_m * dist;
  s.covariance(2, 2) += params.cov_yaw_per_m * dist;

  s.drift.true_prev = true_now;
  s.drift.true_z_prev = truth.position.z();
  return s;
}

}  // namespace uavsim
