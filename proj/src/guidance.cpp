#include "uavsim/guidance.hpp"

#include <algorithm>
#include <cmath>

namespace uavsim {

const char* to_string(GuidanceMode mode) {
  switch (mode) {
    case GuidanceMode::kStabilize: return "Stabilize";
    case GuidanceMode::kGuidedNoGps: return "GuidedNoGps";
  }
  return "?";
}

double sector_clearance(const LaserScan& scan, double lo, double hi) {
  double clearance = scan.range_max;
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    const double a = wrap_angle(scan.angle(i));
    if (a < lo || a >= hi) continue;
    const double r = scan.ranges[i];
    if (!range_valid(r)) continue;
    clearance = std::min(clearance, r);
  }
  return clearance;
}

int best_clearance_sector(const LaserScan& scan, int sectors, double preferred_heading) {
  const double width = 2.0 * kPi / sectors;
  int best = 0;
  double best_clearance = -1.0;
  double best_heading_gap = 0.0;
  for (int s = 0; s < sectors; ++s) {
    const double lo = -kPi + s * width;
    const double clearance = sector_clearance(scan, lo, lo + width);
    const double center = lo + width / 2.0;
    const double gap = std::abs(angular_diff(center, preferred_heading));
    if (clearance > best_clearance ||
        (clearance == best_clearance && gap < best_heading_gap)) {
      best = s;
      best_clearance = clearance;
      best_heading_gap = gap;
    }
  }
  return best;
}

namespace {

bool obstruction_ahead(const LaserScan& scan, const GuidanceParams& params) {
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    const double r = scan.ranges[i];
    if (!range_valid(r)) continue;
    if (std::abs(wrap_angle(scan.angle(i))) > params.proximity_half_angle) continue;
    if (r < params.proximity_distance) return true;
  }
  return false;
}

AttitudeCommand realize_velocity(const Vec3& velocity_ned, double desired_yaw,
                                 double estimated_yaw, const GuidanceParams& params) {
  const double gain = params.plant.velocity_at_full_tilt / params.plant.tilt_limit;
  const double c = std::cos(estimated_yaw), s = std::sin(estimated_yaw);
  const double vx_body = c * velocity_ned.x() + s * velocity_ned.y();
  const double vy_body = -s * velocity_ned.x() + c * velocity_ned.y();

  AttitudeCommand cmd;
  cmd.pitch = std::clamp(-vx_body / gain, -params.plant.tilt_limit, params.plant.tilt_limit);
  cmd.roll = std::clamp(vy_body / gain, -params.plant.tilt_limit, params.plant.tilt_limit);
  cmd.yaw = desired_yaw;
  cmd.climb_rate = -velocity_ned.z();
  return cmd;
}

}  // namespace

std::pair<GuidanceState, AttitudeCommand> guidance_step(
    const GuidanceState& state, const FusedPose& fused, const LaserScan* latest_scan,
    double dt, const GuidanceParams& params) {
  GuidanceState next = state;
  next.drone_position = fused.position;

  // Advance the queue when inside the tolerance; this is also the mode
  // switch point.
  if (!next.done()) {
    const Vec3 err = next.waypoints[next.active_waypoint] - next.drone_position;
    if (err.norm() < next.position_error_tolerance) {
      next.mode = GuidanceMode::kGuidedNoGps;
      ++next.active_waypoint;
    }
  }

  if (next.done()) {
    next.velocity_ned = Vec3::Zero();
    next.yaw_rate_cmd = 0.0;
    next.avoiding = false;
    return {next, realize_velocity(Vec3::Zero(), next.desired_yaw, fused.rpy.z(), params)};
  }

  const Vec3 target = next.waypoints[next.active_waypoint];
  const Vec3 err = target - next.drone_position;

  const bool blocked = latest_scan != nullptr && obstruction_ahead(*latest_scan, params);
  if (blocked) {
    // Steer toward the clearest sector, yaw toward free space.
    const double preferred =
        angular_diff(std::atan2(err.y(), err.x()), fused.rpy.z());
    const int sector =
        best_clearance_sector(*latest_scan, params.avoidance_sectors, preferred);
    const double width = 2.0 * kPi / params.avoidance_sectors;
    const double heading_body = -kPi + (sector + 0.5) * width;
    const double heading_world = wrap_angle(fused.rpy.z() + heading_body);

    Vec3 v(params.avoidance_speed * std::cos(heading_world),
           params.avoidance_speed * std::sin(heading_world),
           std::clamp(params.kp_position * err.z(), -params.v_max, params.v_max));
    if (v.norm() > params.v_max) v *= params.v_max / v.norm();
    next.velocity_ned = v;
    next.yaw_rate_cmd = std::clamp(params.kp_yaw * heading_body, -params.yaw_rate_max,
                                   params.yaw_rate_max);
    next.avoiding = true;
  } else {
    Vec3 v = params.kp_position * err;
    if (v.norm() > params.v_max) v *= params.v_max / v.norm();
    next.velocity_ned = v;

    const double horiz_speed = std::hypot(v.x(), v.y());
    double heading_error = 0.0;
    if (horiz_speed > 0.05) {
      heading_error = angular_diff(std::atan2(v.y(), v.x()), next.desired_yaw);
    }
    next.yaw_rate_cmd =
        std::clamp(params.kp_yaw * heading_error, -params.yaw_rate_max, params.yaw_rate_max);
    next.avoiding = false;
  }

  next.desired_yaw = wrap_angle(next.desired_yaw + next.yaw_rate_cmd * dt);
  return {next, realize_velocity(next.velocity_ned, next.desired_yaw, fused.rpy.z(), params)};
}

AttitudeCommand attitude_controller(const AttitudeCommand& desired,
                                    const VehicleState& actual,
                                    const GuidanceParams& params) {
  const Vec3 euler_rates =
      euler_rate_matrix(actual.attitude.x(), actual.attitude.y()) * actual.angular_rate;

  AttitudeCommand setpoint;
  const double roll_err = desired.roll - actual.attitude.x();
  const double pitch_err = desired.pitch - actual.attitude.y();
  const double yaw_err = angular_diff(desired.yaw, actual.attitude.z());

  setpoint.roll = std::clamp(
      desired.roll + params.kp_attitude * roll_err - params.kd_attitude * euler_rates.x(),
      -params.plant.tilt_limit, params.plant.tilt_limit);
  setpoint.pitch = std::clamp(
      desired.pitch + params.kp_attitude * pitch_err - params.kd_attitude * euler_rates.y(),
      -params.plant.tilt_limit, params.plant.tilt_limit);
  setpoint.yaw = wrap_angle(
      desired.yaw + params.kp_attitude * yaw_err - params.kd_attitude * euler_rates.z());
  setpoint.climb_rate = desired.climb_rate;
  return setpoint;
}

}  // namespace uavsim
