#pragma once

#include <vector>

#include "uavsim/ekf.hpp"
#include "uavsim/frames.hpp"
#include "uavsim/world.hpp"

namespace uavsim {

enum class GuidanceMode { kStabilize, kGuidedNoGps };

const char* to_string(GuidanceMode mode);

struct GuidanceParams {
  double v_max = 1.0;                           // m/s
  double yaw_rate_max = 1.0;                    // rad/s
  double proximity_distance = 0.8;              // m, close-proximity trigger
  double proximity_half_angle = deg_to_rad(45.0);
  int avoidance_sectors = 18;                   // 20 degrees each
  double avoidance_speed = 0.5;                 // m/s while evading
  double kp_position = 0.8;                     // 1/s, waypoint tracking
  double kp_yaw = 1.5;                          // 1/s, heading tracking
  double kp_attitude = 2.0;                     // inner-loop proportional gain
  double kd_attitude = 0.1;                     // inner-loop derivative gain
  PlantParams plant;                            // shared tilt/velocity mapping
};

struct GuidanceState {
  GuidanceMode mode = GuidanceMode::kStabilize;
  Vec3 drone_position = Vec3::Zero();     // current fused estimate
  Vec3 velocity_ned = Vec3::Zero();       // commanded velocity
  double yaw_rate_cmd = 0.0;              // rad/s
  double position_error_tolerance = 0.25; // m
  std::vector<Vec3> waypoints;
  std::size_t active_waypoint = 0;
  double desired_yaw = 0.0;               // integrated from yaw_rate_cmd
  bool avoiding = false;

  bool done() const { return active_waypoint >= waypoints.size(); }
};

// Index of the scan sector with the greatest clearance; ties prefer the
// sector whose center heading is closest to `preferred_heading` (body-
// relative). Invalid beams count as full-range clearance.
int best_clearance_sector(const LaserScan& scan, int sectors, double preferred_heading);

// Minimum valid range within the body-relative sector [lo, hi); invalid
// beams contribute range_max.
double sector_clearance(const LaserScan& scan, double lo, double hi);

// One navigation iteration: close-proximity avoidance when any beam within
// the forward cone is nearer than the proximity threshold, proportional
// waypoint tracking otherwise, mode switch to GuidedNoGps once the position
// error falls inside the tolerance. Returns the updated state and the
// attitude command realizing velocity_ned and yaw_rate_cmd. An exhausted
// waypoint queue yields a hold-position command.
std::pair<GuidanceState, AttitudeCommand> guidance_step(
    const GuidanceState& state, const FusedPose& fused, const LaserScan* latest_scan,
    double dt, const GuidanceParams& params = {});

// Inner-loop PD shaping: actuator-level RPY setpoints from the desired
// command and the measured vehicle state. Output tilt stays within limits.
AttitudeCommand attitude_controller(const AttitudeCommand& desired,
                                    const VehicleState& actual,
                                    const GuidanceParams& params = {});

}  // namespace uavsim
