#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uavsim/geometry.hpp"

namespace uavsim {

// Static indoor environment. NED axes: x north, y east, z down. The room
// floor is at z = 0 and the ceiling at z = -extent_z, so flight altitudes
// are negative z.
struct WorldModel {
  Aabb bounds;
  std::vector<Aabb> obstacles;
  double cell_size = 0.05;  // occupancy discretization, meters
};

struct VehicleState {
  Vec3 position = Vec3::Zero();      // meters, NED
  Vec3 velocity = Vec3::Zero();      // m/s, NED
  Vec3 attitude = Vec3::Zero();      // roll, pitch, yaw (rad)
  Vec3 angular_rate = Vec3::Zero();  // body rates (rad/s)
  double mass = 1.5;                 // kg
  bool in_contact = false;
};

// Simulated time. `now` only ever advances in whole ticks.
struct VirtualClock {
  double tick = 0.001;           // seconds
  double mission_limit = 480.0;  // seconds (flight-time budget)
  std::int64_t ticks = 0;

  double now() const { return static_cast<double>(ticks) * tick; }
  void advance() { ++ticks; }
  bool expired() const { return now() >= mission_limit; }
};

// Desired attitude plus climb rate; the plant input.
struct AttitudeCommand {
  double roll = 0.0;        // rad
  double pitch = 0.0;       // rad
  double yaw = 0.0;         // rad
  double climb_rate = 0.0;  // m/s, positive up
};

struct PlantParams {
  double tau_attitude = 0.15;              // s, first-order attitude lag
  double tau_velocity = 0.4;               // s, first-order velocity lag
  double tilt_limit = deg_to_rad(30.0);    // rad
  double velocity_at_full_tilt = 1.5;      // m/s commanded at tilt_limit
  bool collision_enabled = true;
};

// Parses and validates a world-description document (JSON, schema 1).
WorldModel load_world(const std::string& document);

// Validates an already constructed model (same checks as load_world).
void validate_world(const WorldModel& world);

// The shipped 7 x 7 x 5 confined test space: one corridor wall plus four
// pillars, all full height.
WorldModel default_world();

std::string world_to_json(const WorldModel& world);

// Horizontal velocity commanded by a tilt command, in NED, using the
// vehicle's current yaw. Shared between the plant and guidance so the two
// sides invert each other exactly.
Vec3 commanded_velocity_ned(const AttitudeCommand& cmd, double yaw, const PlantParams& params);

// Advances the kinematic plant by one step: first-order attitude response,
// first-order velocity response toward the tilt-commanded velocity, position
// integration, and collision freeze against obstacles and the room boundary.
VehicleState step_dynamics(const WorldModel& world, const VehicleState& state,
                           const AttitudeCommand& cmd, double dt,
                           const PlantParams& params = {});

struct RayHit {
  double distance = 0.0;
  Vec3 normal = Vec3::Zero();  // outward surface normal at the hit
};

// Distance to the nearest obstacle or room-boundary surface along the ray,
// or nullopt if the first surface lies beyond max_range.
std::optional<double> raycast(const WorldModel& world, const Vec3& origin,
                              const Vec3& direction, double max_range);

// Raycast variant that also reports the hit surface normal.
std::optional<RayHit> raycast_hit(const WorldModel& world, const Vec3& origin,
                                  const Vec3& direction, double max_range);

// Minimum ground-truth distance from p to any obstacle surface (ignores the
// room boundary); used for clearance accounting.
double obstacle_clearance(const WorldModel& world, const Vec3& p);

}  // namespace uavsim
