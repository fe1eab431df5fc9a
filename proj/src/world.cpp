#include "uavsim/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "uavsim/errors.hpp"

namespace uavsim {

namespace {

Vec3 parse_vec3(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw_error(ErrorCategory::kParse, std::string(what) + " must be an array of 3 numbers");
  }
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw_error(ErrorCategory::kParse, std::string(what) + " must contain only numbers");
    }
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

}  // namespace

void validate_world(const WorldModel& world) {
  if (!world.bounds.has_positive_extent()) {
    throw_error(ErrorCategory::kValidation, "world bounds must have strictly positive extents");
  }
  if (!(world.cell_size > 0.0)) {
    throw_error(ErrorCategory::kValidation, "cell_size must be positive");
  }
  for (std::size_t i = 0; i < world.obstacles.size(); ++i) {
    const Aabb& box = world.obstacles[i];
    if (!box.has_positive_extent()) {
      throw_error(ErrorCategory::kValidation,
                  "obstacle " + std::to_string(i) + " has a non-positive extent");
    }
    if (!world.bounds.contains_box(box)) {
      throw_error(ErrorCategory::kValidation,
                  "obstacle " + std::to_string(i) + " extends outside the world bounds");
    }
  }
}

WorldModel load_world(const std::string& document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw_error(ErrorCategory::kParse, std::string("world document: ") + e.what());
  }
  if (!j.is_object()) {
    throw_error(ErrorCategory::kParse, "world document must be a JSON object");
  }
  if (!j.contains("schema") || !j["schema"].is_number_integer() || j["schema"].get<int>() != 1) {
    throw_error(ErrorCategory::kParse, "world document requires \"schema\": 1");
  }
  if (!j.contains("bounds")) {
    throw_error(ErrorCategory::kParse, "world document requires \"bounds\"");
  }

  WorldModel world;
  const Vec3 extents = parse_vec3(j["bounds"], "bounds");
  // The room spans [0, x] x [0, y] x [-z, 0] in NED (floor at z = 0).
  world.bounds.min = Vec3(0.0, 0.0, -extents.z());
  world.bounds.max = Vec3(extents.x(), extents.y(), 0.0);
  if ((extents.array() <= 0.0).any()) {
    throw_error(ErrorCategory::kValidation, "world bounds must have strictly positive extents");
  }

  world.cell_size = j.value("cell_size", 0.05);
  if (j.contains("obstacles")) {
    if (!j["obstacles"].is_array()) {
      throw_error(ErrorCategory::kParse, "obstacles must be an array");
    }
    for (const auto& entry : j["obstacles"]) {
      if (!entry.is_object() || !entry.contains("min") || !entry.contains("max")) {
        throw_error(ErrorCategory::kParse, "each obstacle requires min and max corners");
      }
      Aabb box;
      box.min = parse_vec3(entry["min"], "obstacle min");
      box.max = parse_vec3(entry["max"], "obstacle max");
      world.obstacles.push_back(box);
    }
  }

  validate_world(world);
  return world;
}

std::string world_to_json(const WorldModel& world) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  const Vec3 e = world.bounds.extents();
  j["bounds"] = {e.x(), e.y(), e.z()};
  j["cell_size"] = world.cell_size;
  j["obstacles"] = nlohmann::ordered_json::array();
  for (const Aabb& box : world.obstacles) {
    j["obstacles"].push_back({{"min", {box.min.x(), box.min.y(), box.min.z()}},
                              {"max", {box.max.x(), box.max.y(), box.max.z()}}});
  }
  return j.dump(2);
}

WorldModel default_world() {
  WorldModel world;
  world.bounds.min = Vec3(0.0, 0.0, -5.0);
  world.bounds.max = Vec3(7.0, 7.0, 0.0);
  world.cell_size = 0.05;
  // Corridor wall plus four pillars, all reaching from the floor through the
  // flight band. A perimeter ring and a center channel between the pillar
  // pairs stay clear.
  world.obstacles = {
      {{0.0, 3.3, -3.0}, {2.2, 3.6, 0.0}},
      {{2.5, 2.2, -3.0}, {3.1, 2.8, 0.0}},
      {{4.5, 2.2, -3.0}, {5.1, 2.8, 0.0}},
      {{2.5, 4.4, -3.0}, {3.1, 5.0, 0.0}},
      {{4.5, 4.4, -3.0}, {5.1, 5.0, 0.0}},
  };
  validate_world(world);
  return world;
}

Vec3 commanded_velocity_ned(const AttitudeCommand& cmd, double yaw, const PlantParams& params) {
  const double gain = params.velocity_at_full_tilt / params.tilt_limit;
  // Nose-down pitch drives the body forward; right roll drives it to the
  // body-right side.
  const double vx_body = -std::clamp(cmd.pitch, -params.tilt_limit, params.tilt_limit) * gain;
  const double vy_body = std::clamp(cmd.roll, -params.tilt_limit, params.tilt_limit) * gain;
  const double c = std::cos(yaw), s = std::sin(yaw);
  return {c * vx_body - s * vy_body, s * vx_body + c * vy_body, -cmd.climb_rate};
}

VehicleState step_dynamics(const WorldModel& world, const VehicleState& state,
                           const AttitudeCommand& cmd, double dt, const PlantParams& params) {
  VehicleState next = state;
  next.in_contact = false;

  const double att_decay = std::exp(-dt / params.tau_attitude);
  const double roll_cmd = std::clamp(cmd.roll, -params.tilt_limit, params.tilt_limit);
  const double pitch_cmd = std::clamp(cmd.pitch, -params.tilt_limit, params.tilt_limit);
  next.attitude.x() = roll_cmd + (state.attitude.x() - roll_cmd) * att_decay;
  next.attitude.y() = pitch_cmd + (state.attitude.y() - pitch_cmd) * att_decay;
  next.attitude.z() =
      wrap_angle(cmd.yaw + angular_diff(state.attitude.z(), cmd.yaw) * att_decay);

  // Body rates are defined as the rates that realize this step's attitude
  // change, so integrating gyro samples reproduces the trajectory exactly.
  const Vec3 euler_rates(
      (next.attitude.x() - state.attitude.x()) / dt,
      (next.attitude.y() - state.attitude.y()) / dt,
      angular_diff(next.attitude.z(), state.attitude.z()) / dt);
  next.angular_rate =
      euler_rate_matrix_inv(state.attitude.x(), state.attitude.y()) * euler_rates;

  const Vec3 vel_cmd = commanded_velocity_ned(cmd, next.attitude.z(), params);
  const double vel_decay = std::exp(-dt / params.tau_velocity);
  next.velocity = vel_cmd + (state.velocity - vel_cmd) * vel_decay;

  const Vec3 candidate = state.position + next.velocity * dt;
  const Vec3 delta = candidate - state.position;
  const double step_len = delta.norm();
  if (params.collision_enabled && step_len > 0.0) {
    const auto hit = raycast(world, state.position, delta / step_len, step_len);
    if (hit.has_value()) {
      next.position = state.position + (delta / step_len) * *hit;
      next.velocity = Vec3::Zero();
      next.in_contact = true;
      return next;
    }
  }
  next.position = candidate;
  return next;
}

namespace {

struct SlabHit {
  double t = 0.0;
  int axis = 0;
  int side = 0;  // -1 = min face, +1 = max face
};

// Ray/box intersection via the slab method. Returns entry and exit along
// the ray (entry may be negative when the origin is inside the box).
bool slab_intersect(const Aabb& box, const Vec3& origin, const Vec3& dir,
                    SlabHit* entry, SlabHit* exit) {
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  int near_axis = 0, far_axis = 0;
  int near_side = 0, far_side = 0;
  for (int a = 0; a < 3; ++a) {
    if (dir[a] == 0.0) {
      if (origin[a] < box.min[a] || origin[a] > box.max[a]) return false;
      continue;
    }
    double t1 = (box.min[a] - origin[a]) / dir[a];
    double t2 = (box.max[a] - origin[a]) / dir[a];
    int s1 = -1, s2 = +1;
    if (t1 > t2) {
      std::swap(t1, t2);
      std::swap(s1, s2);
    }
    if (t1 > t_near) {
      t_near = t1;
      near_axis = a;
      near_side = s1;
    }
    if (t2 < t_far) {
      t_far = t2;
      far_axis = a;
      far_side = s2;
    }
  }
  if (t_near > t_far || t_far < 0.0) return false;
  *entry = {t_near, near_axis, near_side};
  *exit = {t_far, far_axis, far_side};
  return true;
}

std::optional<RayHit> raycast_impl(const WorldModel& world, const Vec3& origin,
                                   const Vec3& direction, double max_range) {
  double best_t = std::numeric_limits<double>::infinity();
  Vec3 best_normal = Vec3::Zero();

  SlabHit entry, exit;
  // Room boundary: from inside, the visible wall is the face where the ray
  // would leave the bounds box (normals point back into the room). From
  // outside it is the entry face.
  if (slab_intersect(world.bounds, origin, direction, &entry, &exit)) {
    const bool from_outside = entry.t > 0.0;
    const SlabHit wall = from_outside ? entry : exit;
    if (wall.t >= 0.0) {
      best_t = wall.t;
      best_normal = Vec3::Zero();
      best_normal[wall.axis] = from_outside ? static_cast<double>(wall.side)
                                            : -static_cast<double>(wall.side);
    }
  }

  for (const Aabb& box : world.obstacles) {
    if (!slab_intersect(box, origin, direction, &entry, &exit)) continue;
    const double t = std::max(entry.t, 0.0);
    if (t < best_t) {
      best_t = t;
      best_normal = Vec3::Zero();
      best_normal[entry.axis] = static_cast<double>(entry.side);
    }
  }

  if (!std::isfinite(best_t) || best_t > max_range) return std::nullopt;
  return RayHit{best_t, best_normal};
}

}  // namespace

std::optional<double> raycast(const WorldModel& world, const Vec3& origin,
                              const Vec3& direction, double max_range) {
  const auto hit = raycast_impl(world, origin, direction, max_range);
  if (!hit.has_value()) return std::nullopt;
  return hit->distance;
}

std::optional<RayHit> raycast_hit(const WorldModel& world, const Vec3& origin,
                                  const Vec3& direction, double max_range) {
  return raycast_impl(world, origin, direction, max_range);
}

double obstacle_clearance(const WorldModel& world, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Aabb& box : world.obstacles) {
    best = std::min(best, box.distance(p));
  }
  return best;
}

}  // namespace uavsim
