#include "uavsim/evals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "uavsim/errors.hpp"
#include "uavsim/guidance.hpp"
#include "uavsim/perception.hpp"

namespace uavsim {

namespace {

struct ReferenceRow {
  const char* metric;
  double a, b, c;
};

// Reported values for the three hardware configurations.
constexpr ReferenceRow kReferenceTable[] = {
    {"navigation_accuracy_m", 0.7, 0.5, 0.4},
    {"mapping_rmse_m", 0.22, 0.15, 0.13},
    {"exploration_time_s", 1080.0, 720.0, 780.0},
    {"avg_power_w", 5.0, 7.0, 8.0},
    {"total_energy_j", 900.0, 1260.0, 1440.0},
    {"cost_aud", 800.0, 1300.0, 1500.0},
    {"weight_kg", 1.0, 1.2, 1.5},
};

double reference_value(const ReferenceRow& row, SensorConfiguration c) {
  switch (c) {
    case SensorConfiguration::kA: return row.a;
    case SensorConfiguration::kB: return row.b;
    case SensorConfiguration::kC: return row.c;
  }
  return 0.0;
}

std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

Table1Result eval_table1(const std::vector<SensorConfiguration>& configs,
                         const std::vector<std::uint64_t>& seeds) {
  if (seeds.size() < 5) {
    throw_error(ErrorCategory::kValidation, "eval_table1 requires at least 5 seeds");
  }
  if (configs.empty()) {
    throw_error(ErrorCategory::kValidation, "eval_table1 requires at least one configuration");
  }

  Table1Result result;
  result.configs = configs;
  for (SensorConfiguration c : configs) {
    const char letter = to_string(c)[0];
    for (std::uint64_t seed : seeds) {
      try {
        const RunConfig config = RunConfig::defaults(c, seed);
        result.runs[letter].push_back(run_mission(config).metrics);
      } catch (const Error& e) {
        throw_error(e.category(), std::string("config ") + letter + ", seed " +
                                      std::to_string(seed) + ": " + e.what());
      }
    }

    MetricsReport mean;
    const auto& runs = result.runs[letter];
    for (const MetricsReport& r : runs) {
      mean.navigation_accuracy_m += r.navigation_accuracy_m;
      mean.mapping_rmse_m += r.mapping_rmse_m;
      mean.exploration_time_s += r.exploration_time_s;
      mean.loop_closures += r.loop_closures;
    }
    const double n = static_cast<double>(runs.size());
    mean.navigation_accuracy_m /= n;
    mean.mapping_rmse_m /= n;
    mean.exploration_time_s /= n;
    mean.avg_power_w = default_metadata(c).power_w;
    mean.total_energy_j = mean.avg_power_w * mean.exploration_time_s;
    result.means[letter] = mean;
  }

  // CSV in the published row order, simulated means beside reference values.
  std::string csv = "metric";
  for (SensorConfiguration c : configs) csv += std::string(",") + to_string(c) + "_sim";
  for (SensorConfiguration c : configs) csv += std::string(",") + to_string(c) + "_ref";
  csv += "\n";
  for (const ReferenceRow& row : kReferenceTable) {
    csv += row.metric;
    const std::string metric = row.metric;
    for (SensorConfiguration c : configs) {
      const char letter = to_string(c)[0];
      const MetricsReport& m = result.means[letter];
      double v = 0.0;
      if (metric == "navigation_accuracy_m") v = m.navigation_accuracy_m;
      else if (metric == "mapping_rmse_m") v = m.mapping_rmse_m;
      else if (metric == "exploration_time_s") v = m.exploration_time_s;
      else if (metric == "avg_power_w") v = m.avg_power_w;
      else if (metric == "total_energy_j") v = m.total_energy_j;
      else if (metric == "cost_aud") v = default_metadata(c).cost_aud;
      else v = default_metadata(c).mass_kg;
      csv += "," + format_number(v);
    }
    for (SensorConfiguration c : configs) {
      csv += "," + format_number(reference_value(row, c));
    }
    csv += "\n";
  }
  result.csv = csv;
  return result;
}

std::vector<ReconstructionRow> eval_reconstruction(SensorConfiguration config,
                                                   const std::vector<double>& distances,
                                                   const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) {
    throw_error(ErrorCategory::kValidation, "eval_reconstruction requires at least one seed");
  }
  SensorProfile profile = default_profile(config);
  const DepthCameraSpec& cam = profile.depth;

  std::vector<ReconstructionRow> rows;
  for (double d : distances) {
    if (!(d > 0.0) || d > cam.max_range) {
      throw_error(ErrorCategory::kValidation,
                  "reconstruction distance outside (0, max_range]: " + std::to_string(d));
    }
    ReconstructionRow row;
    row.distance_m = d;
    if (d < cam.min_range) {
      row.applicable = false;  // inside the depth camera dead zone
      rows.push_back(row);
      continue;
    }

    // Room with a full-width wall fronto-parallel to the camera.
    WorldModel world;
    world.cell_size = 0.05;
    const double wall_x = 0.5 + d;
    world.bounds.min = Vec3(0.0, 0.0, -5.0);
    world.bounds.max = Vec3(wall_x + 0.9, 8.0, 0.0);
    world.obstacles = {{{wall_x, 0.0, -5.0}, {wall_x + 0.4, 8.0, 0.0}}};
    validate_world(world);

    VehicleState truth;
    truth.position = Vec3(0.5, 4.0, -1.5);

    double percent_sum = 0.0;
    for (std::uint64_t seed : seeds) {
      Rng rng(Rng::splitmix64(seed * 977 + 13));
      OccupancyGrid map = OccupancyGrid::for_world(world);
      const int frames = static_cast<int>(std::ceil(3.0 * cam.rate));
      for (int f = 0; f < frames; ++f) {
        DepthImage depth = sample_depth(world, truth, cam, rng);
        const LaserScan scan = scan_from_depth(depth, cam, 0.0);
        integrate_scan(map, scan, Pose2{truth.position.x(), truth.position.y(), 0.0});
      }

      // Ground-truth samples on the wall face, inside the horizontal FOV.
      const double half = cam.h_fov / 2.0 - deg_to_rad(2.0);
      const double spacing = world.cell_size / 2.0;
      int total = 0, covered = 0;
      const double y_reach = d * std::tan(half);
      for (double y = std::max(0.0, 4.0 - y_reach); y <= std::min(8.0, 4.0 + y_reach);
           y += spacing) {
        ++total;
        const double dist = map.nearest_occupied_distance({wall_x, y}, 1.5 * world.cell_size);
        if (dist >= 0.0) ++covered;
      }
      percent_sum += total > 0 ? 100.0 * covered / total : 0.0;
    }
    row.percent = percent_sum / static_cast<double>(seeds.size());
    rows.push_back(row);
  }
  return rows;
}

std::string reconstruction_csv(const std::vector<ReconstructionRow>& rows) {
  static const std::map<double, double> kReference = {
      {0.25, 97.0}, {0.5, 97.0}, {1.0, 94.0}, {3.0, 76.0}, {4.0, 68.0}, {6.0, 40.0}};
  std::string csv = "distance_m,percent_sim,percent_ref\n";
  for (const ReconstructionRow& row : rows) {
    csv += format_number(row.distance_m) + ",";
    csv += row.applicable ? format_number(row.percent) : std::string("na");
    auto it = kReference.find(row.distance_m);
    csv += ",";
    if (it != kReference.end()) csv += format_number(it->second);
    csv += "\n";
  }
  return csv;
}

std::string flight_log_csv(const std::vector<TrajectorySample>& trajectory) {
  std::string out = "t,des_roll,roll,des_pitch,pitch,des_yaw,yaw\n";
  char line[256];
  for (const TrajectorySample& s : trajectory) {
    std::snprintf(line, sizeof(line), "%.3f,%.9f,%.9f,%.9f,%.9f,%.9f,%.9f\n", s.t,
                  s.desired_rpy.x(), s.rpy.x(), s.desired_rpy.y(), s.rpy.y(),
                  s.desired_rpy.z(), s.rpy.z());
    out += line;
  }
  return out;
}

FlightLogSummary flight_log_summary(const std::vector<TrajectorySample>& trajectory) {
  FlightLogSummary summary;
  summary.ticks = static_cast<int>(trajectory.size());
  if (trajectory.empty()) return summary;

  // A tick is quasi-steady on an axis when the command has moved less than
  // 0.02 rad over the trailing second.
  constexpr double kWindow = 1.0;
  constexpr double kCmdTolerance = 0.02;

  for (int axis = 0; axis < 3; ++axis) {
    double scale = 0.2;  // rad floor so hover logs do not divide by ~0
    for (const TrajectorySample& s : trajectory) {
      scale = std::max(scale, std::abs(s.desired_rpy[axis]));
    }

    double err_sum = 0.0;
    int steady = 0;
    std::size_t window_start = 0;
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
      const double t = trajectory[i].t;
      while (trajectory[window_start].t < t - kWindow) ++window_start;
      double cmd_min = trajectory[i].desired_rpy[axis];
      double cmd_max = cmd_min;
      for (std::size_t k = window_start; k <= i; ++k) {
        cmd_min = std::min(cmd_min, trajectory[k].desired_rpy[axis]);
        cmd_max = std::max(cmd_max, trajectory[k].desired_rpy[axis]);
      }
      if (t < kWindow || cmd_max - cmd_min > kCmdTolerance) continue;
      const double err = (axis == 2)
                             ? std::abs(angular_diff(trajectory[i].desired_rpy[axis],
                                                     trajectory[i].rpy[axis]))
                             : std::abs(trajectory[i].desired_rpy[axis] -
                                        trajectory[i].rpy[axis]);
      err_sum += err;
      ++steady;
    }

    AxisTracking tracking;
    tracking.steady_ticks = steady;
    if (steady > 0) {
      tracking.mean_error_rad = err_sum / steady;
      tracking.error_pct = 100.0 * tracking.mean_error_rad / scale;
    }
    if (axis == 0) summary.roll = tracking;
    else if (axis == 1) summary.pitch = tracking;
    else summary.yaw = tracking;
  }
  return summary;
}

std::vector<TrajectorySample> parse_trajectory_csv(const std::string& text) {
  std::vector<TrajectorySample> out;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw_error(ErrorCategory::kParse, "trajectory csv: empty document");
  }
  if (line.rfind("t,x,y,z", 0) != 0) {
    throw_error(ErrorCategory::kParse, "trajectory csv: unexpected header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    TrajectorySample s;
    char mode[32] = {0};
    const int n = std::sscanf(
        line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%31[^,],%d,%lf,%lf,%lf", &s.t,
        &s.position.x(), &s.position.y(), &s.position.z(), &s.rpy.x(), &s.rpy.y(),
        &s.rpy.z(), mode, &s.waypoint_index, &s.desired_rpy.x(), &s.desired_rpy.y(),
        &s.desired_rpy.z());
    if (n != 12) {
      throw_error(ErrorCategory::kParse, "trajectory csv: malformed row: " + line);
    }
    s.mode = std::string(mode) == "GuidedNoGps" ? GuidanceMode::kGuidedNoGps
                                                : GuidanceMode::kStabilize;
    out.push_back(s);
  }
  return out;
}

StepResponse attitude_step_response(int axis, double magnitude, double duration) {
  if (axis < 0 || axis > 2) {
    throw_error(ErrorCategory::kValidation, "axis must be 0 (roll), 1 (pitch), or 2 (yaw)");
  }
  GuidanceParams params;
  WorldModel world;
  world.bounds.min = Vec3(-500.0, -500.0, -500.0);
  world.bounds.max = Vec3(500.0, 500.0, 0.0);
  PlantParams plant = params.plant;
  plant.collision_enabled = false;

  VehicleState state;
  state.position = Vec3(0.0, 0.0, -100.0);
  const double dt = 0.001;
  const double step_at = 1.0;

  StepResponse resp;
  resp.magnitude = magnitude;

  AttitudeCommand desired;
  double settle_enter = -1.0;
  double max_signed_overshoot = 0.0;
  double prev_abs_err = std::abs(magnitude);
  bool stepped = false;

  const int steps = static_cast<int>(duration / dt);
  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    if (t >= step_at && !stepped) {
      if (axis == 0) desired.roll = magnitude;
      else if (axis == 1) desired.pitch = magnitude;
      else desired.yaw = magnitude;
      stepped = true;
    }
    const AttitudeCommand setpoint = attitude_controller(desired, state, params);
    state = step_dynamics(world, state, setpoint, dt, plant);

    const double actual = (axis == 0)   ? state.attitude.x()
                          : (axis == 1) ? state.attitude.y()
                                        : state.attitude.z();
    const double des = (axis == 0) ? desired.roll : (axis == 1) ? desired.pitch : desired.yaw;
    resp.time.push_back(t);
    resp.desired.push_back(des);
    resp.actual.push_back(actual);

    if (stepped) {
      const double err = (axis == 2) ? angular_diff(des, actual) : des - actual;
      const double abs_err = std::abs(err);
      if (abs_err > prev_abs_err + 1e-9) resp.monotone = false;
      prev_abs_err = abs_err;
      max_signed_overshoot =
          std::max(max_signed_overshoot, (magnitude > 0 ? -err : err));
      if (abs_err <= 0.02 * std::abs(magnitude)) {
        if (settle_enter < 0.0) settle_enter = t;
      } else {
        settle_enter = -1.0;
      }
    }
  }
  resp.overshoot_pct = 100.0 * max_signed_overshoot / std::abs(magnitude);
  resp.settling_time_s = settle_enter >= 0.0 ? settle_enter - step_at : duration;

  // Steady-state error over the final two seconds.
  double err_sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < resp.time.size(); ++i) {
    if (resp.time[i] < duration - 2.0) continue;
    const double err = (axis == 2) ? angular_diff(resp.desired[i], resp.actual[i])
                                   : resp.desired[i] - resp.actual[i];
    err_sum += std::abs(err);
    ++count;
  }
  resp.steady_state_error_pct =
      count > 0 ? 100.0 * (err_sum / count) / std::abs(magnitude) : 100.0;
  return resp;
}

}  // namespace uavsim
