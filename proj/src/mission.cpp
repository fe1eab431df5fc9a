#include "uavsim/mission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "uavsim/errors.hpp"
#include "uavsim/io.hpp"
#include "uavsim/perception.hpp"
#include "uavsim/pose_graph.hpp"

namespace uavsim {

const char* to_string(SensorConfiguration c) {
  switch (c) {
    case SensorConfiguration::kA: return "A";
    case SensorConfiguration::kB: return "B";
    case SensorConfiguration::kC: return "C";
  }
  return "?";
}

SensorConfiguration configuration_from_string(const std::string& s) {
  if (s == "A" || s == "a") return SensorConfiguration::kA;
  if (s == "B" || s == "b") return SensorConfiguration::kB;
  if (s == "C" || s == "c") return SensorConfiguration::kC;
  throw_error(ErrorCategory::kParse, "unknown sensor configuration: " + s);
}

ConfigMetadata default_metadata(SensorConfiguration c) {
  switch (c) {
    case SensorConfiguration::kA: return {5.0, 800.0, 1.0};
    case SensorConfiguration::kB: return {7.0, 1300.0, 1.2};
    case SensorConfiguration::kC: return {8.0, 1500.0, 1.5};
  }
  return {};
}

SensorProfile default_profile(SensorConfiguration c) {
  SensorProfile p;
  p.lidar.noise_sigma = 0.01;
  p.depth.noise_sigma_per_m = 0.012;
  p.imu.gyro_noise_sigma = 0.002;
  p.imu.accel_noise_sigma = 0.02;
  p.imu.gyro_bias_sigma = 0.0005;
  p.odom.trans_noise_sigma = 0.01;
  p.odom.cov_xy_per_m = 1e-4;

  switch (c) {
    case SensorConfiguration::kA:
      // Monocular: scale-ambiguous depth and odometry, no gyro support.
      p.use_imu = false;
      p.use_lidar = false;
      p.scan_to_map_refine = false;
      p.odom.scale_factor = 1.08;
      p.odom.yaw_walk_sigma = 0.030;
      p.depth.scale_factor = 1.08;
      break;
    case SensorConfiguration::kB:
      p.use_lidar = false;
      p.scan_to_map_refine = false;
      p.odom.yaw_walk_sigma = 0.012;
      break;
    case SensorConfiguration::kC:
      p.odom.yaw_walk_sigma = 0.012;
      break;
  }
  p.odom.cov_yaw_per_m = std::max(p.odom.yaw_walk_sigma * p.odom.yaw_walk_sigma, 1e-6);
  return p;
}

std::vector<Vec3> default_mission_waypoints() {
  return {
      {5.9, 1.1, -1.5}, {5.9, 5.9, -1.5}, {3.8, 5.8, -1.5}, {3.8, 1.2, -1.5},
      {1.2, 1.1, -1.5},
  };
}

RunConfig RunConfig::defaults(SensorConfiguration c, std::uint64_t seed) {
  RunConfig config;
  config.world = default_world();
  config.configuration = c;
  config.seed = seed;
  config.waypoints = default_mission_waypoints();
  config.metadata = default_metadata(c);
  return config;
}

SensorProfile RunConfig::resolved_profile() const {
  SensorProfile p = profile_override.value_or(default_profile(configuration));
  if (zero_noise) {
    p.lidar.noise_sigma = 0.0;
    p.depth.noise_sigma_per_m = 0.0;
    p.depth.scale_factor = 1.0;
    p.imu.gyro_noise_sigma = 0.0;
    p.imu.accel_noise_sigma = 0.0;
    p.imu.gyro_bias_sigma = 0.0;
    p.imu.orientation_noise_sigma = 0.0;
    p.odom.yaw_rate_per_m = 0.0;
    p.odom.yaw_walk_sigma = 0.0;
    p.odom.trans_noise_sigma = 0.0;
    p.odom.scale_factor = 1.0;
    p.odom.cov_xy_per_m = 1e-12;
    p.odom.cov_yaw_per_m = 1e-12;
  }
  return p;
}

namespace {

Vec3 json_vec3(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw_error(ErrorCategory::kParse, std::string(what) + " must be [x, y, z]");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

}  // namespace

RunConfig RunConfig::from_json(const std::string& text, const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw_error(ErrorCategory::kParse, std::string("run config: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", 0) != 1) {
    throw_error(ErrorCategory::kParse, "run config requires \"schema\": 1");
  }

  RunConfig config;
  config.configuration = configuration_from_string(j.value("configuration", std::string("C")));
  config.seed = j.value("seed", 0ull);
  config.metadata = default_metadata(config.configuration);

  if (j.contains("world")) {
    const auto& w = j["world"];
    if (w.is_string()) {
      const std::string ref = w.get<std::string>();
      if (ref == "builtin:default") {
        config.world = default_world();
      } else {
        std::filesystem::path p = ref;
        if (p.is_relative()) p = base_dir / p;
        config.world = load_world(read_file(p));
      }
    } else if (w.is_object()) {
      config.world = load_world(w.dump());
    } else {
      throw_error(ErrorCategory::kParse, "world must be a path, builtin:default, or an object");
    }
  } else {
    config.world = default_world();
  }

  if (j.contains("start")) config.start_position = json_vec3(j["start"], "start");
  config.start_yaw = j.value("start_yaw", 0.0);
  if (j.contains("waypoints")) {
    if (!j["waypoints"].is_array()) {
      throw_error(ErrorCategory::kParse, "waypoints must be an array");
    }
    for (const auto& wp : j["waypoints"]) {
      config.waypoints.push_back(json_vec3(wp, "waypoint"));
    }
  } else {
    config.waypoints = default_mission_waypoints();
  }
  config.duration_limit = j.value("duration_limit", 480.0);
  config.position_tolerance = j.value("tolerance", 0.25);
  config.zero_noise = j.value("zero_noise", false);
  config.enable_loop_closure = j.value("enable_loop_closure", true);

  if (j.contains("metadata")) {
    const auto& m = j["metadata"];
    config.metadata.power_w = m.value("power_w", config.metadata.power_w);
    config.metadata.cost_aud = m.value("cost_aud", config.metadata.cost_aud);
    config.metadata.mass_kg = m.value("mass_kg", config.metadata.mass_kg);
  }

  if (j.contains("sensors")) {
    SensorProfile p = default_profile(config.configuration);
    const auto& s = j["sensors"];
    p.lidar.noise_sigma = s.value("lidar_noise_sigma", p.lidar.noise_sigma);
    p.depth.noise_sigma_per_m = s.value("depth_noise_sigma_per_m", p.depth.noise_sigma_per_m);
    p.depth.scale_factor = s.value("depth_scale_factor", p.depth.scale_factor);
    p.imu.gyro_noise_sigma = s.value("gyro_noise_sigma", p.imu.gyro_noise_sigma);
    p.imu.accel_noise_sigma = s.value("accel_noise_sigma", p.imu.accel_noise_sigma);
    p.imu.gyro_bias_sigma = s.value("gyro_bias_sigma", p.imu.gyro_bias_sigma);
    p.odom.yaw_rate_per_m = s.value("odom_yaw_rate_per_m", p.odom.yaw_rate_per_m);
    p.odom.yaw_walk_sigma = s.value("odom_yaw_walk_sigma", p.odom.yaw_walk_sigma);
    p.odom.trans_noise_sigma = s.value("odom_trans_noise_sigma", p.odom.trans_noise_sigma);
    p.odom.scale_factor = s.value("odom_scale_factor", p.odom.scale_factor);
    p.odom.cov_yaw_per_m = std::max(p.odom.yaw_walk_sigma * p.odom.yaw_walk_sigma, 1e-6);
    config.profile_override = p;
  }

  validate_world(config.world);
  return config;
}

std::string MetricsReport::to_json() const {
  nlohmann::ordered_json j;
  j["navigation_accuracy_m"] = navigation_accuracy_m;
  j["mapping_rmse_m"] = mapping_rmse_m;
  j["exploration_time_s"] = exploration_time_s;
  j["avg_power_w"] = avg_power_w;
  j["total_energy_j"] = total_energy_j;
  j["min_clearance_m"] = min_clearance_m;
  j["all_waypoints_reached"] = all_waypoints_reached;
  j["loop_closures"] = loop_closures;
  j["proximity_events"] = proximity_events;
  j["min_covariance_eigenvalue"] = min_covariance_eigenvalue;
  j["max_fused_truth_gap_m"] = max_fused_truth_gap_m;
  return j.dump(2);
}

namespace {

struct TopicNames {
  std::string imu = "zed_node/imu/data";
  std::string odom = "zed_node/odom";
  std::string lidar = "/scan";
  std::string depth = "depth/depth_registered";
  std::string synth_scan = "depth/synthetic_scan";
  std::string cloud = "point_cloud/cloud_reg";
  std::string confidence = "confidence/confidence_map";
  std::string edges = "edge_detection/image";
  std::string attitude = "mavros/attitude_target";
};

}  // namespace

RunArtifacts run_mission(const RunConfig& config) {
  validate_world(config.world);
  if (config.waypoints.empty()) {
    throw_error(ErrorCategory::kValidation, "mission requires at least one waypoint");
  }
  const SensorProfile profile = config.resolved_profile();

  Rng root(Rng::splitmix64(config.seed ^ 0x5eed5eed5eedull));
  Rng lidar_rng = root.fork(1);
  Rng depth_rng = root.fork(2);
  Rng imu_rng = root.fork(3);
  Rng odom_rng = root.fork(4);
  const Vec3 gyro_bias = draw_gyro_bias(profile.imu, imu_rng);

  // Bus wiring mirrors the deployed topic graph.
  const TopicNames topics;
  MessageBus bus;
  const std::string scan_topic = profile.use_lidar ? topics.lidar : topics.synth_scan;

  bus.register_topic({topics.odom, PayloadKind::kOdometry, profile.odom.rate,
                      profile.odom.rate * payload_bytes(PayloadKind::kOdometry)});
  bus.register_publisher("sensors", topics.odom);
  if (profile.use_imu) {
    bus.register_topic({topics.imu, PayloadKind::kImu, profile.imu.rate,
                        profile.imu.rate * payload_bytes(PayloadKind::kImu)});
    bus.register_publisher("sensors", topics.imu);
  }
  if (profile.use_lidar) {
    bus.register_topic({topics.lidar, PayloadKind::kLaserScan, profile.lidar.rate,
                        profile.lidar.rate * payload_bytes(PayloadKind::kLaserScan)});
    bus.register_publisher("sensors", topics.lidar);
  }
  bus.register_topic({topics.depth, PayloadKind::kDepthImage, profile.depth.rate,
                      profile.depth.rate * payload_bytes(PayloadKind::kDepthImage)});
  bus.register_publisher("sensors", topics.depth);
  bus.register_topic({topics.cloud, PayloadKind::kPointCloud, profile.depth.rate,
                      profile.depth.rate * payload_bytes(PayloadKind::kPointCloud)});
  bus.register_topic({topics.confidence, PayloadKind::kConfidenceMap, profile.depth.rate,
                      profile.depth.rate * payload_bytes(PayloadKind::kConfidenceMap)});
  bus.register_topic({topics.edges, PayloadKind::kEdgeImage, profile.depth.rate,
                      profile.depth.rate * payload_bytes(PayloadKind::kEdgeImage)});
  bus.register_publisher("perception", topics.cloud);
  bus.register_publisher("perception", topics.confidence);
  bus.register_publisher("perception", topics.edges);
  if (!profile.use_lidar) {
    bus.register_topic({topics.synth_scan, PayloadKind::kLaserScan, profile.depth.rate,
                        profile.depth.rate * payload_bytes(PayloadKind::kLaserScan)});
    bus.register_publisher("perception", topics.synth_scan);
  }
  bus.register_topic({topics.attitude, PayloadKind::kAttitudeCommand, 50.0,
                      50.0 * payload_bytes(PayloadKind::kAttitudeCommand)});
  bus.register_publisher("guidance", topics.attitude);

  const int sub_depth_perception = bus.subscribe("perception", topics.depth);
  const int sub_odom_fusion = bus.subscribe("fusion_slam", topics.odom);
  const int sub_imu_fusion =
      profile.use_imu ? bus.subscribe("fusion_slam", topics.imu) : -1;
  const int sub_scan_fusion = bus.subscribe("fusion_slam", scan_topic);
  const int sub_scan_guidance = bus.subscribe("guidance", scan_topic);
  const int sub_cmd_plant = bus.subscribe("sim_world", topics.attitude);

  // Simulation state.
  VehicleState truth;
  truth.position = config.start_position;
  truth.attitude = Vec3(0.0, 0.0, config.start_yaw);
  VirtualClock clock;
  clock.mission_limit = config.duration_limit;

  SlamParams slam_params;
  slam_params.enable_loop_closure = config.enable_loop_closure;
  slam_params.scan_to_map_refine = profile.scan_to_map_refine;
  SlamSystem slam(config.world, slam_params);
  slam.initialize(truth, 0.0);

  GuidanceParams gparams;
  GuidanceState gstate;
  gstate.waypoints = config.waypoints;
  gstate.position_error_tolerance = config.position_tolerance;
  gstate.desired_yaw = config.start_yaw;
  gstate.drone_position = truth.position;

  RunArtifacts artifacts;
  artifacts.map = OccupancyGrid::for_world(config.world);

  // Event cadence bookkeeping.
  const double tick = clock.tick;
  double imu_due = 0.0, odom_due = 0.0, lidar_due = 0.0, depth_due = 0.0, control_due = 0.0;
  double predict_due = 0.0;  // gyro-less covariance propagation (config A)
  const double control_period = 0.02;  // 50 Hz

  OdomSample last_odom = make_initial_odom(truth, 0.0);
  bool have_odom = false;
  Vec3 imu_prev_attitude = truth.attitude;
  Vec3 imu_prev_velocity = truth.velocity;
  double imu_prev_stamp = 0.0;
  double fusion_imu_prev_stamp = 0.0;
  bool fusion_has_imu = false;

  AttitudeCommand desired_cmd;
  desired_cmd.yaw = config.start_yaw;
  LaserScan latest_guidance_scan;
  bool have_guidance_scan = false;

  double done_time = -1.0;
  Vec3 truth_at_done = Vec3::Zero();
  double min_clearance = std::numeric_limits<double>::infinity();
  double max_fused_truth_gap = 0.0;
  std::size_t known_nodes = 0;

  const double eps = 1e-9;
  const double settle_after_done = 2.0;

  while (!clock.expired()) {
    const double t = clock.now();
    if (done_time >= 0.0 && t >= done_time + settle_after_done) break;

    // --- Sensor heads sample ground truth and publish. ---
    if (profile.use_imu && t + eps >= imu_due) {
      const double dt = t - imu_prev_stamp;
      VehicleState sampled = truth;
      Vec3 accel_world = Vec3::Zero();
      if (dt > 0.0) {
        // Average body rates over the IMU interval (delta-angle convention)
        // so that integrating samples reproduces the attitude sequence.
        const Vec3 euler_rates(
            (truth.attitude.x() - imu_prev_attitude.x()) / dt,
            (truth.attitude.y() - imu_prev_attitude.y()) / dt,
            angular_diff(truth.attitude.z(), imu_prev_attitude.z()) / dt);
        sampled.angular_rate =
            euler_rate_matrix_inv(imu_prev_attitude.x(), imu_prev_attitude.y()) * euler_rates;
        accel_world = (truth.velocity - imu_prev_velocity) / dt;
      }
      const ImuSample s = sample_imu(sampled, accel_world, profile.imu, gyro_bias, t, imu_rng);
      bus.publish(topics.imu, t, payload_bytes(PayloadKind::kImu), s);
      imu_prev_attitude = truth.attitude;
      imu_prev_velocity = truth.velocity;
      imu_prev_stamp = t;
      imu_due += 1.0 / profile.imu.rate;
    }
    if (t + eps >= odom_due) {
      last_odom = have_odom ? sample_odom(truth, last_odom, profile.odom, t, odom_rng)
                            : make_initial_odom(truth, t);
      have_odom = true;
      bus.publish(topics.odom, t, payload_bytes(PayloadKind::kOdometry), last_odom);
      odom_due += 1.0 / profile.odom.rate;
    }
    if (profile.use_lidar && t + eps >= lidar_due) {
      LaserScan scan = sample_lidar(config.world, truth, profile.lidar, lidar_rng);
      scan.stamp = t;
      bus.publish(topics.lidar, t, payload_bytes(PayloadKind::kLaserScan), scan);
      lidar_due += 1.0 / profile.lidar.rate;
    }
    if (t + eps >= depth_due) {
      std::vector<float> incidence;
      DepthImage depth = sample_depth(config.world, truth, profile.depth, depth_rng, &incidence);
      depth.stamp = t;
      bus.publish(topics.depth, t, payload_bytes(PayloadKind::kDepthImage), depth);

      // Perception products for this frame.
      PointCloud cloud = depth_to_cloud(depth, truth.position, truth.attitude, profile.depth);
      bus.publish(topics.cloud, t, payload_bytes(PayloadKind::kPointCloud), std::move(cloud));
      ConfidenceMap conf = confidence_from_depth(depth, incidence, profile.depth.max_range);
      bus.publish(topics.confidence, t, payload_bytes(PayloadKind::kConfidenceMap),
                  std::move(conf));
      EdgeImage edges = canny_edges(gray_from_depth(depth, profile.depth), 40.0, 80.0);
      bus.publish(topics.edges, t, payload_bytes(PayloadKind::kEdgeImage), std::move(edges));
      if (!profile.use_lidar) {
        LaserScan synth = scan_from_depth(depth, profile.depth, t);
        bus.publish(topics.synth_scan, t, payload_bytes(PayloadKind::kLaserScan),
                    std::move(synth));
      }
      depth_due += 1.0 / profile.depth.rate;
    }

    // --- Fusion consumes its queues (imu, then odom, then scans). ---
    if (!profile.use_imu && t + eps >= predict_due) {
      slam.predict_no_imu(control_period);
      predict_due += control_period;
    }
    if (sub_imu_fusion >= 0) {
      auto& q = bus.queue(sub_imu_fusion);
      while (!q.empty()) {
        const auto& env = q.front();
        const ImuSample& s = std::get<ImuSample>(env.payload);
        if (fusion_has_imu) {
          slam.on_imu(s, s.stamp - fusion_imu_prev_stamp);
        }
        fusion_imu_prev_stamp = s.stamp;
        fusion_has_imu = true;
        q.pop_front();
      }
    }
    {
      auto& q = bus.queue(sub_odom_fusion);
      while (!q.empty()) {
        const OdomSample& s = std::get<OdomSample>(q.front().payload);
        slam.on_odom(s);
        const FusedPose fused = slam.fused();
        const double gap = (fused.position - truth.position).norm();
        max_fused_truth_gap = std::max(max_fused_truth_gap, gap);
        q.pop_front();
      }
    }
    {
      auto& q = bus.queue(sub_scan_fusion);
      while (!q.empty()) {
        const LaserScan& s = std::get<LaserScan>(q.front().payload);
        slam.on_scan(s);
        q.pop_front();
      }
      // Track graph growth for per-node truth records.
      while (known_nodes < slam.graph().nodes.size()) {
        const GraphNode& n = slam.graph().nodes[known_nodes];
        NodeRecord rec;
        rec.stamp = n.stamp;
        rec.dead_reckoned = last_odom.pose;
        rec.truth = Pose2{truth.position.x(), truth.position.y(), truth.attitude.z()};
        artifacts.node_records.push_back(rec);
        ++known_nodes;
      }
    }
    {
      auto& q = bus.queue(sub_scan_guidance);
      while (!q.empty()) {
        latest_guidance_scan = std::get<LaserScan>(q.front().payload);
        have_guidance_scan = true;
        q.pop_front();
      }
    }

    // --- Guidance at 50 Hz. ---
    if (t + eps >= control_due) {
      const FusedPose fused = slam.fused();
      const LaserScan* scan_ptr = have_guidance_scan ? &latest_guidance_scan : nullptr;
      auto [next_state, cmd] = guidance_step(gstate, fused, scan_ptr, control_period, gparams);
      gstate = next_state;
      desired_cmd = cmd;
      bus.publish(topics.attitude, t, payload_bytes(PayloadKind::kAttitudeCommand), cmd);
      bus.queue(sub_cmd_plant).clear();  // the plant consumes the latest command

      TrajectorySample sample;
      sample.t = t;
      sample.position = fused.position;
      sample.rpy = fused.rpy;
      sample.mode = gstate.mode;
      sample.waypoint_index = static_cast<int>(gstate.active_waypoint);
      sample.desired_rpy = Vec3(cmd.roll, cmd.pitch, cmd.yaw);
      sample.truth_position = truth.position;
      sample.truth_rpy = truth.attitude;
      artifacts.trajectory.push_back(sample);

      if (done_time < 0.0 && gstate.done()) {
        done_time = t;
        truth_at_done = truth.position;
      }
      control_due += control_period;
    }

    // --- Inner attitude loop plus plant step, every tick. ---
    const AttitudeCommand setpoint = attitude_controller(desired_cmd, truth, gparams);
    truth = step_dynamics(config.world, truth, setpoint, tick, gparams.plant);
    min_clearance = std::min(min_clearance, obstacle_clearance(config.world, truth.position));
    clock.advance();
  }

  // --- Metrics. ---
  MetricsReport& m = artifacts.metrics;
  const Vec3 endpoint = (done_time >= 0.0) ? truth_at_done : truth.position;
  m.navigation_accuracy_m = (endpoint - config.waypoints.back()).norm();
  m.exploration_time_s = (done_time >= 0.0) ? done_time : clock.now();
  m.avg_power_w = config.metadata.power_w;
  m.total_energy_j = m.avg_power_w * m.exploration_time_s;
  m.all_waypoints_reached = done_time >= 0.0;
  m.min_clearance_m = std::isfinite(min_clearance) ? min_clearance : 0.0;
  m.loop_closures = slam.diagnostics().loop_closures;
  m.proximity_events = slam.diagnostics().proximity_events;
  m.min_covariance_eigenvalue = slam.diagnostics().min_covariance_eigenvalue;
  m.max_fused_truth_gap_m = max_fused_truth_gap;
  if (slam.map().occupied_count() > 0) {
    m.mapping_rmse_m = map_rmse(slam.map(), config.world);
  } else {
    m.mapping_rmse_m = 0.0;  // degenerate (no data) run
  }

  artifacts.map = slam.map();
  artifacts.graph = slam.graph();
  artifacts.bus_graph_json = bus.graph_export();
  artifacts.bus_stats_csv = bus.stats_csv(std::min(60.0, std::max(clock.now(), 1.0)));
  return artifacts;
}

std::string trajectory_to_csv(const std::vector<TrajectorySample>& trajectory) {
  std::string out = "t,x,y,z,roll,pitch,yaw,mode,waypoint_index,des_roll,des_pitch,des_yaw\n";
  char line[512];
  for (const TrajectorySample& s : trajectory) {
    std::snprintf(line, sizeof(line),
                  "%.3f,%.9f,%.9f,%.9f,%.9f,%.9f,%.9f,%s,%d,%.9f,%.9f,%.9f\n", s.t,
                  s.position.x(), s.position.y(), s.position.z(), s.rpy.x(), s.rpy.y(),
                  s.rpy.z(), to_string(s.mode), s.waypoint_index, s.desired_rpy.x(),
                  s.desired_rpy.y(), s.desired_rpy.z());
    out += line;
  }
  return out;
}

void write_artifacts(const RunArtifacts& artifacts, const RunConfig& config,
                     const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  write_file_atomic(out_dir / "trajectory.csv", trajectory_to_csv(artifacts.trajectory));
  write_file_atomic(out_dir / "map.pgm", occupancy_to_pgm(artifacts.map));
  write_file_atomic(out_dir / "metrics.json", artifacts.metrics.to_json());
  write_file_atomic(out_dir / "graph.g2o", export_graph(artifacts.graph));
  write_file_atomic(out_dir / "bus_graph.json", artifacts.bus_graph_json);
  write_file_atomic(out_dir / "bus_stats.csv", artifacts.bus_stats_csv);

  nlohmann::ordered_json echo;
  echo["schema"] = 1;
  echo["configuration"] = to_string(config.configuration);
  echo["seed"] = config.seed;
  echo["zero_noise"] = config.zero_noise;
  echo["enable_loop_closure"] = config.enable_loop_closure;
  echo["duration_limit"] = config.duration_limit;
  echo["tolerance"] = config.position_tolerance;
  echo["start"] = {config.start_position.x(), config.start_position.y(),
                   config.start_position.z()};
  echo["waypoints"] = nlohmann::ordered_json::array();
  for (const Vec3& w : config.waypoints) {
    echo["waypoints"].push_back({w.x(), w.y(), w.z()});
  }
  echo["metadata"] = {{"power_w", config.metadata.power_w},
                      {"cost_aud", config.metadata.cost_aud},
                      {"mass_kg", config.metadata.mass_kg}};
  write_file_atomic(out_dir / "run_config.json", echo.dump(2));
}

}  // namespace uavsim
