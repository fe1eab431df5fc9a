#include "uavsim/slam_system.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "uavsim/errors.hpp"

namespace uavsim {

SlamSystem::SlamSystem(const WorldModel& world, const SlamParams& params)
    : world_(world), params_(params), ekf_(params.ekf),
      map_(OccupancyGrid::for_world(world)) {
  params_.loop.submap_cell_size = world.cell_size;
}

void SlamSystem::initialize(const VehicleState& truth, double stamp) {
  FusedPose start;
  start.stamp = stamp;
  start.position = truth.position;
  start.rpy = truth.attitude;
  start.covariance = Mat6::Identity() * 1e-6;
  ekf_.reset(start);
  correction_ = Pose2{};
  initialized_ = true;
  note_covariance();
}

void SlamSystem::note_covariance() {
  Eigen::SelfAdjointEigenSolver<Mat6> es(ekf_.state().covariance);
  diag_.min_covariance_eigenvalue =
      std::min(diag_.min_covariance_eigenvalue, es.eigenvalues().minCoeff());
}

void SlamSystem::on_imu(const ImuSample& imu, double dt) {
  ekf_.predict(imu, dt);
  note_covariance();
}

void SlamSystem::predict_no_imu(double dt) {
  ekf_.predict_without_imu(dt);
  note_covariance();
}

void SlamSystem::on_odom(const OdomSample& odom) {
  ekf_.update_odom(odom);
  last_odom_cov_ = odom.covariance;
  note_covariance();
}

FusedPose SlamSystem::fused() const {
  FusedPose out = ekf_.state();
  const Pose2 corrected = correction_.compose(out.pose2());
  out.position.x() = corrected.x;
  out.position.y() = corrected.y;
  out.rpy.z() = corrected.theta;
  return out;
}

void SlamSystem::on_scan(const LaserScan& scan) {
  if (!initialized_) return;
  maybe_insert_node(scan);
  integrate_scan(map_, scan, fused().pose2());
}

void SlamSystem::maybe_insert_node(const LaserScan& scan) {
  const Pose2 raw = ekf_.state().pose2();

  if (!graph_.nodes.empty()) {
    const Pose2& last_raw = node_raw_poses_.back();
    const double dist = (raw.translation() - last_raw.translation()).norm();
    const double rot = std::abs(angular_diff(raw.theta, last_raw.theta));
    if (dist < params_.node_translation && rot < params_.node_rotation) return;
  }

  Pose2 node_pose = correction_.compose(raw);

  // Continuous scan-to-map alignment, once the map has enough structure.
  if (params_.scan_to_map_refine && map_.occupied_count() >= params_.refine_min_map_cells) {
    try {
      const ScanMatchResult m = scan_match(scan, map_, node_pose, params_.loop.match);
      if (m.score >= params_.refine_min_score) {
        node_pose = m.pose;
        correction_ = node_pose.compose(raw.inverse());
      }
    } catch (const Error&) {
      // Unusable match; keep the odometry pose.
    }
  }

  const int scan_ref = static_cast<int>(scans_.size());
  scans_.push_back(scan);
  const int id = graph_.add_node(scan.stamp, node_pose, scan_ref);

  if (id > 0) {
    const Pose2 meas = node_raw_poses_.back().between(raw);
    Mat3 delta_cov = last_odom_cov_ - node_odom_cov_;
    Mat3 info = Mat3::Zero();
    info(0, 0) = 1.0 / std::max(delta_cov(0, 0), 1e-6);
    info(1, 1) = 1.0 / std::max(delta_cov(1, 1), 1e-6);
    info(2, 2) = 1.0 / std::max(delta_cov(2, 2), 1e-8);
    graph_.add_odom_edge(id - 1, id, meas, info);
  }
  node_raw_poses_.push_back(raw);
  node_odom_cov_ = last_odom_cov_;

  if (params_.enable_loop_closure && id > 0) {
    std::vector<ProximityEvent> proximity;
    const auto candidates = detect_loop(graph_, scans_, id, params_.loop, &proximity);
    diag_.proximity_events += static_cast<int>(proximity.size());
    if (!candidates.empty()) {
      for (const LoopCandidate& c : candidates) {
        graph_.add_loop_edge(c.match_id, c.query_id, c.relative, params_.loop_information);
      }
      diag_.loop_closures += static_cast<int>(candidates.size());

      const OptimizeResult opt = optimize_graph(graph_, params_.optimize);
      ++diag_.optimizations;
      for (std::size_t k = 0; k < graph_.nodes.size(); ++k) {
        graph_.nodes[k].pose = opt.poses[k];
      }
      correction_ = graph_.nodes.back().pose.compose(raw.inverse());

      // The map is rebuilt from the optimized poses so it stays coherent.
      map_ = OccupancyGrid::for_world(world_);
      for (const GraphNode& n : graph_.nodes) {
        if (n.scan_ref < 0) continue;
        integrate_scan(map_, scans_[static_cast<std::size_t>(n.scan_ref)], n.pose);
      }
    }
  }
}

}  // namespace uavsim
