#pragma once

#include <optional>
#include <vector>

#include "uavsim/ekf.hpp"
#include "uavsim/loop_detector.hpp"
#include "uavsim/occupancy_grid.hpp"
#include "uavsim/pose_graph.hpp"
#include "uavsim/scan_matching.hpp"

namespace uavsim {

struct SlamParams {
  double node_translation = 0.3;            // m between graph nodes
  double node_rotation = deg_to_rad(15.0);  // rad between graph nodes
  bool enable_loop_closure = true;
  bool scan_to_map_refine = false;  // continuous scan matching (LiDAR configs)
  double refine_min_score = 0.55;
  std::size_t refine_min_map_cells = 200;
  Mat3 loop_information = (Mat3() << 50.0, 0, 0, 0, 50.0, 0, 0, 0, 200.0).finished();
  EkfParams ekf;
  LoopParams loop;
  OptimizeOptions optimize;
};

struct SlamDiagnostics {
  double min_covariance_eigenvalue = std::numeric_limits<double>::infinity();
  int loop_closures = 0;
  int proximity_events = 0;
  int optimizations = 0;
};

// Estimation frontend: the EKF fuses IMU and odometry into a dead-reckoned
// pose; graph nodes are dropped along the trajectory and corrected by loop
// closures (and optionally continuous scan-to-map matching). Corrections
// never feed back into the filter; a map-frame correction transform is
// composed onto the filter output instead.
class SlamSystem {
 public:
  SlamSystem(const WorldModel& world, const SlamParams& params);

  void initialize(const VehicleState& truth, double stamp);

  void on_imu(const ImuSample& imu, double dt);
  void on_odom(const OdomSample& odom);
  void on_scan(const LaserScan& scan);

  // Covariance/position propagation between fixes when no gyro is fitted.
  void predict_no_imu(double dt);

  // Filter output mapped into the map frame.
  FusedPose fused() const;

  // Raw filter output (odometry frame, no graph corrections).
  const FusedPose& fused_raw() const { return ekf_.state(); }

  const OccupancyGrid& map() const { return map_; }
  const PoseGraph& graph() const { return graph_; }
  const std::vector<LaserScan>& node_scans() const { return scans_; }
  const SlamDiagnostics& diagnostics() const { return diag_; }
  const Vec3& velocity_estimate() const { return ekf_.velocity_estimate(); }

 private:
  void maybe_insert_node(const LaserScan& scan);
  void note_covariance();

  WorldModel world_;  // grid sizing only
  SlamParams params_;
  Ekf ekf_;
  PoseGraph graph_;
  std::vector<LaserScan> scans_;
  std::vector<Pose2> node_raw_poses_;  // filter pose at node creation
  OccupancyGrid map_;
  Pose2 correction_;  // map-frame pose = correction_ ∘ filter pose
  Mat3 last_odom_cov_ = Mat3::Zero();
  Mat3 node_odom_cov_ = Mat3::Zero();  // odometry covariance at the last node
  SlamDiagnostics diag_;
  bool initialized_ = false;
};

}  // namespace uavsim
