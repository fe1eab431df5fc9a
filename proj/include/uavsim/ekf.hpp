#pragma once

#include "uavsim/frames.hpp"
#include "uavsim/geometry.hpp"

namespace uavsim {

struct FusedPose {
  double stamp = 0.0;
  Vec3 position = Vec3::Zero();  // x, y, z (NED)
  Vec3 rpy = Vec3::Zero();       // roll, pitch, yaw
  Mat6 covariance = Mat6::Identity() * 1e-4;  // over (x, y, z, roll, pitch, yaw)

  Pose2 pose2() const { return {position.x(), position.y(), rpy.z()}; }
};

struct EkfParams {
  // Process noise density, per second, on (x, y, z, roll, pitch, yaw).
  Mat6 process_noise = (Mat6() << 0.02, 0, 0, 0, 0, 0,
                                  0, 0.02, 0, 0, 0, 0,
                                  0, 0, 0.02, 0, 0, 0,
                                  0, 0, 0, 0.001, 0, 0,
                                  0, 0, 0, 0, 0.001, 0,
                                  0, 0, 0, 0, 0, 0.002).finished();
  double odom_z_variance = 1e-4;  // variance applied to the odometry z reading
};

// Propagates orientation by gyro integration and position by the supplied
// velocity estimate; covariance grows by Q * dt.
FusedPose ekf_predict(const FusedPose& state, const Vec3& velocity_estimate,
                      const ImuSample& imu, double dt, const EkfParams& params = {});

// Measurement update on (x, y, z, yaw) from an odometry sample. Rows with a
// non-finite variance are dropped (a useless measurement leaves the state
// unchanged). Throws on a numerically singular innovation covariance.
FusedPose ekf_update_odom(const FusedPose& state, const OdomSample& odom,
                          const EkfParams& params = {});

// Convenience wrapper holding the velocity estimate refreshed from
// consecutive odometry fixes.
class Ekf {
 public:
  explicit Ekf(const EkfParams& params = {}) : params_(params) {}

  void reset(const FusedPose& state) {
    state_ = state;
    velocity_ = Vec3::Zero();
    has_last_odom_ = false;
  }

  void predict(const ImuSample& imu, double dt) {
    state_ = ekf_predict(state_, velocity_, imu, dt, params_);
  }

  // Covariance-only propagation for configurations without a gyro.
  void predict_without_imu(double stamp_dt);

  void update_odom(const OdomSample& odom);

  const FusedPose& state() const { return state_; }
  const Vec3& velocity_estimate() const { return velocity_; }

 private:
  EkfParams params_;
  FusedPose state_;
  Vec3 velocity_ = Vec3::Zero();
  OdomSample last_odom_;
  bool has_last_odom_ = false;
};

}  // namespace uavsim
