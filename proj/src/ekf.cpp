#include "uavsim/ekf.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "uavsim/errors.hpp"

namespace uavsim {

FusedPose ekf_predict(const FusedPose& state, const Vec3& velocity_estimate,
                      const ImuSample& imu, double dt, const EkfParams& params) {
  FusedPose next = state;
  next.stamp = state.stamp + dt;
  next.position += velocity_estimate * dt;

  const Vec3 euler_rates =
      euler_rate_matrix(state.rpy.x(), state.rpy.y()) * imu.angular_velocity;
  next.rpy += euler_rates * dt;
  next.rpy.z() = wrap_angle(next.rpy.z());

  next.covariance = state.covariance + params.process_noise * dt;
  next.covariance = 0.5 * (next.covariance + next.covariance.transpose().eval());
  return next;
}

FusedPose ekf_update_odom(const FusedPose& state, const OdomSample& odom,
                          const EkfParams& params) {
  // Measurement rows: x, y, z, yaw mapped onto state indices 0, 1, 2, 5.
  constexpr int kStateIndex[4] = {0, 1, 2, 5};
  const double meas[4] = {odom.pose.x, odom.pose.y, odom.z, odom.pose.theta};
  const double variance[4] = {odom.covariance(0, 0), odom.covariance(1, 1),
                              params.odom_z_variance, odom.covariance(2, 2)};

  std::vector<int> rows;
  for (int r = 0; r < 4; ++r) {
    if (std::isfinite(variance[r])) rows.push_back(r);
  }
  if (rows.empty()) return state;

  const int m = static_cast<int>(rows.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, 6);
  Eigen::VectorXd innovation(m);
  Eigen::MatrixXd r_mat = Eigen::MatrixXd::Zero(m, m);
  const double predicted[4] = {state.position.x(), state.position.y(), state.position.z(),
                               state.rpy.z()};
  for (int k = 0; k < m; ++k) {
    const int r = rows[static_cast<std::size_t>(k)];
    h(k, kStateIndex[r]) = 1.0;
    innovation(k) = (r == 3) ? angular_diff(meas[r], predicted[r]) : meas[r] - predicted[r];
    r_mat(k, k) = variance[r];
  }

  const Eigen::MatrixXd s = h * state.covariance * h.transpose() + r_mat;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(s);
  if (ldlt.info() != Eigen::Success ||
      ldlt.vectorD().minCoeff() < 1e-15 * std::max(1.0, ldlt.vectorD().maxCoeff())) {
    throw_error(ErrorCategory::kSingular, "odometry update: singular innovation covariance");
  }
  const Eigen::MatrixXd gain = state.covariance * h.transpose() * ldlt.solve(
      Eigen::MatrixXd::Identity(m, m));

  const Eigen::Matrix<double, 6, 1> delta = gain * innovation;
  FusedPose next = state;
  next.stamp = std::max(state.stamp, odom.stamp);
  next.position += delta.head<3>();
  next.rpy += delta.tail<3>();
  next.rpy.z() = wrap_angle(next.rpy.z());

  // Joseph form keeps the posterior symmetric PSD.
  const Mat6 ikh = Mat6::Identity() - gain * h;
  next.covariance = ikh * state.covariance * ikh.transpose() +
                    gain * r_mat * gain.transpose();
  next.covariance = 0.5 * (next.covariance + next.covariance.transpose().eval());
  return next;
}

void Ekf::predict_without_imu(double dt) {
  ImuSample still;
  still.angular_velocity = Vec3::Zero();
  state_ = ekf_predict(state_, velocity_, still, dt, params_);
}

void Ekf::update_odom(const OdomSample& odom) {
  if (has_last_odom_) {
    const double dt = odom.stamp - last_odom_.stamp;
    if (dt > 0.0) {
      velocity_ = Vec3((odom.pose.x - last_odom_.pose.x) / dt,
                       (odom.pose.y - last_odom_.pose.y) / dt,
                       (odom.z - last_odom_.z) / dt);
    }
  }
  state_ = ekf_update_odom(state_, odom, params_);
  last_odom_ = odom;
  has_last_odom_ = true;
}

}  // namespace uavsim
