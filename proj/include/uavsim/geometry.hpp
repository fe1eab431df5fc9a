#pragma once

#include <Eigen/Core>
#include <cmath>

namespace uavsim {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Wraps an angle into [-pi, pi).
inline double wrap_angle(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w - kPi;
}

// Signed angular difference a - b, wrapped into [-pi, pi).
inline double angular_diff(double a, double b) { return wrap_angle(a - b); }

// Planar rigid transform (x, y, theta); the pose-graph parameterization.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vec2 translation() const { return {x, y}; }

  // this ∘ other (apply `other` in this frame).
  Pose2 compose(const Pose2& o) const {
    const double c = std::cos(theta), s = std::sin(theta);
    return {x + c * o.x - s * o.y, y + s * o.x + c * o.y, wrap_angle(theta + o.theta)};
  }

  Pose2 inverse() const {
    const double c = std::cos(theta), s = std::sin(theta);
    return {-(c * x + s * y), -(-s * x + c * y), wrap_angle(-theta)};
  }

  // Relative pose this⁻¹ ∘ other.
  Pose2 between(const Pose2& o) const { return inverse().compose(o); }

  Vec2 transform(const Vec2& p) const {
    const double c = std::cos(theta), s = std::sin(theta);
    return {x + c * p.x() - s * p.y(), y + s * p.x() + c * p.y()};
  }
};

struct Aabb {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  Vec3 extents() const { return max - min; }

  bool has_positive_extent() const {
    return (max.array() > min.array()).all();
  }

  bool contains_point(const Vec3& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }

  bool contains_box(const Aabb& o) const {
    return (o.min.array() >= min.array()).all() && (o.max.array() <= max.array()).all();
  }

  // Euclidean distance from p to the box surface; 0 if p is inside.
  double distance(const Vec3& p) const {
    const Vec3 d = (min - p).cwiseMax(p - max).cwiseMax(0.0);
    return d.norm();
  }
};

// Body-to-world rotation for ZYX (yaw-pitch-roll) Euler angles, NED frame.
inline Mat3 rotation_body_to_world(double roll, double pitch, double yaw) {
  const double cr = std::cos(roll), sr = std::sin(roll);
  const double cp = std::cos(pitch), sp = std::sin(pitch);
  const double cy = std::cos(yaw), sy = std::sin(yaw);
  Mat3 r;
  r << cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr,
       sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr,
       -sp,     cp * sr,               cp * cr;
  return r;
}

// Maps body angular rates to Euler angle rates (roll, pitch, yaw).
inline Mat3 euler_rate_matrix(double roll, double pitch) {
  const double cr = std::cos(roll), sr = std::sin(roll);
  const double cp = std::cos(pitch), tp = std::tan(pitch);
  Mat3 t;
  t << 1.0, sr * tp, cr * tp,
       0.0, cr,      -sr,
       0.0, sr / cp, cr / cp;
  return t;
}

// Maps Euler angle rates to body angular rates (inverse of euler_rate_matrix).
inline Mat3 euler_rate_matrix_inv(double roll, double pitch) {
  const double cr = std::cos(roll), sr = std::sin(roll);
  const double cp = std::cos(pitch), sp = std::sin(pitch);
  Mat3 t;
  t << 1.0, 0.0, -sp,
       0.0, cr,  sr * cp,
       0.0, -sr, cr * cp;
  return t;
}

}  // namespace uavsim
