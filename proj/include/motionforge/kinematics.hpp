#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "motionforge/error.hpp"
#include "motionforge/polynomial.hpp"
#include "motionforge/study.hpp"
#include "motionforge/tolerance.hpp"

namespace motionforge {

struct Pose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& x) const { return rotation * x + translation; }
};

// Rotation matrix of the unit quaternion p/|p|.
inline Eigen::Matrix3d rotation_matrix(const Quat& p) {
  const double n = std::sqrt(p.norm());
  const double w = p.w / n, x = p.x / n, y = p.y / n, z = p.z / n;
  Eigen::Matrix3d r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
       2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
       2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

inline Pose to_pose(const DualQuat& c) {
  if (!(c.primal.norm() > tol::singular * std::max(1.0, max_abs(c) * max_abs(c)))) {
    throw Error(ErrorCode::SingularQuaternion, "pose has a singular primal part");
  }
  Pose pose;
  pose.rotation = rotation_matrix(c.primal);
  pose.translation = to_vec3(c.dual * inverse(c.primal));
  return pose;
}

// Pose of C at t (t = ±∞ gives the pose of the leading coefficient).
inline Pose pose_at(const MotionPolynomial& c, double t) {
  const DualQuat v = c(t);
  const double s = max_abs(v);
  if (!(s > 0.0) || !(v.primal.norm() > tol::singular * s * s)) {
    throw Error(ErrorCode::SingularParameter, "motion has a singular primal part at t = " + std::to_string(t));
  }
  return to_pose(v / s);
}

struct TrajectorySample {
  double t = 0.0;
  // Empty when the primal part is singular at t (a gap in the sweep).
  std::optional<Pose> pose;
  Vec3 origin = Vec3::Zero();
  // Image of the probe point passed to sample_trajectory.
  Vec3 point = Vec3::Zero();
};

enum class GapPolicy { Throw, Skip };

// One sample per parameter. With GapPolicy::Throw a singular parameter raises
// SingularParameter naming the offending t; with Skip it is reported as a
// sample without pose.
inline std::vector<TrajectorySample> sample_trajectory(const MotionPolynomial& c, const Vec3& point,
                                                       std::span<const double> ts,
                                                       GapPolicy gaps = GapPolicy::Throw) {
  std::vector<TrajectorySample> out;
  out.reserve(ts.size());
  for (double t : ts) {
    TrajectorySample s;
    s.t = t;
    try {
      s.pose = pose_at(c, t);
      s.origin = s.pose->translation;
      s.point = s.pose->apply(point);
    } catch (const Error& e) {
      if (gaps == GapPolicy::Throw || e.code() != ErrorCode::SingularParameter) throw;
      s.pose.reset();
    }
    out.push_back(s);
  }
  return out;
}

// n ≥ 2 equally spaced parameters over [lo, hi], endpoints included.
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::UsageError, "a sweep needs at least 2 samples");
  std::vector<double> ts(n);
  for (std::size_t i = 0; i < n; ++i) {
    ts[i] = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return ts;
}

}  // namespace motionforge
