#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "motionforge/error.hpp"
#include "motionforge/polynomial.hpp"
#include "motionforge/study.hpp"
#include "motionforge/tolerance.hpp"

namespace motionforge {

// Motion through given poses together with the parameter value of each pose
// (infinity allowed).
struct PoseInterpolation {
  MotionPolynomial motion;
  std::vector<double> node_times;
  // poses4: vectorial k of the chosen ruling t − k, in the frame where the
  // first pose (projectively normalized) is the identity.
  std::optional<DualQuat> ruling;
};

enum class RulingBranch { K1, K2 };

struct Poses4Options {
  // Parameter of the second intersection with the chosen ruling. When unset,
  // 2·max|t_i| + 1 is used so it cannot collide with a pose node.
  std::optional<double> lambda;
  RulingBranch branch = RulingBranch::K1;
};

namespace detail {

inline Eigen::Matrix<double, 8, 1> as_vector8(const DualQuat& c) {
  const auto a = c.coeffs();
  return Eigen::Map<const Eigen::Matrix<double, 8, 1>>(a.data());
}

inline DualQuat as_dual_quat(const Eigen::Ref<const Eigen::Matrix<double, 8, 1>>& v) {
  return {{v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}};
}

// Projectively normalized poses, rejected when off the Study quadric.
inline std::vector<DualQuat> checked_poses(std::span<const DualQuat> poses) {
  std::vector<DualQuat> out;
  for (std::size_t i = 0; i < poses.size(); ++i) {
    for (double x : poses[i].coeffs()) {
      if (!std::isfinite(x)) throw Error(ErrorCode::SchemaError, "pose coordinates must be finite");
    }
    const DualQuat c = projective_normalized(poses[i]);
    if (!on_study_quadric(c, tol::pose_input)) {
      throw Error(ErrorCode::NotOnStudyQuadric, "pose " + std::to_string(i) +
                                                    " is not a proper displacement (Study value " +
                                                    std::to_string(study_value(c)) + ")");
    }
    out.push_back(c);
  }
  return out;
}

inline Eigen::Index span_rank(std::span<const DualQuat> poses, double rel) {
  Eigen::MatrixXd m(8, poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i) m.col(i) = as_vector8(poses[i]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > rel * s[0]) ++r;
  }
  return r;
}

}  // namespace detail

// Conic through three poses: C(t) = α c₀ + (c₁ − α c₀ − β c₂) t + β c₂ t², so
// that C(0) ≍ c₀, C(1) = c₁, C(∞) ≍ c₂. Substituting into the Study form gives
// t(t − 1)G(t); G vanishes identically iff
//   B(c₀, c₁) = β B(c₀, c₂)  and  B(c₂, c₁) = α B(c₂, c₀).
inline PoseInterpolation interpolate_poses3(const DualQuat& c0_in, const DualQuat& c1_in, const DualQuat& c2_in) {
  const std::array<DualQuat, 3> in{c0_in, c1_in, c2_in};
  const auto c = detail::checked_poses(in);
  const Eigen::Index rank = detail::span_rank(c, 1e-9);
  if (rank < 2) throw Error(ErrorCode::DegenerateInput, "poses coincide");
  const double b01 = study_bilinear(c[0], c[1]);
  const double b02 = study_bilinear(c[0], c[2]);
  const double b12 = study_bilinear(c[1], c[2]);
  const double scale = std::max({std::fabs(b01), std::fabs(b02), std::fabs(b12)});
  PoseInterpolation out;
  out.node_times = {0.0, 1.0, std::numeric_limits<double>::infinity()};
  if (!(scale > tol::algebraic)) {
    // The span of the poses lies on the quadric (e.g. three translations), so
    // every conic through them is a motion; take α = β = 1.
    out.motion = MotionPolynomial({c[0], c[1] - c[0] - c[2], c[2]});
    return out;
  }
  if (rank < 3) throw Error(ErrorCode::DegenerateInput, "poses are collinear in the dual quaternion space");
  if (!(std::fabs(b02) > 1e-12 * scale)) {
    throw Error(ErrorCode::NoRealSolution, "B(c0, c2) vanishes while B(c0, c1) or B(c1, c2) does not");
  }
  const double alpha = b12 / b02;
  const double beta = b01 / b02;
  if (!(std::fabs(alpha) > tol::singular) || !(std::fabs(beta) > tol::singular)) {
    throw Error(ErrorCode::NoRealSolution, "conic degenerates (alpha or beta vanishes)");
  }
  out.motion = MotionPolynomial({alpha * c[0], c[1] - alpha * c[0] - beta * c[2], beta * c[2]});
  return out;
}

// Cubic through four poses, reached at t = ∞, t₁, t₂, t₃.
//
// After moving c₀ to 1, the span of the poses meets the Study quadric in a
// ruled quadric. The two rulings through 1 are t − k with k vectorial; the
// cubic meets the chosen ruling at ∞ and at λ. Pose nodes are where the
// rulings of the other family through c_i cross t − k, i.e.
// t_i = B(c_i, k) / B(c_i, 1).
inline PoseInterpolation interpolate_poses4(std::span<const DualQuat> poses, const Poses4Options& opts = {}) {
  if (poses.size() != 4) {
    throw Error(ErrorCode::BadArity, "poses4 needs exactly 4 poses (got " + std::to_string(poses.size()) + ")");
  }
  const auto c = detail::checked_poses(poses);
  const DualQuat c0 = c[0];
  const DualQuat c0_conj = c0.conjugate();

  // (1) left-normalize so that the first pose is the identity
  std::array<DualQuat, 4> n;
  n[0] = DualQuat::identity();
  for (int i = 1; i < 4; ++i) n[i] = projective_normalized(c0_conj * c[i]);
  if (detail::span_rank(n, 1e-9) < 4) {
    throw Error(ErrorCode::DegenerateSpan, "poses do not span a projective 3-space");
  }

  // (2) vectorial elements of the span: zero primal and dual scalar parts
  Eigen::Matrix<double, 2, 4> cons;
  for (int i = 0; i < 4; ++i) {
    cons(0, i) = n[i].primal.w;
    cons(1, i) = n[i].dual.w;
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 2, 4>> csvd(cons, Eigen::ComputeFullV);
  if (!(csvd.singularValues()[1] > 1e-12 * csvd.singularValues()[0])) {
    throw Error(ErrorCode::DegenerateSpan, "span has no two-dimensional space of vectorial dual quaternions");
  }
  auto combine = [&](const Eigen::Vector4d& mu) {
    DualQuat x;
    for (int i = 0; i < 4; ++i) x += n[i] * mu[i];
    return x;
  };
  const DualQuat v1 = projective_normalized(combine(csvd.matrixV().col(2)));
  const DualQuat v2 = projective_normalized(combine(csvd.matrixV().col(3)));

  // (3) Study condition on a v1 + b v2
  const double q11 = study_bilinear(v1, v1);
  const double q12 = study_bilinear(v1, v2);
  const double q22 = study_bilinear(v2, v2);
  const double qscale = std::max({std::fabs(q11), std::fabs(q12), std::fabs(q22)});
  double disc = q12 * q12 - q11 * q22;
  if (disc < -1e-12 * qscale * qscale) {
    throw Error(ErrorCode::NoRulings, "the quadric spanned by the poses carries no real lines through the first pose");
  }
  disc = std::max(disc, 0.0);
  const double root = std::sqrt(disc);
  std::array<DualQuat, 2> rulings;
  if (std::fabs(q11) >= std::fabs(q22)) {
    if (q11 == 0.0) throw Error(ErrorCode::NoRulings, "restricted Study form vanishes identically");
    rulings = {v1 * ((-q12 + root) / q11) + v2, v1 * ((-q12 - root) / q11) + v2};
  } else {
    rulings = {v1 + v2 * ((-q12 + root) / q22), v1 + v2 * ((-q12 - root) / q22)};
  }
  const DualQuat k = projective_normalized(opts.branch == RulingBranch::K1 ? rulings[0] : rulings[1]);

  // (4) pose nodes on the ruling t − k
  const DualQuat one = DualQuat::identity();
  std::array<double, 3> t{};
  for (int i = 1; i < 4; ++i) {
    const double den = study_bilinear(n[i], one);
    if (!(std::fabs(den) > 1e-12)) {
      throw Error(ErrorCode::NoRealSolution, "pose " + std::to_string(i) + " lies on a ruling through the first pose");
    }
    t[i - 1] = study_bilinear(n[i], k) / den;
  }
  const double tscale = std::max({1.0, std::fabs(t[0]), std::fabs(t[1]), std::fabs(t[2])});
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      if (std::fabs(t[a] - t[b]) <= 1e-9 * tscale) {
        throw Error(ErrorCode::DegenerateInput, "two poses share a ruling parameter");
      }
    }
  }
  const double lambda = opts.lambda.value_or(2.0 * std::max({std::fabs(t[0]), std::fabs(t[1]), std::fabs(t[2])}) + 1.0);
  if (!std::isfinite(lambda)) throw Error(ErrorCode::BadLambda, "lambda must be finite");
  for (double ti : t) {
    if (std::fabs(lambda - ti) <= 1e-9 * tscale) {
      throw Error(ErrorCode::BadLambda, "lambda coincides with a pose parameter " + std::to_string(ti));
    }
  }

  // (5) C = λ₀ (t−t₁)(t−t₂)(t−t₃) + Σ λ_i ℓ_i(t) c_i with C(λ) = λ₄ (λ − k)
  const RealPolynomial phi0 = RealPolynomial{-t[0], 1.0} * RealPolynomial{-t[1], 1.0} * RealPolynomial{-t[2], 1.0};
  std::array<RealPolynomial, 3> ell;
  for (int i = 0; i < 3; ++i) {
    RealPolynomial l = RealPolynomial::constant(1.0);
    for (int m = 0; m < 3; ++m) {
      if (m != i) l = l * RealPolynomial{-t[m] / (t[i] - t[m]), 1.0 / (t[i] - t[m])};
    }
    ell[i] = l;
  }
  Eigen::Matrix<double, 8, 5> sys;
  sys.col(0) = detail::as_vector8(one * phi0(lambda));
  for (int i = 0; i < 3; ++i) sys.col(i + 1) = detail::as_vector8(n[i + 1] * ell[i](lambda));
  sys.col(4) = -detail::as_vector8(one * lambda - k);
  Eigen::JacobiSVD<Eigen::Matrix<double, 8, 5>> ssvd(sys, Eigen::ComputeFullV);
  const auto& sv = ssvd.singularValues();
  if (!(sv[3] > 1e-10 * sv[0])) {
    throw Error(ErrorCode::DegenerateSpan, "interpolation conditions do not determine a unique cubic");
  }
  const Eigen::Matrix<double, 5, 1> lam = ssvd.matrixV().col(4);
  const double lam_scale = lam.cwiseAbs().maxCoeff();
  for (int i = 0; i < 4; ++i) {
    if (!(std::fabs(lam[i]) > 1e-10 * lam_scale)) {
      throw Error(ErrorCode::NoRealSolution, "the cubic passes through zero instead of pose " + std::to_string(i));
    }
  }

  MotionPolynomial normalized = lift<DualQuat>(phi0) * (one * lam[0]);
  for (int i = 0; i < 3; ++i) normalized = normalized + lift<DualQuat>(ell[i]) * (n[i + 1] * lam[i + 1]);

  // (6) undo the left normalization
  PoseInterpolation out;
  out.motion = c0 * normalized;
  out.node_times = {std::numeric_limits<double>::infinity(), t[0], t[1], t[2]};
  out.ruling = k;
  return out;
}

}  // namespace motionforge
