#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Core>

#include "motionforge/error.hpp"
#include "motionforge/polynomial.hpp"
#include "motionforge/quaternion.hpp"
#include "motionforge/tolerance.hpp"

namespace motionforge {

using Vec3 = Eigen::Vector3d;

inline Quat to_quat(const Vec3& v) { return Quat::imaginary(v.x(), v.y(), v.z()); }
inline Vec3 to_vec3(const Quat& q) { return {q.x, q.y, q.z}; }

// p⁻¹ = p*/(p p*)
inline Quat inverse(const Quat& p) {
  const double n = p.norm();
  if (!(n > tol::singular)) {
    throw Error(ErrorCode::SingularQuaternion, "quaternion is not invertible (norm " + std::to_string(n) + ")");
  }
  return p.conjugate() / n;
}

// (p + εq)⁻¹ = p⁻¹ − ε p⁻¹ q p⁻¹, defined whenever p is invertible.
inline DualQuat inverse(const DualQuat& c) {
  const Quat pi = inverse(c.primal);
  return {pi, -(pi * c.dual * pi)};
}

// 2(p₀q₀ + p₁q₁ + p₂q₂ + p₃q₃); zero exactly on the Study quadric.
inline double study_value(const DualQuat& c) {
  const Quat& p = c.primal;
  const Quat& q = c.dual;
  return 2.0 * (p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z);
}

// Polar form of study_value: B(c, c) = study_value(c).
inline double study_bilinear(const DualQuat& a, const DualQuat& b) {
  const Quat& ap = a.primal;
  const Quat& aq = a.dual;
  const Quat& bp = b.primal;
  const Quat& bq = b.dual;
  // Paired term by term so that the result is exactly symmetric.
  return (ap.w * bq.w + bp.w * aq.w) + (ap.x * bq.x + bp.x * aq.x) + (ap.y * bq.y + bp.y * aq.y) +
         (ap.z * bq.z + bp.z * aq.z);
}

// True when c is a proper displacement: invertible primal and Study value
// zero relative to the squared coordinate scale.
inline bool on_study_quadric(const DualQuat& c, double rel = tol::algebraic) {
  const double s = max_abs(c);
  if (!(c.primal.norm() > tol::singular * s * s) || s == 0.0) return false;
  return std::fabs(study_value(c)) <= rel * s * s;
}

// Image of the point x under c: p x p⁻¹ + q p⁻¹. The vector part is returned;
// off the quadric q p⁻¹ has a scalar residue which is ignored here.
inline Vec3 act_on_point(const DualQuat& c, const Vec3& x) {
  const Quat pi = inverse(c.primal);
  const Quat image = c.primal * to_quat(x) * pi + c.dual * pi;
  return to_vec3(image);
}

// Origin of the displaced frame, π(p + εq) = q p⁻¹.
inline Vec3 project_origin(const DualQuat& c) {
  const Quat t = c.dual * inverse(c.primal);
  const double scale = std::max(1.0, std::sqrt(t.x * t.x + t.y * t.y + t.z * t.z));
  if (std::fabs(t.w) > tol::algebraic * scale) {
    throw Error(ErrorCode::NotOnStudyQuadric,
                "dual quaternion is off the Study quadric (scalar residue " + std::to_string(t.w) + ")");
  }
  return act_on_point(c, Vec3::Zero());
}

// Pure translation 1 + ε t and pure rotation p + ε 0.
inline DualQuat translation(const Vec3& t) { return {Quat::identity(), to_quat(t)}; }
inline DualQuat rotation(const Quat& p) { return DualQuat(p); }

// C C* for a dual-quaternion polynomial. For a motion polynomial the result
// is real: primal vector parts and the whole dual part vanish.
inline MotionPolynomial norm_polynomial(const MotionPolynomial& c) { return c * c.conjugate(); }

// Largest non-real coefficient of C C*, relative to its largest real
// coefficient. Infinite when the real part vanishes.
inline double study_residue(const MotionPolynomial& c) {
  const MotionPolynomial n = norm_polynomial(c);
  double real = 0.0;
  double other = 0.0;
  for (const auto& x : n.coeffs()) {
    real = std::max(real, std::fabs(x.primal.w));
    other = std::max({other, max_abs(x.primal.vector_part()), max_abs(x.dual)});
  }
  if (real == 0.0) return std::numeric_limits<double>::infinity();
  return other / real;
}

inline bool is_motion_polynomial(const MotionPolynomial& c, double rel = tol::algebraic) {
  return study_residue(c) <= rel;
}

// Scalar parts of C C*, i.e. the real norm polynomial.
inline RealPolynomial real_norm(const MotionPolynomial& c) {
  return norm_polynomial(c).map([](const DualQuat& x) { return x.primal.w; });
}

// Study form of the curve, M(t) = study_value(C(t)), as a real polynomial.
inline RealPolynomial study_polynomial(const MotionPolynomial& c) {
  return norm_polynomial(c).map([](const DualQuat& x) { return x.dual.w; });
}

// Projective representative: coordinates divided by the largest magnitude.
inline DualQuat projective_normalized(const DualQuat& c) {
  const double s = max_abs(c);
  return s > 0.0 ? c / s : c;
}

// Max-coordinate distance between the projective classes of a and b, taking
// the better of the two signs.
inline double projective_distance(const DualQuat& a, const DualQuat& b) {
  const DualQuat na = projective_normalized(a);
  const DualQuat nb = projective_normalized(b);
  return std::min(max_abs(na - nb), max_abs(na + nb));
}

// Dual-part convention for file exchange. Plain: a translation by t is
// 1 + ε t. HalfNegative: 1 − ½ ε t. Internally everything is Plain.
enum class DualConvention { Plain, HalfNegative };

inline DualQuat import_dual(const DualQuat& c, DualConvention conv) {
  return conv == DualConvention::Plain ? c : DualQuat{c.primal, c.dual * -2.0};
}

inline DualQuat export_dual(const DualQuat& c, DualConvention conv) {
  return conv == DualConvention::Plain ? c : DualQuat{c.primal, c.dual * -0.5};
}

}  // namespace motionforge
