#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "motionforge/error.hpp"
#include "motionforge/polynomial.hpp"
#include "motionforge/study.hpp"
#include "motionforge/tolerance.hpp"

namespace motionforge {

// Root h of the revolute factor t − h.
struct LinearFactor {
  DualQuat h;

  MotionPolynomial polynomial() const { return MotionPolynomial({-h, DualQuat::identity()}); }
};

struct Factorization {
  // Left to right: C = (t − h₁)(t − h₂)…(t − h_d) · scalar_cofactor.
  std::vector<LinearFactor> factors;
  RealPolynomial scalar_cofactor = RealPolynomial::constant(1.0);
  // Indices into the quadratic factor list of C C*, in the order they were
  // consumed (the first one yields the rightmost linear factor).
  std::vector<std::size_t> ordering;

  MotionPolynomial product() const {
    MotionPolynomial p = lift<DualQuat>(scalar_cofactor);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) p = it->polynomial() * p;
    return p;
  }
};

// Plücker line: unit direction and moment (point × direction).
struct JointAxis {
  Vec3 direction;
  Vec3 moment;

  // Point of the line closest to the origin.
  Vec3 foot() const { return direction.cross(moment); }
};

struct Mechanism {
  std::vector<JointAxis> loop_joints;
  MotionPolynomial driving_parameterization;
};

// Result of monic_normalize: C(t) ≍ motion(s) · tool, where s = t for a plain
// normalization and s = 1/(t − b) when the Möbius shift b was needed.
struct MonicMotion {
  MotionPolynomial motion;
  DualQuat tool = DualQuat::identity();
  std::optional<double> shift;

  double parameter_for(double t) const {
    if (!shift) return t;
    const double d = t - *shift;
    return d == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / d;
  }
};

namespace detail {

inline double relative_gap(const DualQuat& a, const DualQuat& b) {
  return max_abs(a - b) / std::max(1.0, std::max(max_abs(a), max_abs(b)));
}

inline bool is_monic(const MotionPolynomial& c) {
  return !c.is_zero() && max_abs(c.leading() - DualQuat::identity()) <= 1e-12;
}

}  // namespace detail

// Roots of a real polynomial as eigenvalues of its companion matrix, polished
// by two Newton steps.
inline std::vector<std::complex<double>> polynomial_roots(const RealPolynomial& p) {
  const std::size_t d = p.degree();
  if (p.is_zero() || d == 0) return {};
  const double lead = p.leading();
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < d; ++i) companion(i, d - 1) = -p[i] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    std::complex<double> z = es.eigenvalues()[i];
    for (int it = 0; it < 2; ++it) {
      std::complex<double> f = p.leading();
      std::complex<double> df = 0.0;
      for (std::size_t k = d; k-- > 0;) {
        df = df * z + f;
        f = f * z + p[k];
      }
      if (std::abs(df) == 0.0) break;
      const std::complex<double> step = f / df;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      z -= step;
    }
    roots.push_back(z);
  }
  return roots;
}

// Monic real quadratic factors t² − 2 Re(z) t + |z|² of a real polynomial
// without real roots, one per conjugate root pair (repeated pairs repeat),
// sorted by (Re z, Im z).
inline std::vector<RealPolynomial> quadratic_factors(const RealPolynomial& norm) {
  const auto roots = polynomial_roots(norm);
  double scale = 1.0;
  for (const auto& z : roots) scale = std::max(scale, std::abs(z));
  std::vector<std::complex<double>> upper;
  for (const auto& z : roots) {
    if (std::fabs(z.imag()) <= 1e-7 * scale) {
      throw Error(ErrorCode::RealNormRoots,
                  "norm polynomial has a real root near t = " + std::to_string(z.real()) + " (unbounded motion)");
    }
    if (z.imag() > 0.0) upper.push_back(z);
  }
  if (2 * upper.size() != roots.size()) {
    throw Error(ErrorCode::RealNormRoots, "norm polynomial roots do not pair up into conjugates");
  }
  std::sort(upper.begin(), upper.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<RealPolynomial> out;
  for (const auto& z : upper) out.push_back(RealPolynomial{std::norm(z), -2.0 * z.real(), 1.0});
  return out;
}

// Labels equal for quadratic factors that agree within a loose tolerance
// (repeated roots are only resolved to about sqrt(eps)).
inline std::vector<std::size_t> factor_classes(const std::vector<RealPolynomial>& quads) {
  std::vector<std::size_t> cls(quads.size());
  for (std::size_t i = 0; i < quads.size(); ++i) {
    cls[i] = i;
    for (std::size_t j = 0; j < i; ++j) {
      const double s = std::max({1.0, std::fabs(quads[i][0]), std::fabs(quads[i][1])});
      if (std::fabs(quads[i][0] - quads[j][0]) <= 1e-6 * s && std::fabs(quads[i][1] - quads[j][1]) <= 1e-6 * s) {
        cls[i] = cls[j];
        break;
      }
    }
  }
  return cls;
}

// Remainder of C modulo a monic real quadratic m: a polynomial of degree ≤ 1.
inline MotionPolynomial remainder_mod_quadratic(const MotionPolynomial& c, const RealPolynomial& m) {
  std::vector<DualQuat> r = c.coeffs();
  for (std::size_t k = r.size(); k-- > 2;) {
    const DualQuat lead = r[k];
    r[k] = DualQuat{};
    r[k - 1] -= lead * m[1];
    r[k - 2] -= lead * m[0];
  }
  r.resize(std::min<std::size_t>(r.size(), 2));
  return MotionPolynomial(std::move(r));
}

// C = Q (t − h) + R by synthetic right division.
inline std::pair<MotionPolynomial, DualQuat> right_divide_linear(const MotionPolynomial& c, const DualQuat& h) {
  if (c.is_zero()) return {MotionPolynomial{}, DualQuat{}};
  const auto& a = c.coeffs();
  const std::size_t n = a.size() - 1;
  if (n == 0) return {MotionPolynomial{}, a[0]};
  std::vector<DualQuat> q(n);
  q[n - 1] = a[n];
  for (std::size_t k = n - 1; k >= 1; --k) q[k - 1] = a[k] + q[k] * h;
  const DualQuat rem = a[0] + q[0] * h;
  return {MotionPolynomial(std::move(q)), rem};
}

// Rescales C to a monic polynomial. When the leading primal is singular the
// parameter is inverted around b: C~(s) = s^d C(b + 1/s), whose leading
// coefficient is C(b), for the first b in 1..8 that works.
inline MonicMotion monic_normalize(const MotionPolynomial& c) {
  if (c.is_zero()) throw Error(ErrorCode::IrreducibleLeading, "zero polynomial");
  const double scale = max_coeff_abs(c);
  auto invertible = [&](const DualQuat& x) { return x.primal.norm() > tol::singular * scale * scale; };
  MonicMotion out;
  if (invertible(c.leading())) {
    out.tool = c.leading();
    out.motion = c * inverse(c.leading());
  } else {
    const std::size_t d = c.degree();
    for (int b = 1; b <= 8 && !out.shift; ++b) {
      const DualQuat lead = c(static_cast<double>(b));
      if (!invertible(lead)) continue;
      MotionPolynomial sum;
      for (std::size_t k = 0; k <= d; ++k) {
        RealPolynomial term = RealPolynomial::monomial(1.0, d - k);
        for (std::size_t m = 0; m < k; ++m) term = term * RealPolynomial{1.0, static_cast<double>(b)};
        sum = sum + lift<DualQuat>(term) * c[k];
      }
      out.tool = lead;
      out.motion = sum * inverse(lead);
      out.shift = b;
    }
    if (!out.shift) {
      throw Error(ErrorCode::IrreducibleLeading, "no parameter inversion makes the leading coefficient invertible");
    }
  }
  // Clean the leading coefficient to exactly 1.
  std::vector<DualQuat> coeffs = out.motion.coeffs();
  coeffs.back() = DualQuat::identity();
  out.motion = MotionPolynomial(std::move(coeffs));
  return out;
}

// Factorization for one ordering of the quadratic factors of C C*. Each step
// takes the remainder r₁ t + r₀ of C modulo the next quadratic, splits off the
// right factor t − h with h = −r₁⁻¹ r₀, and continues with the quotient.
inline Factorization factorize(const MotionPolynomial& c, const std::vector<std::size_t>& order,
                               const std::vector<RealPolynomial>& quads) {
  if (!detail::is_monic(c)) throw Error(ErrorCode::NonGenericMotion, "factorization needs a monic motion polynomial");
  if (order.size() != c.degree()) {
    throw Error(ErrorCode::BadOption, "ordering must list one quadratic factor per degree");
  }
  Factorization f;
  f.ordering = order;
  MotionPolynomial current = c;
  for (std::size_t idx : order) {
    if (idx >= quads.size()) throw Error(ErrorCode::BadOption, "ordering index out of range");
    const MotionPolynomial r = remainder_mod_quadratic(current, quads[idx]);
    const DualQuat r1 = r[1];
    const DualQuat r0 = r[0];
    const double rs = std::max(max_abs(r1), max_abs(r0));
    if (!(r1.primal.norm() > 1e-14 * rs * rs) || rs == 0.0) {
      throw Error(ErrorCode::NonGenericMotion, "remainder has a non-invertible leading coefficient for this ordering");
    }
    const DualQuat h = -(inverse(r1) * r0);
    auto [quotient, rem] = right_divide_linear(current, h);
    if (max_abs(rem) > tol::factorization * std::max(1.0, max_coeff_abs(current))) {
      throw Error(ErrorCode::NonGenericMotion, "right division left a nonzero remainder");
    }
    f.factors.push_back({h});
    current = quotient;
  }
  std::reverse(f.factors.begin(), f.factors.end());
  return f;
}

inline Factorization factorize(const MotionPolynomial& c, const std::vector<std::size_t>& order) {
  if (!detail::is_monic(c)) throw Error(ErrorCode::NonGenericMotion, "factorization needs a monic motion polynomial");
  if (study_residue(c) > tol::factorization) {
    throw Error(ErrorCode::NonGenericMotion, "input is not a motion polynomial (C C* is not real)");
  }
  return factorize(c, order, quadratic_factors(real_norm(c)));
}

// Every ordering of the distinct quadratic factors of C C* that factorizes,
// in lexicographic order of the ordering. Orderings that only permute equal
// factors are listed once.
inline std::vector<Factorization> enumerate_factorizations(const MotionPolynomial& c) {
  if (!detail::is_monic(c)) throw Error(ErrorCode::NonGenericMotion, "factorization needs a monic motion polynomial");
  if (study_residue(c) > tol::factorization) {
    throw Error(ErrorCode::NonGenericMotion, "input is not a motion polynomial (C C* is not real)");
  }
  const auto quads = quadratic_factors(real_norm(c));
  const auto cls = factor_classes(quads);
  // Permute class labels; map each label sequence back to factor indices.
  std::vector<std::size_t> labels = cls;
  std::sort(labels.begin(), labels.end());
  std::vector<Factorization> out;
  std::optional<Error> last_error;
  do {
    std::vector<std::size_t> order;
    std::vector<bool> used(quads.size(), false);
    for (std::size_t label : labels) {
      for (std::size_t i = 0; i < quads.size(); ++i) {
        if (!used[i] && cls[i] == label) {
          used[i] = true;
          order.push_back(i);
          break;
        }
      }
    }
    try {
      out.push_back(factorize(c, order, quads));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonGenericMotion) throw;
      last_error = e;
    }
  } while (std::next_permutation(labels.begin(), labels.end()));
  if (out.empty() && last_error) throw *last_error;
  return out;
}

inline std::vector<Factorization> all_factorizations(const MotionPolynomial& c) {
  auto out = enumerate_factorizations(c);
  if (out.size() < 2) {
    throw Error(ErrorCode::InsufficientFactorizations,
                "only " + std::to_string(out.size()) + " factorization(s) exist; a closed loop needs two");
  }
  return out;
}

// Revolute axis of t − h for h = (a + v) + ε(b + w): direction v/|v| and
// moment w/(2|v|) with any component along the direction removed.
inline JointAxis axis_of(const LinearFactor& f) {
  const Vec3 v = to_vec3(f.h.primal);
  const double len = v.norm();
  if (!(len > 1e-9 * std::max(1.0, max_abs(f.h)))) {
    throw Error(ErrorCode::NoAxis, "factor has no rotational part");
  }
  JointAxis axis;
  axis.direction = v / len;
  Vec3 m = to_vec3(f.h.dual) / (2.0 * len);
  m -= axis.direction * axis.direction.dot(m);
  axis.moment = m;
  return axis;
}

inline bool same_factorization(const Factorization& a, const Factorization& b) {
  if (a.factors.size() != b.factors.size()) return false;
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    if (detail::relative_gap(a.factors[i].h, b.factors[i].h) > tol::factorization) return false;
  }
  return true;
}

// Closed loop: axes of f1 in order, then the axes of f2 in reverse.
inline Mechanism build_mechanism(const Factorization& f1, const Factorization& f2) {
  if (same_factorization(f1, f2)) {
    throw Error(ErrorCode::IdenticalFactorizations, "a closed loop needs two different factorizations");
  }
  const MotionPolynomial p1 = f1.product();
  const MotionPolynomial p2 = f2.product();
  if (p1.degree() != p2.degree()) throw Error(ErrorCode::NonGenericMotion, "factorizations have different degrees");
  for (std::size_t k = 0; k <= p1.degree(); ++k) {
    if (detail::relative_gap(p1[k], p2[k]) > tol::factorization * std::max(1.0, max_coeff_abs(p1))) {
      throw Error(ErrorCode::NonGenericMotion, "factorizations do not describe the same motion");
    }
  }
  Mechanism m;
  m.driving_parameterization = p1;
  for (const auto& f : f1.factors) m.loop_joints.push_back(axis_of(f));
  for (auto it = f2.factors.rbegin(); it != f2.factors.rend(); ++it) m.loop_joints.push_back(axis_of(*it));
  return m;
}

// One mechanism per unordered pair of factorizations.
inline std::vector<Mechanism> build_mechanisms(const std::vector<Factorization>& fs) {
  std::vector<Mechanism> out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = i + 1; j < fs.size(); ++j) out.push_back(build_mechanism(fs[i], fs[j]));
  }
  return out;
}

}  // namespace motionforge
