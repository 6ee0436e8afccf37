#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <type_traits>
#include <utility>
#include <vector>

#include "motionforge/quaternion.hpp"

namespace motionforge {

// Univariate polynomial with coefficients in a (possibly noncommutative) ring
// C, stored in ascending degree. The indeterminate is real and central, so
// evaluation at a real t is a ring homomorphism and t commutes with every
// coefficient.
//
// Trailing coefficients that compare equal to C{} are trimmed; the zero
// polynomial has no coefficients and degree 0.
template <typename C>
class Polynomial {
 public:
  using coefficient_type = C;

  Polynomial() = default;
  explicit Polynomial(std::vector<C> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<C> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(const C& c) { return Polynomial(std::vector<C>{c}); }
  // The monomial c·t^k.
  static Polynomial monomial(const C& c, std::size_t k) {
    std::vector<C> v(k + 1, C{});
    v[k] = c;
    return Polynomial(std::move(v));
  }

  const std::vector<C>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  std::size_t size() const { return coeffs_.size(); }

  // Coefficient of t^k (zero beyond the degree).
  C operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : C{}; }
  C leading() const { return coeffs_.empty() ? C{} : coeffs_.back(); }

  // Horner evaluation. t = ±infinity returns the leading coefficient, the
  // projective value of the curve at the point at infinity.
  template <typename S>
  C operator()(S t) const {
    if (coeffs_.empty()) return C{};
    if constexpr (std::is_floating_point_v<S>) {
      if (std::isinf(t)) return coeffs_.back();
    }
    C result = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) result = result * t + coeffs_[k];
    return result;
  }

  template <typename F>
  auto map(F&& f) const {
    using R = std::decay_t<decltype(f(std::declval<C>()))>;
    std::vector<R> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return Polynomial<R>(std::move(out));
  }

  Polynomial conjugate() const {
    return map([](const C& c) { return c.conjugate(); });
  }

  Polynomial operator-() const {
    return map([](const C& c) { return -c; });
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<C> out(std::max(a.size(), b.size()), C{});
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = out[k] + a.coeffs_[k];
    for (std::size_t k = 0; k < b.size(); ++k) out[k] = out[k] + b.coeffs_[k];
    return Polynomial(std::move(out));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> out(a.size() + b.size() - 1, C{});
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < b.size(); ++k) out[i + k] = out[i + k] + a.coeffs_[i] * b.coeffs_[k];
    return Polynomial(std::move(out));
  }

  // Left / right multiplication by a constant coefficient.
  friend Polynomial operator*(const C& c, const Polynomial& p) {
    return p.map([&](const C& x) { return c * x; });
  }
  friend Polynomial operator*(const Polynomial& p, const C& c) {
    return p.map([&](const C& x) { return x * c; });
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    os << '[';
    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? ", " : "") << p.coeffs_[k];
    return os << ']';
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == C{}) coeffs_.pop_back();
  }

  std::vector<C> coeffs_;
};

using RealPolynomial = Polynomial<double>;
using QuatPolynomial = Polynomial<Quat>;
// C(t) = p(t) + ε q(t), stored as one polynomial with dual-quaternion
// coefficients. primal_part / dual_part give p and q.
using MotionPolynomial = Polynomial<DualQuat>;

inline QuatPolynomial primal_part(const MotionPolynomial& c) {
  return c.map([](const DualQuat& x) { return x.primal; });
}

inline QuatPolynomial dual_part(const MotionPolynomial& c) {
  return c.map([](const DualQuat& x) { return x.dual; });
}

inline MotionPolynomial make_motion(const QuatPolynomial& p, const QuatPolynomial& q) {
  std::vector<DualQuat> out(std::max(p.size(), q.size()));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {p[k], q[k]};
  return MotionPolynomial(std::move(out));
}

// Real polynomial lifted into any ring with an explicit scalar constructor.
template <typename C>
Polynomial<C> lift(const RealPolynomial& p) {
  return p.map([](double x) { return C(x); });
}

template <typename C>
double max_coeff_abs(const Polynomial<C>& p) {
  double m = 0.0;
  for (const auto& c : p.coeffs()) {
    if constexpr (std::is_floating_point_v<C>) {
      m = std::fmax(m, std::fabs(c));
    } else {
      m = std::fmax(m, max_abs(c));
    }
  }
  return m;
}

// Drops leading coefficients whose magnitude is at most rel·max|coeff|.
template <typename C>
Polynomial<C> trimmed(const Polynomial<C>& p, double rel) {
  const double scale = max_coeff_abs(p);
  std::vector<C> v = p.coeffs();
  while (!v.empty()) {
    double m;
    if constexpr (std::is_floating_point_v<C>) {
      m = std::fabs(v.back());
    } else {
      m = max_abs(v.back());
    }
    if (m > rel * scale) break;
    v.pop_back();
  }
  return Polynomial<C>(std::move(v));
}

}  // namespace motionforge
