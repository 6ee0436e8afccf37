#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "motionforge/error.hpp"
#include "motionforge/lagrange.hpp"
#include "motionforge/polynomial.hpp"
#include "motionforge/study.hpp"

namespace motionforge {

struct Ratio {
  int num;
  int den;

  template <typename T>
  constexpr T as() const {
    return T(num) / T(den);
  }
};

// Rows: f_i of the default nodes, columns: Bernstein coefficients β_j.
// Degree 2 nodes are [0, ½, 1], degree 3 nodes are [0, ⅓, ⅔, 1].
inline constexpr std::array<std::array<Ratio, 3>, 3> kQuadraticToBernstein{{
    {{{1, 2}, {-1, 4}, {0, 1}}},
    {{{0, 1}, {-1, 2}, {0, 1}}},
    {{{0, 1}, {-1, 4}, {1, 2}}},
}};

inline constexpr std::array<std::array<Ratio, 4>, 4> kCubicToBernstein{{
    {{{-2, 9}, {5, 27}, {-2, 27}, {0, 1}}},
    {{{0, 1}, {2, 9}, {-1, 9}, {0, 1}}},
    {{{0, 1}, {1, 9}, {-2, 9}, {0, 1}}},
    {{{0, 1}, {2, 27}, {-5, 27}, {2, 9}}},
}};

inline std::vector<double> default_nodes(std::size_t degree) {
  switch (degree) {
    case 2: return {0.0, 0.5, 1.0};
    case 3: return {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
    default: throw Error(ErrorCode::UnsupportedDegree, "no Bernstein table for degree " + std::to_string(degree));
  }
}

// Conversion entry (f_i → β_j) for degree 2 or 3.
inline Ratio basis_change(std::size_t degree, std::size_t i, std::size_t j) {
  if (degree == 2) return kQuadraticToBernstein[i][j];
  if (degree == 3) return kCubicToBernstein[i][j];
  throw Error(ErrorCode::UnsupportedDegree, "no Bernstein table for degree " + std::to_string(degree));
}

template <typename T>
T binomial(std::size_t n, std::size_t k) {
  T r(1);
  for (std::size_t i = 1; i <= k; ++i) r = r * T(static_cast<long>(n - k + i)) / T(static_cast<long>(i));
  return r;
}

// β_i^d(t) = C(d, i) (1 − t)^{d−i} t^i
template <typename T>
T bernstein(std::size_t degree, std::size_t i, T t) {
  T r = binomial<T>(degree, i);
  for (std::size_t k = 0; k < i; ++k) r = r * t;
  for (std::size_t k = i; k < degree; ++k) r = r * (T(1) - t);
  return r;
}

// Homogeneous Bézier form Σ u_i β_i + ε Σ p_i u_i β_i.
//
// The end control points p_0, p_d coincide with interpolated points and are
// imaginary. Interior p_i are the quotients (Σ a w)(u_i)⁻¹ and in general carry
// a small scalar part, so they are kept as full quaternions.
struct BezierMotion {
  std::vector<Quat> weights;
  std::vector<Quat> control_points;

  std::size_t degree() const { return weights.empty() ? 0 : weights.size() - 1; }

  DualQuat control(std::size_t i) const { return {weights[i], control_points[i] * weights[i]}; }

  DualQuat operator()(double t) const {
    DualQuat c;
    for (std::size_t i = 0; i < weights.size(); ++i) c += control(i) * bernstein(degree(), i, t);
    return c;
  }

  // Expansion into the monomial basis.
  MotionPolynomial to_motion_polynomial() const {
    const std::size_t d = degree();
    MotionPolynomial sum;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      RealPolynomial b = RealPolynomial::constant(binomial<double>(d, i));
      for (std::size_t k = 0; k < i; ++k) b = b * RealPolynomial{0.0, 1.0};
      for (std::size_t k = i; k < d; ++k) b = b * RealPolynomial{1.0, -1.0};
      sum = sum + lift<DualQuat>(b) * control(i);
    }
    return sum;
  }
};

// Bernstein form of p = Σ w_i f_i, q = Σ a_i w_i f_i on the default nodes of
// the given degree. weights and points are indexed by node (w_0, w_2, …).
inline BezierMotion to_bezier(std::span<const Quat> weights, std::span<const Vec3> node_points) {
  if (weights.size() != node_points.size() || weights.size() < 3 || weights.size() > 4) {
    throw Error(ErrorCode::UnsupportedDegree,
                "Bezier conversion needs degree 2 or 3 (got " + std::to_string(weights.size()) + " weights)");
  }
  const std::size_t d = weights.size() - 1;
  BezierMotion bz;
  for (std::size_t j = 0; j <= d; ++j) {
    Quat u;
    Quat dual;
    for (std::size_t i = 0; i <= d; ++i) {
      const double m = basis_change(d, i, j).as<double>();
      if (m == 0.0) continue;
      u += weights[i] * m;
      dual += to_quat(node_points[i]) * weights[i] * m;
    }
    if (!(u.norm() > tol::singular)) {
      throw Error(ErrorCode::SingularWeight, "Bezier weight u_" + std::to_string(j) + " is not invertible");
    }
    bz.weights.push_back(u);
    bz.control_points.push_back(dual * inverse(u));
  }
  // Endpoints reproduce the interpolated points exactly.
  bz.control_points.front() = to_quat(node_points.front());
  bz.control_points.back() = to_quat(node_points.back());
  return bz;
}

// Variant taking the node vector explicitly; only the default nodes have
// tabulated conversions.
inline BezierMotion to_bezier(std::span<const Quat> weights, std::span<const Vec3> node_points,
                              const std::vector<double>& nodes) {
  if (weights.size() < 3 || weights.size() > 4 || nodes != default_nodes(weights.size() - 1)) {
    throw Error(ErrorCode::UnsupportedDegree, "Bernstein tables exist only for the default nodes of degree 2 and 3");
  }
  return to_bezier(weights, node_points);
}

}  // namespace motionforge
