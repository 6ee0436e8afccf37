#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "motionforge/bezier.hpp"
#include "motionforge/error.hpp"
#include "motionforge/lagrange.hpp"
#include "motionforge/linalg.hpp"
#include "motionforge/polynomial.hpp"
#include "motionforge/study.hpp"

namespace motionforge {

// Motion C = p + εq with p = Σ w_{2i} f_i, q = Σ a_{2i} w_{2i} f_i whose origin
// passes the 2n+1 input points.
struct PointInterpolation {
  MotionPolynomial motion;
  // w_0, w_2, …, w_{2n} (w_0 = 1).
  std::vector<Quat> weights;
  // Parameter value at which each input point is reached, in input order.
  std::vector<double> via_times;
  std::optional<BezierMotion> bezier;
};

namespace detail {

inline double bounding_diagonal(std::span<const Vec3> pts) {
  Vec3 lo = pts.front();
  Vec3 hi = pts.front();
  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

// Points moved to a₀ and scaled to unit bounding diagonal. The weights depend
// only on differences a_i − a_j and are invariant under this similarity.
inline std::vector<Vec3> normalized_points(std::span<const Vec3> pts) {
  for (const auto& p : pts) {
    if (!p.allFinite()) throw Error(ErrorCode::SchemaError, "points must be finite");
  }
  const double diag = bounding_diagonal(pts);
  std::vector<Vec3> out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t k = i + 1; k < pts.size(); ++k) {
      if (!((pts[i] - pts[k]).norm() > 1e-12 * diag)) {
        throw Error(ErrorCode::SingularDifference,
                    "points " + std::to_string(i) + " and " + std::to_string(k) + " coincide");
      }
    }
    out.push_back((pts[i] - pts.front()) / diag);
  }
  return out;
}

inline Quat checked_inverse(const Quat& q, ErrorCode code, const char* what) {
  if (!(q.norm() > tol::singular)) throw Error(code, std::string(what) + " is not invertible");
  return inverse(q);
}

// E(a, b, c, d) = a⁻¹ b − c⁻¹ d
inline Quat eliminate(const Quat& a, const Quat& b, const Quat& c, const Quat& d) {
  return checked_inverse(a, ErrorCode::SingularElimination, "elimination pivot") * b -
         checked_inverse(c, ErrorCode::SingularElimination, "elimination pivot") * d;
}

inline MotionPolynomial assemble(std::span<const Vec3> node_points, std::span<const Quat> weights,
                                 const std::vector<double>& nodes) {
  const auto f = lagrange_basis(nodes);
  QuatPolynomial p;
  QuatPolynomial q;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const QuatPolynomial fi = lift<Quat>(f[i]);
    p = p + fi * weights[i];
    q = q + fi * (to_quat(node_points[i]) * weights[i]);
  }
  return make_motion(p, q);
}

inline std::vector<Vec3> even_points(std::span<const Vec3> pts) {
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < pts.size(); i += 2) out.push_back(pts[i]);
  return out;
}

inline std::vector<double> interleave(const std::vector<double>& nodes, const std::vector<double>& secondary) {
  std::vector<double> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out.push_back(nodes[i]);
    if (i < secondary.size()) out.push_back(secondary[i]);
  }
  return out;
}

}  // namespace detail

// Solves Σ_{i≥1} (a_{2i} − a_{2j−1}) w_{2i} f_i(s_j) = (a_{2j−1} − a_0) f_0(s_j)
// with w_0 = 1 through the realified 4n × 4n system. Even points a_{2i} are
// attained at nodes[i], odd points a_{2j−1} at secondary[j−1].
inline PointInterpolation interpolate_points_generic(std::span<const Vec3> points, const std::vector<double>& nodes,
                                                     const std::vector<double>& secondary) {
  const std::size_t n = secondary.size();
  if (n < 1 || nodes.size() != n + 1 || points.size() != 2 * n + 1) {
    throw Error(ErrorCode::BadArity, "need 2n+1 points, n+1 nodes and n secondary times (got " +
                                         std::to_string(points.size()) + ", " + std::to_string(nodes.size()) +
                                         ", " + std::to_string(n) + ")");
  }
  // Rejects duplicates within and across the two time lists.
  lagrange_basis(detail::interleave(nodes, secondary));
  for (const auto& p : points) {
    if (!p.allFinite()) throw Error(ErrorCode::SchemaError, "points must be finite");
  }

  const double diag = detail::bounding_diagonal(points);
  if (!(diag > 0.0)) throw Error(ErrorCode::SingularSystem, "all points coincide");
  std::vector<Vec3> a;
  for (const auto& p : points) a.push_back((p - points.front()) / diag);

  const auto f = lagrange_basis(nodes);
  std::vector<std::vector<Quat>> lhs(n, std::vector<Quat>(n));
  std::vector<Quat> rhs(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double s = secondary[j - 1];
    const Vec3& odd = a[2 * j - 1];
    for (std::size_t i = 1; i <= n; ++i) lhs[j - 1][i - 1] = to_quat(a[2 * i] - odd) * f[i](s);
    rhs[j - 1] = to_quat(odd - a[0]) * f[0](s);
  }
  const auto sol = solve_quaternion_system(lhs, rhs);

  PointInterpolation out;
  out.weights.push_back(Quat::identity());
  out.weights.insert(out.weights.end(), sol.begin(), sol.end());
  const auto node_points = detail::even_points(points);
  out.motion = detail::assemble(node_points, out.weights, nodes);
  out.via_times = detail::interleave(nodes, secondary);
  return out;
}

// Closed-form five-point scheme: a_k reached at t = k/4, quadratic motion.
inline PointInterpolation interpolate_points5(std::span<const Vec3> points) {
  if (points.size() != 5) {
    throw Error(ErrorCode::BadArity, "points5 needs exactly 5 points (got " + std::to_string(points.size()) + ")");
  }
  const auto a = detail::normalized_points(points);
  auto d = [&](int i, int j) { return to_quat(a[i] - a[j]); };
  auto inv = [](const Quat& q) { return detail::checked_inverse(q, ErrorCode::SingularDifference, "point difference"); };
  auto outer = [](const Quat& q) { return detail::checked_inverse(q, ErrorCode::SingularWeight, "weight factor"); };

  const Quat w0 = Quat::identity();
  const Quat d41i = inv(d(4, 1));
  const Quat d43i = inv(d(4, 3));
  const Quat d21i = inv(d(2, 1));
  const Quat d23i = inv(d(2, 3));
  const Quat w2 = outer(-9.0 * (d41i * d(2, 1)) - 3.0 * (d43i * d(2, 3))) *
                  (9.0 * (d41i * d(1, 0)) - d43i * d(3, 0)) * w0;
  const Quat w4 = outer(-(d21i * d(4, 1)) - 3.0 * (d23i * d(4, 3))) *
                  (3.0 * (d21i * d(1, 0)) + d23i * d(3, 0)) * w0;

  PointInterpolation out;
  out.weights = {w0, w2, w4};
  const auto nodes = default_nodes(2);
  const auto node_points = detail::even_points(points);
  out.motion = detail::assemble(node_points, out.weights, nodes);
  out.via_times = {0.0, 0.25, 0.5, 0.75, 1.0};
  out.bezier = to_bezier(out.weights, node_points);
  return out;
}

// Closed-form seven-point scheme: a_k reached at t = k/6, cubic motion. The
// quaternion system l_j: c_{j,2} w_2 + c_{j,4} w_4 + c_{j,6} w_6 = c_{j,8} is
// reduced by left eliminations E(a, b, c, d) = a⁻¹b − c⁻¹d.
inline PointInterpolation interpolate_points7(std::span<const Vec3> points) {
  if (points.size() != 7) {
    throw Error(ErrorCode::BadArity, "points7 needs exactly 7 points (got " + std::to_string(points.size()) + ")");
  }
  const auto a = detail::normalized_points(points);
  auto d = [&](int i, int j) { return to_quat(a[i] - a[j]); };

  // c[j][k] for j = 1..3 and k = 2, 4, 6, 8 stored as c[j-1][k/2-1].
  const Quat c[3][4] = {
      {15.0 * d(2, 1), 5.0 * d(4, 1), 3.0 * d(6, 1), -15.0 * d(1, 0)},
      {9.0 * d(2, 3), -9.0 * d(4, 3), -3.0 * d(6, 3), 3.0 * d(3, 0)},
      {-5.0 * d(2, 5), -15.0 * d(4, 5), 15.0 * d(6, 5), -3.0 * d(5, 0)},
  };

  // m_j: e_{j,4} w_4 + e_{j,6} w_6 = e_{j,8}, j = 2, 3 (index 0, 1 here).
  Quat e[2][3];
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 3; ++k) e[j][k] = detail::eliminate(c[0][0], c[0][k + 1], c[j + 1][0], c[j + 1][k + 1]);
  }
  const Quat r44 = detail::eliminate(e[0][1], e[0][0], e[1][1], e[1][0]);
  const Quat r48 = detail::eliminate(e[0][1], e[0][2], e[1][1], e[1][2]);
  const Quat r66 = detail::eliminate(e[0][0], e[0][1], e[1][0], e[1][1]);
  const Quat r68 = detail::eliminate(e[0][0], e[0][2], e[1][0], e[1][2]);

  auto pivot = [](const Quat& q) { return detail::checked_inverse(q, ErrorCode::SingularElimination, "elimination pivot"); };
  const Quat w0 = Quat::identity();
  const Quat w4 = pivot(r44) * r48;
  const Quat w6 = pivot(r66) * r68;
  const Quat w2 = pivot(c[0][0]) * (c[0][3] - c[0][1] * w4 - c[0][2] * w6);

  PointInterpolation out;
  out.weights = {w0, w2, w4, w6};
  const auto nodes = default_nodes(3);
  const auto node_points = detail::even_points(points);
  out.motion = detail::assemble(node_points, out.weights, nodes);
  out.via_times = {0.0, 1.0 / 6.0, 1.0 / 3.0, 0.5, 2.0 / 3.0, 5.0 / 6.0, 1.0};
  out.bezier = to_bezier(out.weights, node_points);
  return out;
}

}  // namespace motionforge
