#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "motionforge/error.hpp"
#include "motionforge/quaternion.hpp"
#include "motionforge/tolerance.hpp"

namespace motionforge {

// Matrix of x ↦ a·x acting on (w, x, y, z).
inline Eigen::Matrix4d left_matrix(const Quat& a) {
  Eigen::Matrix4d m;
  m << a.w, -a.x, -a.y, -a.z,
       a.x,  a.w, -a.z,  a.y,
       a.y,  a.z,  a.w, -a.x,
       a.z, -a.y,  a.x,  a.w;
  return m;
}

inline Eigen::Vector4d as_vector(const Quat& q) { return {q.w, q.x, q.y, q.z}; }
inline Quat as_quat(const Eigen::Ref<const Eigen::Vector4d>& v) { return {v[0], v[1], v[2], v[3]}; }

// Solves Σ_i A[j][i] · w_i = b_j for quaternion unknowns w_i (left factors
// known). The system is realified into 4n × 4n blocks and solved by full
// pivot LU; rank deficiency relative to the largest pivot throws
// SingularSystem.
inline std::vector<Quat> solve_quaternion_system(const std::vector<std::vector<Quat>>& a,
                                                 const std::vector<Quat>& b) {
  const std::size_t n = b.size();
  if (a.size() != n) throw Error(ErrorCode::SingularSystem, "quaternion system is not square");
  Eigen::MatrixXd m(4 * n, 4 * n);
  Eigen::VectorXd rhs(4 * n);
  for (std::size_t j = 0; j < n; ++j) {
    if (a[j].size() != n) throw Error(ErrorCode::SingularSystem, "quaternion system is not square");
    for (std::size_t i = 0; i < n; ++i) m.block<4, 4>(4 * j, 4 * i) = left_matrix(a[j][i]);
    rhs.segment<4>(4 * j) = as_vector(b[j]);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(tol::singular);
  if (lu.rank() < static_cast<Eigen::Index>(4 * n)) {
    throw Error(ErrorCode::SingularSystem,
                "realified quaternion system is rank deficient (rank " + std::to_string(lu.rank()) + " of " +
                    std::to_string(4 * n) + ")");
  }
  const Eigen::VectorXd sol = lu.solve(rhs);
  std::vector<Quat> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = as_quat(sol.segment<4>(4 * i));
  return w;
}

}  // namespace motionforge
