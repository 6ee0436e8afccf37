#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "motionforge/error.hpp"
#include "motionforge/polynomial.hpp"

namespace motionforge {

// Unnormalized Lagrange-type basis f_i(t) = ∏_{k≠i} (t − t_k). Note that
// f_i(t_i) is the product of node gaps, not 1.
inline std::vector<RealPolynomial> lagrange_basis(const std::vector<double>& nodes) {
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    if (!std::isfinite(nodes[a])) throw Error(ErrorCode::DuplicateNodes, "nodes must be finite");
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      if (nodes[a] == nodes[b]) throw Error(ErrorCode::DuplicateNodes, "interpolation nodes must be pairwise distinct");
    }
  }
  std::vector<RealPolynomial> basis;
  basis.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    RealPolynomial f = RealPolynomial::constant(1.0);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (k != i) f = f * RealPolynomial{-nodes[k], 1.0};
    }
    basis.push_back(f);
  }
  return basis;
}

}  // namespace motionforge
