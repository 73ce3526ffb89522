// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_FEM1D_QUADRATURE_HPP
#define HAMFLEX_FEM1D_QUADRATURE_HPP

#include <vector>

#include "hamflex/types.hpp"

namespace hamflex::fem1d {

/// Gauss-Legendre rule with n points on the reference interval [0, 1],
/// exact for polynomials of degree 2n - 1. Nodes from Newton iteration
/// on the Legendre polynomial, converged to machine precision.
struct QuadratureRule {
  std::vector<double> points;  // in [0, 1]
  std::vector<double> weights; // sum to 1

  int size() const { return static_cast<int>(points.size()); }
};

QuadratureRule gauss_legendre(int n);

} // namespace hamflex::fem1d

#endif
