// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_CORE_CAYLEY_HPP
#define HAMFLEX_CORE_CAYLEY_HPP

#include <complex>
#include <vector>

#include "hamflex/core/system.hpp"
#include "hamflex/types.hpp"

namespace hamflex {

// Spectral utilities for the one-step transition map
//   Cay((dt/2) H^{-1} J) = (H - (dt/2) J)^{-1} (H + (dt/2) J).
// Dense, test-scale only (n up to a few hundred); production paths
// never materialize J.

/// Dense transition matrix for SPD h and skew-symmetric j.
Matrix cayley_transition(const Matrix& h, const Matrix& j, double dt);

/// Its eigenvalues; all moduli are 1 because the map is H-unitary.
std::vector<std::complex<double>> cayley_spectrum(const Matrix& h,
                                                  const Matrix& j, double dt);

std::vector<std::complex<double>> cayley_spectrum(const BlockMass& mass,
                                                  const Matrix& j, double dt);

/// Dense J(q) = [[0, -L(q)^T], [L(q), 0]] of a model, for tests.
Matrix dense_j(const Model& model, const Vector& q);

} // namespace hamflex

#endif
