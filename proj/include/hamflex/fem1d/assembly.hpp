// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_FEM1D_ASSEMBLY_HPP
#define HAMFLEX_FEM1D_ASSEMBLY_HPP

#include <functional>

#include "hamflex/core/block_diag.hpp"
#include "hamflex/fem1d/quadrature.hpp"
#include "hamflex/fem1d/space.hpp"
#include "hamflex/types.hpp"

namespace hamflex::fem1d {

/// Pointwise coefficient evaluated at (element, xi).
using Coefficient = std::function<double(Index, double)>;

/// Mass matrix  int c u v dx  on one space.
SpMat assemble_mass(const Space1D& space, double c, const QuadratureRule& rule);

/// Element-block mass of a DG space as a block-diagonal matrix.
BlockDiagMatrix assemble_dg_mass(const Space1D& dg, double c,
                                 const QuadratureRule& rule);

/// Coupling matrix  int psi_i d^(order) phi_j w(x) dx  with test
/// functions from the (discontinuous) stress space on the rows and the
/// velocity space derivative of the given order on the columns. The
/// optional weight realizes the displacement-dependent block.
SpMat assemble_coupling_1d(const Space1D& stress, const Space1D& velocity,
                           int deriv_order, const QuadratureRule& rule,
                           const Coefficient& weight = {});

/// Stress-space load vector  int psi_i f(x) dx.
Vector assemble_load(const Space1D& stress, const QuadratureRule& rule,
                     const Coefficient& f);

/// Weighted stiffness  int w(x) phi_i' phi_j' dx  on one space.
SpMat assemble_weighted_stiffness(const Space1D& space,
                                  const QuadratureRule& rule,
                                  const Coefficient& w);

} // namespace hamflex::fem1d

#endif
