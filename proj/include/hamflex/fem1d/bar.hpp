// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_FEM1D_BAR_HPP
#define HAMFLEX_FEM1D_BAR_HPP

#include "hamflex/core/block_diag.hpp"
#include "hamflex/fem1d/space.hpp"
#include "hamflex/types.hpp"

namespace hamflex::fem1d {

/// Mixed matrices of the longitudinal wave equation in a bar under
/// free (Neumann) end conditions: CG_k velocity, DG_{k-1} stress.
///   M_rhoA dv/dt = -D^T n,   M_Ca dn/dt = D v.
struct BarMatrices {
  SpMat m_rho_a;        // CG_k mass with coefficient rho A
  BlockDiagMatrix m_ca; // DG_{k-1} mass with coefficient 1/(E A)
  SpMat d_dx;           // rows: stress dofs, cols: velocity dofs
};

BarMatrices assemble_wave_bar(const Mesh1D& mesh, double rho, double area,
                              double e_mod, int order);

} // namespace hamflex::fem1d

#endif
