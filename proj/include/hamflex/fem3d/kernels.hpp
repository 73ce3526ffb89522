// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_FEM3D_KERNELS_HPP
#define HAMFLEX_FEM3D_KERNELS_HPP

#include <array>
#include <vector>

#include "hamflex/fem3d/mandel.hpp"
#include "hamflex/fem3d/tet_mesh.hpp"
#include "hamflex/types.hpp"

namespace hamflex::fem3d {

using Matrix12 = Eigen::Matrix<double, 12, 12>;
using Matrix6x12 = Eigen::Matrix<double, 6, 12>;

/// Precomputed cell data: constant P1 gradients (columns), volumes and
/// the vertex incidence lists used for deterministic transpose
/// gathers.
struct MeshGeometry {
  Index n_vertices = 0;
  std::vector<std::array<Index, 4>> cells;
  std::vector<Eigen::Matrix<double, 3, 4>> grads;
  std::vector<double> volumes;
  // vertex -> (cell, local index), CSR layout, cells ascending
  std::vector<Index> incidence_offsets;
  std::vector<Index> incidence_cell;
  std::vector<int> incidence_local;
};

MeshGeometry compute_geometry(const TetMesh& mesh);

// All kernels take full (unconstrained) dof vectors of size
// 3 n_vertices and come in a serial reference and an OpenMP variant
// with bitwise-identical results: per-cell work is embarrassingly
// parallel and cross-cell reductions run in a fixed order.

/// 6 x 12 strain-rate operator of one cell at deformation F(q):
/// column (a, i) = V to_mandel(sym(f_i g_a^T)), f_i = i-th row of F.
Matrix6x12 cell_coupling(const MeshGeometry& geom, Index cell,
                         const Vector& q_full);

/// g[6c .. 6c+5] = V_c to_mandel(E(q)) with E = (F^T F - I) / 2.
void strain_loads_serial(const MeshGeometry& geom, const Vector& q_full,
                         Vector& g);
void strain_loads(const MeshGeometry& geom, const Vector& q_full, Vector& g);

/// out[6c..] = (L(q) v)_cell.
void apply_l_serial(const MeshGeometry& geom, const Vector& q_full,
                    const Vector& v_full, Vector& out);
void apply_l(const MeshGeometry& geom, const Vector& q_full,
             const Vector& v_full, Vector& out);

/// out = L(q)^T s (full velocity dofs); two-phase: per-cell 12-vectors
/// then a vertex-indexed gather in fixed cell order.
void apply_lt_serial(const MeshGeometry& geom, const Vector& q_full,
                     const Vector& s, Vector& out);
void apply_lt(const MeshGeometry& geom, const Vector& q_full, const Vector& s,
              Vector& out);

/// Per-cell two-point stiffness blocks
/// K_c = V_c B(ql)^T K_mandel B(qr), where B = cell_coupling / V.
void cell_stiffness_blocks_serial(const MeshGeometry& geom,
                                  const Matrix6& k_mandel,
                                  const Vector& ql_full,
                                  const Vector& qr_full,
                                  std::vector<Matrix12>& out);
void cell_stiffness_blocks(const MeshGeometry& geom, const Matrix6& k_mandel,
                           const Vector& ql_full, const Vector& qr_full,
                           std::vector<Matrix12>& out);

/// Per-cell geometric stiffness blocks for a given stress dof vector:
/// K_c[(a,i),(b,j)] = delta_ij V_c g_a^T S_c g_b.
void cell_geometric_blocks_serial(const MeshGeometry& geom, const Vector& s,
                                  std::vector<Matrix12>& out);
void cell_geometric_blocks(const MeshGeometry& geom, const Vector& s,
                           std::vector<Matrix12>& out);

/// Angular momentum integral J = int rho (X + q) x v dOmega with a
/// degree-3 tetrahedral rule, summed over cells in fixed order.
Vector3 angular_momentum_integral(const MeshGeometry& geom,
                                  const std::vector<Vector3>& vertices,
                                  double rho, const Vector& q_full,
                                  const Vector& v_full);

} // namespace hamflex::fem3d

#endif
