// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_FEM3D_ELASTICITY_HPP
#define HAMFLEX_FEM3D_ELASTICITY_HPP

#include <memory>

#include "hamflex/core/system.hpp"
#include "hamflex/fem3d/kernels.hpp"
#include "hamflex/fem3d/material.hpp"
#include "hamflex/fem3d/tet_mesh.hpp"

namespace hamflex::fem3d {

/// Column benchmark: 1 x 1 x 6 m box, 6 x 6 x 36 cubes of 6 tets each,
/// Saint-Venant material, initial velocity (5 z / 3, 0, 0).
struct ColumnParams {
  double rho = 1100.0;  // kg/m^3
  double e_mod = 17e6;  // Pa
  double nu = 0.3;
  double lx = 1.0, ly = 1.0, lz = 6.0;
  Index nx = 6, ny = 6, nz = 36;
  double t_end = 0.5; // s

  double mu() const { return e_mod / (2.0 * (1.0 + nu)); }
  double lambda() const {
    return e_mod * nu / ((1.0 - 2.0 * nu) * (1.0 + nu));
  }
  double bulk() const { return lambda() + 2.0 * mu() / 3.0; }
  /// Longitudinal wave speed sqrt((kappa + 4 mu / 3) / rho).
  double wave_speed() const {
    return std::sqrt((bulk() + 4.0 * mu() / 3.0) / rho);
  }
  double h() const { return lx / static_cast<double>(nx); }
  /// Coarsest time step h / c_l (= 1.16 ms for the defaults).
  double dt_base() const { return h() / wave_speed(); }

  void validate() const;
};

/// P1 vector displacement/velocity with cell-wise constant symmetric
/// stress in Mandel convention. The coupling L(q) maps nodal
/// velocities to cell strain rates sym(F^T grad v) exactly (both
/// factors constant per cell); the strain projection is the cell-wise
/// Green-Lagrange tensor.
class ElasticityModel final : public Model {
public:
  ElasticityModel(TetMesh mesh, const SaintVenantMaterial& material,
                  double rho, bool clamped);

  void apply_coupling(const Vector& q, const Vector& v,
                      Vector& out) const override;
  void apply_coupling_transpose(const Vector& q, const Vector& s,
                                Vector& out) const override;
  SpMat assemble_coupling(const Vector& q) const override;
  Vector strain_projection(const Vector& q) const override;
  SpMat assemble_two_point_stiffness(const Vector& q_left,
                                     const Vector& q_right) const override;
  SpMat assemble_geometric_stiffness(const Vector& s) const override;
  int dof_block_size() const override { return 3; }

  const TetMesh& mesh() const { return mesh_; }
  const MeshGeometry& geometry() const { return geom_; }
  const SaintVenantMaterial& material() const { return material_; }
  double rho() const { return rho_; }
  bool clamped() const { return clamped_; }

  Vector to_full(const Vector& reduced) const;
  Vector to_reduced(const Vector& full) const;

private:
  SpMat assemble_cell_blocks(const std::vector<Matrix12>& blocks) const;
  SpMat assemble_coupling_sparse(const Vector& q_full,
                                 bool include_identity) const;

  TetMesh mesh_;
  MeshGeometry geom_;
  SaintVenantMaterial material_;
  Matrix6 k_mandel_;
  double rho_ = 0.0;
  bool clamped_ = false;

  std::vector<Index> kept_;
  std::vector<Index> full_to_red_;

  // Fixed sparsity of all vertex-block matrices; values are scattered
  // per call so models stay shareable across concurrent runs.
  SpMat pattern_;
  std::vector<Index> slot_offsets_;
  std::vector<Index> src_cell_;
  std::vector<int> src_ij_;
};

std::unique_ptr<ElasticityModel> assemble_elasticity(const TetMesh& mesh,
                                                     const ColumnParams& params,
                                                     bool clamped = true);

/// q = 0, v = (5 z / 3, 0, 0), s = 0 on the model's dof set.
PoissonState column_initial_state(const ColumnParams& params,
                                  const ElasticityModel& model);

/// Angular momentum J_i = int rho ([e_i] x (X + q)) . v dOmega.
Vector3 angular_momentum(const ElasticityModel& model,
                         const PoissonState& state);

} // namespace hamflex::fem3d

#endif
