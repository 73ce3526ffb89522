// SPDX-License-Identifier: Apache-2.0

#include "hamflex/core/system.hpp"

#include "hamflex/error.hpp"
#include "hamflex/kernels/spmv.hpp"

namespace hamflex {

BlockMass::BlockMass(SpMat m_rho, BlockDiagMatrix m_c, int dof_block_size)
    : m_rho_(std::move(m_rho)), m_c_(std::move(m_c)),
      dof_block_size_(dof_block_size) {
  if (m_rho_.rows() != m_rho_.cols())
    throw ConfigError("BlockMass: velocity mass is not square");
  m_rho_.makeCompressed();
}

Vector BlockMass::solve_velocity(const Vector& rhs) const {
  return velocity_factor().solve(rhs);
}

const solvers::SpdFactorization& BlockMass::velocity_factor() const {
  if (!m_rho_factor_)
    m_rho_factor_ = std::make_shared<solvers::SpdFactorization>(
        solvers::factor_spd(m_rho_, dof_block_size_));
  return *m_rho_factor_;
}

Matrix BlockMass::dense() const {
  const Index nv = velocity_dim();
  const Index ns = stress_dim();
  Matrix h = Matrix::Zero(nv + ns, nv + ns);
  h.topLeftCorner(nv, nv) = Matrix(m_rho_);
  h.bottomRightCorner(ns, ns) = Matrix(m_c_.to_sparse());
  return h;
}

double energy(const BlockMass& mass, const PoissonState& state) {
  if (state.v.size() != mass.velocity_dim() ||
      state.s.size() != mass.stress_dim())
    throw ConfigError("energy: state dimensions do not match the mass blocks");
  Vector mv;
  kernels::spmv_sym(mass.velocity_mass(), state.v, mv);
  const double kinetic = 0.5 * state.v.dot(mv);
  const double potential = 0.5 * mass.stress_mass().quadratic_form(state.s);
  return kinetic + potential;
}

CouplingOperator::CouplingOperator(Index stress_dim, Index velocity_dim,
                                   std::vector<SpMat> constant_blocks,
                                   std::function<SpMat(const Vector&)> nonlinear_block)
    : stress_dim_(stress_dim), velocity_dim_(velocity_dim),
      constant_blocks_(std::move(constant_blocks)),
      nonlinear_block_(std::move(nonlinear_block)) {
  for (const SpMat& b : constant_blocks_)
    if (b.rows() != stress_dim_ || b.cols() != velocity_dim_)
      throw ConfigError("CouplingOperator: constant block shape mismatch");
}

SpMat CouplingOperator::assemble(const Vector& q) const {
  SpMat out(stress_dim_, velocity_dim_);
  for (const SpMat& b : constant_blocks_) out += b;
  if (nonlinear_block_) {
    SpMat nl = nonlinear_block_(q);
    if (nl.rows() != stress_dim_ || nl.cols() != velocity_dim_)
      throw ConfigError("CouplingOperator: nonlinear block shape mismatch");
    out += nl;
  }
  out.makeCompressed();
  return out;
}

void Model::apply_coupling(const Vector& q, const Vector& v,
                           Vector& out) const {
  out.noalias() = assemble_coupling(q) * v;
}

void Model::apply_coupling_transpose(const Vector& q, const Vector& s,
                                     Vector& out) const {
  out.noalias() = assemble_coupling(q).transpose() * s;
}

SpMat Model::assemble_coupling(const Vector& q) const {
  return coupling_.assemble(q);
}

SpMat Model::assemble_two_point_stiffness(const Vector& q_left,
                                          const Vector& q_right) const {
  const SpMat l_left = assemble_coupling(q_left);
  const SpMat l_right = assemble_coupling(q_right);
  SpMat k = SpMat(l_left.transpose()) *
            SpMat(mass_.stress_mass().inverse_sparse() * l_right);
  k.makeCompressed();
  return k;
}

Vector Model::stress_from_q(const Vector& q) const {
  return mass_.solve_stress(strain_projection(q));
}

Vector Model::rhs_force(const Vector& q) const {
  Vector out;
  apply_coupling_transpose(q, stress_from_q(q), out);
  out = -out;
  return out;
}

void apply_j(const Model& model, const Vector& q, const Vector& v,
             const Vector& s, Vector& out_dv, Vector& out_ds) {
  if (q.size() != model.velocity_dim() || v.size() != model.velocity_dim() ||
      s.size() != model.stress_dim())
    throw ConfigError("apply_j: dimension mismatch");
  model.apply_coupling_transpose(q, s, out_dv);
  out_dv = -out_dv;
  model.apply_coupling(q, v, out_ds);
}

} // namespace hamflex
