// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_CORE_SYSTEM_HPP
#define HAMFLEX_CORE_SYSTEM_HPP

#include <functional>
#include <memory>
#include <vector>

#include "hamflex/core/block_diag.hpp"
#include "hamflex/solvers/spd.hpp"
#include "hamflex/types.hpp"

namespace hamflex {

/// State triplet (q, v, s): displacement, velocity and stress degrees
/// of freedom. After boundary elimination q and v share one dof set.
struct PoissonState {
  Vector q;
  Vector v;
  Vector s;

  bool finite() const {
    return q.allFinite() && v.allFinite() && s.allFinite();
  }
};

/// Block mass operator H = Diag[M_rho, M_C]: a sparse SPD velocity
/// mass and a block-diagonal SPD stress/compliance mass.
class BlockMass {
public:
  BlockMass() = default;
  BlockMass(SpMat m_rho, BlockDiagMatrix m_c, int dof_block_size = 1);

  Index velocity_dim() const { return m_rho_.rows(); }
  Index stress_dim() const { return m_c_.rows(); }

  const SpMat& velocity_mass() const { return m_rho_; }
  const BlockDiagMatrix& stress_mass() const { return m_c_; }

  /// M_rho^{-1} rhs through the cached factorization.
  Vector solve_velocity(const Vector& rhs) const;
  /// M_C^{-1} rhs, per-block exact solve.
  Vector solve_stress(const Vector& rhs) const { return m_c_.solve(rhs); }

  const solvers::SpdFactorization& velocity_factor() const;

  Matrix dense() const;

private:
  SpMat m_rho_;
  BlockDiagMatrix m_c_;
  int dof_block_size_ = 1;
  mutable std::shared_ptr<solvers::SpdFactorization> m_rho_factor_;
};

/// Total energy H = 1/2 v^T M_rho v + 1/2 s^T M_C s.
double energy(const BlockMass& mass, const PoissonState& state);

/// Sparse realization of the coupling operator L(q). Rows live in the
/// stress space, columns in the velocity space. The constant blocks
/// hold the displacement-independent part; the nonlinear block is an
/// affine function of q for every model in this library.
class CouplingOperator {
public:
  CouplingOperator() = default;
  CouplingOperator(Index stress_dim, Index velocity_dim,
                   std::vector<SpMat> constant_blocks,
                   std::function<SpMat(const Vector&)> nonlinear_block = {});

  Index rows() const { return stress_dim_; }
  Index cols() const { return velocity_dim_; }

  SpMat assemble(const Vector& q) const;

private:
  Index stress_dim_ = 0;
  Index velocity_dim_ = 0;
  std::vector<SpMat> constant_blocks_;
  std::function<SpMat(const Vector&)> nonlinear_block_;
};

/// A concrete mechanical model in first-order form
///   dq/dt = v,   H d(v,s)/dt = J(q) (v,s),
/// exposing the mass blocks, the coupling action and the quadratic
/// strain projection G with M_C s = G(q) and dG(q)[w] = L(q) w.
class Model {
public:
  virtual ~Model() = default;

  const BlockMass& mass() const { return mass_; }
  const CouplingOperator& coupling() const { return coupling_; }
  Index velocity_dim() const { return mass_.velocity_dim(); }
  Index stress_dim() const { return mass_.stress_dim(); }

  /// out = L(q) v
  virtual void apply_coupling(const Vector& q, const Vector& v,
                              Vector& out) const;
  /// out = L(q)^T s
  virtual void apply_coupling_transpose(const Vector& q, const Vector& s,
                                        Vector& out) const;
  /// Sparse L(q).
  virtual SpMat assemble_coupling(const Vector& q) const;

  /// Strain projection G(q), the stress-space load vector.
  virtual Vector strain_projection(const Vector& q) const = 0;

  /// K(ql, qr) = L(ql)^T M_C^{-1} L(qr); symmetric when ql == qr.
  virtual SpMat assemble_two_point_stiffness(const Vector& q_left,
                                             const Vector& q_right) const;

  /// Geometric stiffness: the matrix of w -> d/dq [L(q)^T s] w, which
  /// is q-independent because L is affine in q. Symmetric.
  virtual SpMat assemble_geometric_stiffness(const Vector& s) const = 0;

  /// Uniform dof-block size of the velocity space (3 for vector P1),
  /// picked up by the blocked direct solver.
  virtual int dof_block_size() const { return 1; }

  Vector stress_from_q(const Vector& q) const;
  Vector rhs_force(const Vector& q) const;

protected:
  BlockMass mass_;
  CouplingOperator coupling_;
};

/// out_dv = -L(q)^T s, out_ds = L(q) v: the two block rows of J(q) x.
void apply_j(const Model& model, const Vector& q, const Vector& v,
             const Vector& s, Vector& out_dv, Vector& out_ds);

} // namespace hamflex

#endif
