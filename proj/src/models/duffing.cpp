// SPDX-License-Identifier: Apache-2.0

#include "hamflex/models/duffing.hpp"

#include <cmath>

#include "hamflex/error.hpp"
#include "hamflex/models/elliptic.hpp"

namespace hamflex {

double DuffingParams::period() const {
  return 2.0 * M_PI / std::sqrt(alpha + beta * q0 * q0);
}

void DuffingParams::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw ConfigError("DuffingParams: alpha and beta must be positive");
  if (q0 == 0.0) throw ConfigError("DuffingParams: q0 must be nonzero");
}

DuffingModel::DuffingModel(const DuffingParams& params) : params_(params) {
  params_.validate();

  SpMat m_rho(1, 1);
  m_rho.insert(0, 0) = params_.mass;

  std::vector<Matrix> blocks(2);
  blocks[0] = Matrix::Constant(1, 1, 2.0 / params_.k_hor());
  blocks[1] = Matrix::Constant(1, 1, 2.0 / params_.k_ver());
  mass_ = BlockMass(std::move(m_rho), BlockDiagMatrix(std::move(blocks)));

  SpMat constant(2, 1);
  constant.insert(0, 0) = 2.0;
  const double length = params_.length;
  coupling_ = CouplingOperator(
      2, 1, {constant}, [length](const Vector& q) {
        SpMat nl(2, 1);
        nl.insert(1, 0) = 2.0 * q[0] / length;
        return nl;
      });
}

Vector DuffingModel::strain_projection(const Vector& q) const {
  Vector g(2);
  g[0] = 2.0 * q[0];
  g[1] = q[0] * q[0] / params_.length;
  return g;
}

SpMat DuffingModel::assemble_geometric_stiffness(const Vector& s) const {
  SpMat geo(1, 1);
  geo.insert(0, 0) = 2.0 * s[1] / params_.length;
  geo.makeCompressed();
  return geo;
}

void DuffingModel::apply_coupling(const Vector& q, const Vector& v,
                                  Vector& out) const {
  out.resize(2);
  out[0] = 2.0 * v[0];
  out[1] = 2.0 * q[0] / params_.length * v[0];
}

void DuffingModel::apply_coupling_transpose(const Vector& q, const Vector& s,
                                            Vector& out) const {
  out.resize(1);
  out[0] = 2.0 * s[0] + 2.0 * q[0] / params_.length * s[1];
}

SpMat DuffingModel::assemble_two_point_stiffness(const Vector& q_left,
                                                 const Vector& q_right) const {
  // L(ql)^T Diag[k_hor/2, k_ver/2] L(qr)
  const double ll = params_.length;
  SpMat k(1, 1);
  k.insert(0, 0) = 2.0 * params_.k_hor() +
                   2.0 * params_.k_ver() * q_left[0] * q_right[0] / (ll * ll);
  k.makeCompressed();
  return k;
}

PoissonState DuffingModel::initial_state() const {
  PoissonState state;
  state.q = Vector::Constant(1, params_.q0);
  state.v = Vector::Zero(1);
  state.s = stress_from_q(state.q);
  return state;
}

std::unique_ptr<DuffingModel> duffing_system(const DuffingParams& params) {
  return std::make_unique<DuffingModel>(params);
}

DuffingExactValues duffing_exact(const DuffingParams& params, double t) {
  params.validate();
  const double w0_sq = params.alpha + params.beta * params.q0 * params.q0;
  const double w0 = std::sqrt(w0_sq);
  const double m = params.beta * params.q0 * params.q0 / (2.0 * w0_sq);

  double u = w0 * t;
  const double full_period = 4.0 * elliptic_k(m);
  u = std::fmod(u, full_period);

  const JacobiValues j = jacobi_elliptic(u, m);
  DuffingExactValues out;
  out.q = params.q0 * j.cn;
  out.v = -w0 * params.q0 * j.sn * j.dn;
  return out;
}

} // namespace hamflex
