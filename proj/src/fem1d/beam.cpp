// SPDX-License-Identifier: Apache-2.0

#include "hamflex/fem1d/beam.hpp"

#include <cmath>

#include "hamflex/error.hpp"
#include "hamflex/fem1d/assembly.hpp"

namespace hamflex::fem1d {

double BeamParams::t1_bending() const {
  return 2.0 * length * length / M_PI *
         std::sqrt(rho * area() / (e_mod * inertia()));
}

void BeamParams::validate() const {
  if (!(rho > 0.0) || !(e_mod > 0.0) || !(length > 0.0) || !(side > 0.0) ||
      !(amplitude > 0.0) || n_el < 1 || !(dt_base > 0.0))
    throw ConfigError("BeamParams: all parameters must be positive");
}

BeamModel::BeamModel(const Mesh1D& mesh, const BeamParams& params, BeamBc bc,
                     int quad_points)
    : mesh_(mesh), params_(params), bc_(bc),
      vx_space_(Space1D::Kind::CG, 1, mesh),
      vz_space_(Space1D::Kind::Hermite, 3, mesh),
      n_space_(Space1D::Kind::DG, 4, mesh),
      m_space_(Space1D::Kind::DG, 1, mesh),
      rule_(gauss_legendre(quad_points)) {
  params_.validate();
  n_vx_full_ = vx_space_.n_dofs();
  n_vz_full_ = vz_space_.n_dofs();

  // Eliminated velocity dofs: q_x and the q_z value dofs at both ends
  // for the simply supported beam; the moment condition is natural.
  std::vector<bool> drop(static_cast<size_t>(n_vx_full_ + n_vz_full_), false);
  if (bc_ == BeamBc::SimplySupported) {
    drop[0] = true;
    drop[static_cast<size_t>(n_vx_full_ - 1)] = true;
    drop[static_cast<size_t>(n_vx_full_)] = true; // q_z value at x = 0
    drop[static_cast<size_t>(n_vx_full_ + 2 * mesh_.n_el)] = true; // at x = L
  }
  full_to_red_.assign(static_cast<size_t>(n_vx_full_ + n_vz_full_), -1);
  for (Index i = 0; i < n_vx_full_ + n_vz_full_; ++i) {
    if (drop[static_cast<size_t>(i)]) continue;
    full_to_red_[static_cast<size_t>(i)] = static_cast<Index>(kept_.size());
    kept_.push_back(i);
  }
  n_vx_red_ = 0;
  for (Index i = 0; i < n_vx_full_; ++i)
    if (!drop[static_cast<size_t>(i)]) ++n_vx_red_;
  n_vz_red_ = static_cast<Index>(kept_.size()) - n_vx_red_;

  const double rho_a = params_.rho * params_.area();
  SpMat m_vx = assemble_mass(vx_space_, rho_a, rule_);
  SpMat m_vz = assemble_mass(vz_space_, rho_a, rule_);
  std::vector<Triplet> trips;
  for (Index k = 0; k < m_vx.outerSize(); ++k)
    for (SpMat::InnerIterator it(m_vx, k); it; ++it)
      trips.emplace_back(it.row(), it.col(), it.value());
  for (Index k = 0; k < m_vz.outerSize(); ++k)
    for (SpMat::InnerIterator it(m_vz, k); it; ++it)
      trips.emplace_back(n_vx_full_ + it.row(), n_vx_full_ + it.col(),
                         it.value());
  SpMat m_rho_full(n_vx_full_ + n_vz_full_, n_vx_full_ + n_vz_full_);
  m_rho_full.setFromTriplets(trips.begin(), trips.end());
  SpMat m_rho = restrict_both(m_rho_full);

  BlockDiagMatrix m_ca =
      assemble_dg_mass(n_space_, params_.axial_compliance(), rule_);
  BlockDiagMatrix m_cb =
      assemble_dg_mass(m_space_, params_.bending_compliance(), rule_);
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(m_ca.block_count() + m_cb.block_count()));
  for (Index b = 0; b < m_ca.block_count(); ++b) blocks.push_back(m_ca.block(b));
  for (Index b = 0; b < m_cb.block_count(); ++b) blocks.push_back(m_cb.block(b));
  mass_ = BlockMass(std::move(m_rho), BlockDiagMatrix(std::move(blocks)));

  // Constant coupling blocks: axial D_dx against v_x, bending D_dxx
  // against v_z, positioned in the (stress x velocity) layout.
  const Index n_n = n_space_.n_dofs();
  const Index n_m = m_space_.n_dofs();
  const Index n_v = static_cast<Index>(kept_.size());
  SpMat d_ax = assemble_coupling_1d(n_space_, vx_space_, 1, rule_);
  SpMat d_bend = assemble_coupling_1d(m_space_, vz_space_, 2, rule_);

  std::vector<Triplet> ct;
  for (Index k = 0; k < d_ax.outerSize(); ++k)
    for (SpMat::InnerIterator it(d_ax, k); it; ++it) {
      const Index j = full_to_red_[static_cast<size_t>(it.col())];
      if (j >= 0) ct.emplace_back(it.row(), j, it.value());
    }
  for (Index k = 0; k < d_bend.outerSize(); ++k)
    for (SpMat::InnerIterator it(d_bend, k); it; ++it) {
      const Index j = full_to_red_[static_cast<size_t>(n_vx_full_ + it.col())];
      if (j >= 0) ct.emplace_back(n_n + it.row(), j, it.value());
    }
  SpMat constant(n_n + n_m, n_v);
  constant.setFromTriplets(ct.begin(), ct.end());

  coupling_ = CouplingOperator(
      n_n + n_m, n_v, {constant}, [this](const Vector& q) {
        const Vector q_full = to_full(q);
        const Vector* qf = &q_full;
        const SpMat l_nl = assemble_coupling_1d(
            n_space_, vz_space_, 1, rule_, [this, qf](Index e, double xi) {
              return vz_space_.deriv(qf->segment(n_vx_full_, n_vz_full_), e, xi);
            });
        std::vector<Triplet> t;
        t.reserve(static_cast<size_t>(l_nl.nonZeros()));
        for (Index k = 0; k < l_nl.outerSize(); ++k)
          for (SpMat::InnerIterator it(l_nl, k); it; ++it) {
            const Index j =
                full_to_red_[static_cast<size_t>(n_vx_full_ + it.col())];
            if (j >= 0) t.emplace_back(it.row(), j, it.value());
          }
        SpMat out(n_space_.n_dofs() + m_space_.n_dofs(),
                  static_cast<Index>(kept_.size()));
        out.setFromTriplets(t.begin(), t.end());
        return out;
      });
}

SpMat BeamModel::restrict_cols(const SpMat& full) const {
  std::vector<Triplet> trips;
  for (Index k = 0; k < full.outerSize(); ++k)
    for (SpMat::InnerIterator it(full, k); it; ++it) {
      const Index j = full_to_red_[static_cast<size_t>(it.col())];
      if (j >= 0) trips.emplace_back(it.row(), j, it.value());
    }
  SpMat out(full.rows(), static_cast<Index>(kept_.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SpMat BeamModel::restrict_both(const SpMat& full) const {
  std::vector<Triplet> trips;
  for (Index k = 0; k < full.outerSize(); ++k)
    for (SpMat::InnerIterator it(full, k); it; ++it) {
      const Index i = full_to_red_[static_cast<size_t>(it.row())];
      const Index j = full_to_red_[static_cast<size_t>(it.col())];
      if (i >= 0 && j >= 0) trips.emplace_back(i, j, it.value());
    }
  const Index n = static_cast<Index>(kept_.size());
  SpMat out(n, n);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

Vector BeamModel::to_full(const Vector& reduced) const {
  Vector full = Vector::Zero(n_vx_full_ + n_vz_full_);
  for (size_t i = 0; i < kept_.size(); ++i)
    full[kept_[i]] = reduced[static_cast<Index>(i)];
  return full;
}

Vector BeamModel::to_reduced(const Vector& full) const {
  Vector red(static_cast<Index>(kept_.size()));
  for (size_t i = 0; i < kept_.size(); ++i)
    red[static_cast<Index>(i)] = full[kept_[i]];
  return red;
}

Vector BeamModel::strain_projection(const Vector& q) const {
  const Vector q_full = to_full(q);
  const auto qx = q_full.head(n_vx_full_);
  const auto qz = q_full.segment(n_vx_full_, n_vz_full_);
  const Vector axial = assemble_load(
      n_space_, rule_, [&](Index e, double xi) {
        const double dqx = vx_space_.deriv(qx, e, xi);
        const double dqz = vz_space_.deriv(qz, e, xi);
        return dqx + 0.5 * dqz * dqz;
      });
  const Vector bending = assemble_load(
      m_space_, rule_, [&](Index e, double xi) {
        return vz_space_.deriv2(qz, e, xi);
      });
  Vector g(axial.size() + bending.size());
  g << axial, bending;
  return g;
}

SpMat BeamModel::assemble_geometric_stiffness(const Vector& s) const {
  const auto s_axial = s.head(n_space_.n_dofs());
  SpMat geo_zz = assemble_weighted_stiffness(
      vz_space_, rule_, [&](Index e, double xi) {
        return n_space_.value(s_axial, e, xi);
      });
  std::vector<Triplet> trips;
  for (Index k = 0; k < geo_zz.outerSize(); ++k)
    for (SpMat::InnerIterator it(geo_zz, k); it; ++it) {
      const Index i = full_to_red_[static_cast<size_t>(n_vx_full_ + it.row())];
      const Index j = full_to_red_[static_cast<size_t>(n_vx_full_ + it.col())];
      if (i >= 0 && j >= 0) trips.emplace_back(i, j, it.value());
    }
  const Index n = static_cast<Index>(kept_.size());
  SpMat out(n, n);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

PoissonState BeamModel::initial_state() const {
  const double a_z = params_.amplitude;
  const double k = M_PI / params_.length;
  Vector qz = vz_space_.interpolate(
      [&](double x) { return a_z * std::sin(k * x); },
      [&](double x) { return a_z * k * std::cos(k * x); });
  Vector q_full = Vector::Zero(n_vx_full_ + n_vz_full_);
  q_full.segment(n_vx_full_, n_vz_full_) = qz;
  PoissonState state;
  state.q = to_reduced(q_full);
  state.v = Vector::Zero(static_cast<Index>(kept_.size()));
  state.s = stress_from_q(state.q);
  return state;
}

std::unique_ptr<BeamModel> assemble_beam(const Mesh1D& mesh,
                                         const BeamParams& params, BeamBc bc,
                                         int quad_points) {
  return std::make_unique<BeamModel>(mesh, params, bc, quad_points);
}

std::unique_ptr<BeamModel> apply_beam_bcs(const BeamModel& model,
                                          const std::string& bc_name) {
  if (bc_name != "simply_supported")
    throw ConfigError("apply_beam_bcs: unknown boundary condition '" +
                      bc_name + "'");
  return std::make_unique<BeamModel>(model.mesh1d(), model.params(),
                                     BeamBc::SimplySupported);
}

PoissonState beam_initial_state(const BeamParams& params,
                                const BeamModel& model) {
  if (params.n_el != model.mesh1d().n_el)
    throw ConfigError("beam_initial_state: parameter/model mismatch");
  return model.initial_state();
}

} // namespace hamflex::fem1d
