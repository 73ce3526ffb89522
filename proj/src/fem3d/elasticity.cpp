// SPDX-License-Identifier: Apache-2.0

#include "hamflex/fem3d/elasticity.hpp"

#include <algorithm>

#include "hamflex/error.hpp"
#include "hamflex/kernels/parallel.hpp"

namespace hamflex::fem3d {

void ColumnParams::validate() const {
  if (!(rho > 0.0) || !(e_mod > 0.0))
    throw ConfigError("ColumnParams: rho and E must be positive");
  if (!(nu > -1.0) || nu >= 0.5)
    throw ConfigError("ColumnParams: nu must lie in (-1, 0.5)");
  if (nx < 1 || ny < 1 || nz < 1 || !(lx > 0.0) || !(ly > 0.0) || !(lz > 0.0))
    throw ConfigError("ColumnParams: invalid geometry");
}

ElasticityModel::ElasticityModel(TetMesh mesh,
                                 const SaintVenantMaterial& material,
                                 double rho, bool clamped)
    : mesh_(std::move(mesh)), geom_(compute_geometry(mesh_)),
      material_(material), k_mandel_(material.stiffness()), rho_(rho),
      clamped_(clamped) {
  const Index nv_full = 3 * mesh_.n_vertices();
  std::vector<bool> drop(static_cast<size_t>(nv_full), false);
  if (clamped_)
    for (Index v : mesh_.base_vertices)
      for (int c = 0; c < 3; ++c) drop[static_cast<size_t>(3 * v + c)] = true;

  full_to_red_.assign(static_cast<size_t>(nv_full), -1);
  for (Index i = 0; i < nv_full; ++i)
    if (!drop[static_cast<size_t>(i)]) {
      full_to_red_[static_cast<size_t>(i)] = static_cast<Index>(kept_.size());
      kept_.push_back(i);
    }
  const Index n_red = static_cast<Index>(kept_.size());

  // Fixed vertex-block sparsity shared by the condensed operator, the
  // geometric stiffness and the mass.
  {
    std::vector<std::pair<Index, Index>> entries; // (col, row)
    entries.reserve(geom_.cells.size() * 144);
    for (const auto& cell : geom_.cells)
      for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 3; ++i) {
          const Index gi = full_to_red_[static_cast<size_t>(
              3 * cell[static_cast<size_t>(a)] + i)];
          if (gi < 0) continue;
          for (int b = 0; b < 4; ++b)
            for (int j = 0; j < 3; ++j) {
              const Index gj = full_to_red_[static_cast<size_t>(
                  3 * cell[static_cast<size_t>(b)] + j)];
              if (gj >= 0) entries.emplace_back(gj, gi);
            }
        }
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    std::vector<Triplet> trips;
    trips.reserve(entries.size());
    for (const auto& e : entries) trips.emplace_back(e.second, e.first, 0.0);
    pattern_.resize(n_red, n_red);
    pattern_.setFromTriplets(trips.begin(), trips.end());
    pattern_.makeCompressed();
  }

  // Slot sources: which (cell, local i, local j) add into each stored
  // entry, in ascending cell order.
  {
    const Index nnz = pattern_.nonZeros();
    auto slot_of = [&](Index row, Index col) {
      const auto* outer = pattern_.outerIndexPtr();
      const auto* inner = pattern_.innerIndexPtr();
      auto lo = inner + outer[col];
      auto hi = inner + outer[col + 1];
      auto it = std::lower_bound(lo, hi, row);
      return static_cast<Index>(outer[col] + (it - lo));
    };
    std::vector<Index> counts(static_cast<size_t>(nnz), 0);
    for (const auto& cell : geom_.cells)
      for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 3; ++i) {
          const Index gi = full_to_red_[static_cast<size_t>(
              3 * cell[static_cast<size_t>(a)] + i)];
          if (gi < 0) continue;
          for (int b = 0; b < 4; ++b)
            for (int j = 0; j < 3; ++j) {
              const Index gj = full_to_red_[static_cast<size_t>(
                  3 * cell[static_cast<size_t>(b)] + j)];
              if (gj >= 0) ++counts[static_cast<size_t>(slot_of(gi, gj))];
            }
        }
    slot_offsets_.assign(static_cast<size_t>(nnz) + 1, 0);
    for (Index s = 0; s < nnz; ++s)
      slot_offsets_[static_cast<size_t>(s + 1)] =
          slot_offsets_[static_cast<size_t>(s)] + counts[static_cast<size_t>(s)];
    src_cell_.resize(static_cast<size_t>(slot_offsets_.back()));
    src_ij_.resize(src_cell_.size());
    std::vector<Index> cursor(slot_offsets_.begin(), slot_offsets_.end() - 1);
    for (size_t c = 0; c < geom_.cells.size(); ++c) {
      const auto& cell = geom_.cells[c];
      for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 3; ++i) {
          const Index gi = full_to_red_[static_cast<size_t>(
              3 * cell[static_cast<size_t>(a)] + i)];
          if (gi < 0) continue;
          for (int b = 0; b < 4; ++b)
            for (int j = 0; j < 3; ++j) {
              const Index gj = full_to_red_[static_cast<size_t>(
                  3 * cell[static_cast<size_t>(b)] + j)];
              if (gj < 0) continue;
              const Index slot = slot_of(gi, gj);
              const Index pos = cursor[static_cast<size_t>(slot)]++;
              src_cell_[static_cast<size_t>(pos)] = static_cast<Index>(c);
              src_ij_[static_cast<size_t>(pos)] =
                  (3 * a + i) * 12 + (3 * b + j);
            }
        }
    }
  }

  // Consistent P1 vector mass, rho V / 20 (1 + delta_ab) per component.
  {
    std::vector<Triplet> trips;
    trips.reserve(geom_.cells.size() * 48);
    for (size_t c = 0; c < geom_.cells.size(); ++c) {
      const auto& cell = geom_.cells[c];
      const double scale = rho_ * geom_.volumes[c] / 20.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const double val = scale * (a == b ? 2.0 : 1.0);
          for (int i = 0; i < 3; ++i) {
            const Index gi = full_to_red_[static_cast<size_t>(
                3 * cell[static_cast<size_t>(a)] + i)];
            const Index gj = full_to_red_[static_cast<size_t>(
                3 * cell[static_cast<size_t>(b)] + i)];
            if (gi >= 0 && gj >= 0) trips.emplace_back(gi, gj, val);
          }
        }
    }
    SpMat m_rho(n_red, n_red);
    m_rho.setFromTriplets(trips.begin(), trips.end());

    const Matrix6 compliance = material_.compliance();
    std::vector<Matrix> blocks(geom_.cells.size());
    for (size_t c = 0; c < geom_.cells.size(); ++c)
      blocks[c] = geom_.volumes[c] * compliance;
    mass_ = BlockMass(std::move(m_rho), BlockDiagMatrix(std::move(blocks)),
                      /*dof_block_size=*/3);
  }

  // Spec-level coupling view: constant block L(0) plus the part linear
  // in q. Production paths use the cell-wise overrides instead.
  const Index n_s = 6 * static_cast<Index>(geom_.cells.size());
  coupling_ = CouplingOperator(
      n_s, n_red,
      {assemble_coupling_sparse(Vector::Zero(3 * mesh_.n_vertices()), true)},
      [this](const Vector& q) {
        return assemble_coupling_sparse(to_full(q), false);
      });
}

Vector ElasticityModel::to_full(const Vector& reduced) const {
  Vector full = Vector::Zero(3 * mesh_.n_vertices());
  for (size_t i = 0; i < kept_.size(); ++i)
    full[kept_[i]] = reduced[static_cast<Index>(i)];
  return full;
}

Vector ElasticityModel::to_reduced(const Vector& full) const {
  Vector red(static_cast<Index>(kept_.size()));
  for (size_t i = 0; i < kept_.size(); ++i)
    red[static_cast<Index>(i)] = full[kept_[i]];
  return red;
}

void ElasticityModel::apply_coupling(const Vector& q, const Vector& v,
                                     Vector& out) const {
  apply_l(geom_, to_full(q), to_full(v), out);
}

void ElasticityModel::apply_coupling_transpose(const Vector& q,
                                               const Vector& s,
                                               Vector& out) const {
  Vector full;
  apply_lt(geom_, to_full(q), s, full);
  out = to_reduced(full);
}

SpMat ElasticityModel::assemble_coupling_sparse(const Vector& q_full,
                                                bool include_identity) const {
  std::vector<Triplet> trips;
  trips.reserve(geom_.cells.size() * 72);
  const Index nc = static_cast<Index>(geom_.cells.size());
  for (Index c = 0; c < nc; ++c) {
    Matrix6x12 b;
    if (include_identity) {
      b = cell_coupling(geom_, c, q_full);
    } else {
      // Pure q-part: the coupling is affine in the deformation, so
      // evaluate it with F replaced by grad q.
      const auto& cell = geom_.cells[static_cast<size_t>(c)];
      const auto& g = geom_.grads[static_cast<size_t>(c)];
      Matrix3 grad_q = Matrix3::Zero();
      for (int a = 0; a < 4; ++a) {
        const Index base = 3 * cell[static_cast<size_t>(a)];
        grad_q.noalias() +=
            Vector3(q_full[base], q_full[base + 1], q_full[base + 2]) *
            g.col(a).transpose();
      }
      const double vol = geom_.volumes[static_cast<size_t>(c)];
      for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 3; ++i) {
          const Vector3 fi = grad_q.row(i).transpose();
          const Vector3 ga = g.col(a);
          Vector6 col;
          col << fi[0] * ga[0], fi[1] * ga[1], fi[2] * ga[2],
              kSqrt2 * 0.5 * (fi[1] * ga[2] + fi[2] * ga[1]),
              kSqrt2 * 0.5 * (fi[0] * ga[2] + fi[2] * ga[0]),
              kSqrt2 * 0.5 * (fi[0] * ga[1] + fi[1] * ga[0]);
          b.col(3 * a + i) = vol * col;
        }
    }
    const auto& cell = geom_.cells[static_cast<size_t>(c)];
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 3; ++i) {
        const Index col = full_to_red_[static_cast<size_t>(
            3 * cell[static_cast<size_t>(a)] + i)];
        if (col < 0) continue;
        for (int r = 0; r < 6; ++r)
          trips.emplace_back(6 * c + r, col, b(r, 3 * a + i));
      }
  }
  SpMat out(6 * nc, static_cast<Index>(kept_.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SpMat ElasticityModel::assemble_coupling(const Vector& q) const {
  return assemble_coupling_sparse(to_full(q), true);
}

Vector ElasticityModel::strain_projection(const Vector& q) const {
  Vector g;
  strain_loads(geom_, to_full(q), g);
  return g;
}

SpMat ElasticityModel::assemble_cell_blocks(
    const std::vector<Matrix12>& blocks) const {
  SpMat out = pattern_;
  double* vals = out.valuePtr();
  const Index nnz = out.nonZeros();
  const bool parallel = kernels::parallel_enabled() && nnz >= 4096;
#pragma omp parallel for schedule(static) if (parallel) \
    num_threads(kernels::num_threads())
  for (Index s = 0; s < nnz; ++s) {
    double acc = 0.0;
    for (Index p = slot_offsets_[static_cast<size_t>(s)];
         p < slot_offsets_[static_cast<size_t>(s) + 1]; ++p) {
      const int ij = src_ij_[static_cast<size_t>(p)];
      acc += blocks[static_cast<size_t>(src_cell_[static_cast<size_t>(p)])](
          ij / 12, ij % 12);
    }
    vals[s] = acc;
  }
  return out;
}

SpMat ElasticityModel::assemble_two_point_stiffness(
    const Vector& q_left, const Vector& q_right) const {
  std::vector<Matrix12> blocks;
  const Vector ql = to_full(q_left);
  // Preserve pointer equality for the symmetric one-point case.
  if (&q_left == &q_right || q_left == q_right) {
    cell_stiffness_blocks(geom_, k_mandel_, ql, ql, blocks);
  } else {
    const Vector qr = to_full(q_right);
    cell_stiffness_blocks(geom_, k_mandel_, ql, qr, blocks);
  }
  return assemble_cell_blocks(blocks);
}

SpMat ElasticityModel::assemble_geometric_stiffness(const Vector& s) const {
  std::vector<Matrix12> blocks;
  cell_geometric_blocks(geom_, s, blocks);
  return assemble_cell_blocks(blocks);
}

std::unique_ptr<ElasticityModel> assemble_elasticity(const TetMesh& mesh,
                                                     const ColumnParams& params,
                                                     bool clamped) {
  params.validate();
  return std::make_unique<ElasticityModel>(
      mesh, saint_venant_material(params.mu(), params.lambda()), params.rho,
      clamped);
}

PoissonState column_initial_state(const ColumnParams& params,
                                  const ElasticityModel& model) {
  const TetMesh& mesh = model.mesh();
  Vector v_full = Vector::Zero(3 * mesh.n_vertices());
  for (Index v = 0; v < mesh.n_vertices(); ++v)
    v_full[3 * v] = 5.0 / 3.0 * mesh.vertices[static_cast<size_t>(v)][2];
  PoissonState state;
  state.v = model.to_reduced(v_full);
  state.q = Vector::Zero(state.v.size());
  state.s = Vector::Zero(model.stress_dim());
  (void)params;
  return state;
}

Vector3 angular_momentum(const ElasticityModel& model,
                         const PoissonState& state) {
  if (!state.finite()) throw ConfigError("angular_momentum: non-finite state");
  return angular_momentum_integral(model.geometry(), model.mesh().vertices,
                                   model.rho(), model.to_full(state.q),
                                   model.to_full(state.v));
}

} // namespace hamflex::fem3d
