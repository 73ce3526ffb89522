// SPDX-License-Identifier: Apache-2.0

#include "hamflex/fem3d/kernels.hpp"

#include "hamflex/error.hpp"
#include "hamflex/kernels/parallel.hpp"

namespace hamflex::fem3d {

namespace {

inline Matrix3 deformation_gradient(const MeshGeometry& geom, Index cell,
                                    const Vector& q_full) {
  const auto& vs = geom.cells[static_cast<size_t>(cell)];
  const auto& g = geom.grads[static_cast<size_t>(cell)];
  Matrix3 grad_q = Matrix3::Zero();
  for (int a = 0; a < 4; ++a) {
    const Index base = 3 * vs[static_cast<size_t>(a)];
    grad_q.noalias() +=
        Vector3(q_full[base], q_full[base + 1], q_full[base + 2]) *
        g.col(a).transpose();
  }
  return Matrix3::Identity() + grad_q;
}

inline Vector6 mandel_sym_outer(const Vector3& f, const Vector3& g) {
  // to_mandel(sym(f g^T))
  Vector6 v;
  v << f[0] * g[0], f[1] * g[1], f[2] * g[2],
      kSqrt2 * 0.5 * (f[1] * g[2] + f[2] * g[1]),
      kSqrt2 * 0.5 * (f[0] * g[2] + f[2] * g[0]),
      kSqrt2 * 0.5 * (f[0] * g[1] + f[1] * g[0]);
  return v;
}

inline Matrix6x12 coupling_matrix(const MeshGeometry& geom, Index cell,
                                  const Matrix3& f, double volume) {
  const auto& g = geom.grads[static_cast<size_t>(cell)];
  Matrix6x12 b;
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 3; ++i)
      b.col(3 * a + i) =
          volume * mandel_sym_outer(f.row(i).transpose(), g.col(a));
  return b;
}

} // namespace

MeshGeometry compute_geometry(const TetMesh& mesh) {
  MeshGeometry geom;
  geom.n_vertices = mesh.n_vertices();
  geom.cells = mesh.tets;
  geom.grads.resize(mesh.tets.size());
  geom.volumes.resize(mesh.tets.size());
  for (size_t c = 0; c < mesh.tets.size(); ++c) {
    const auto& t = mesh.tets[c];
    const Vector3& p0 = mesh.vertices[static_cast<size_t>(t[0])];
    Matrix3 edges;
    for (int a = 0; a < 3; ++a)
      edges.col(a) = mesh.vertices[static_cast<size_t>(t[a + 1])] - p0;
    const double det = edges.determinant();
    if (det <= 0.0)
      throw MeshError("compute_geometry: non-positive cell volume");
    geom.volumes[c] = det / 6.0;
    const Matrix3 inv_t = edges.inverse().transpose();
    // grad lambda_{a+1} = columns of inv_t; grad lambda_0 = -sum
    Eigen::Matrix<double, 3, 4> g;
    g.col(1) = inv_t.col(0);
    g.col(2) = inv_t.col(1);
    g.col(3) = inv_t.col(2);
    g.col(0) = -(g.col(1) + g.col(2) + g.col(3));
    geom.grads[c] = g;
  }

  // Vertex incidence in ascending cell order.
  std::vector<Index> counts(static_cast<size_t>(geom.n_vertices), 0);
  for (const auto& t : geom.cells)
    for (Index v : t) ++counts[static_cast<size_t>(v)];
  geom.incidence_offsets.assign(static_cast<size_t>(geom.n_vertices) + 1, 0);
  for (Index v = 0; v < geom.n_vertices; ++v)
    geom.incidence_offsets[static_cast<size_t>(v + 1)] =
        geom.incidence_offsets[static_cast<size_t>(v)] +
        counts[static_cast<size_t>(v)];
  geom.incidence_cell.resize(
      static_cast<size_t>(geom.incidence_offsets.back()));
  geom.incidence_local.resize(geom.incidence_cell.size());
  std::vector<Index> cursor(geom.incidence_offsets.begin(),
                            geom.incidence_offsets.end() - 1);
  for (size_t c = 0; c < geom.cells.size(); ++c)
    for (int a = 0; a < 4; ++a) {
      const Index v = geom.cells[c][static_cast<size_t>(a)];
      const Index slot = cursor[static_cast<size_t>(v)]++;
      geom.incidence_cell[static_cast<size_t>(slot)] = static_cast<Index>(c);
      geom.incidence_local[static_cast<size_t>(slot)] = a;
    }
  return geom;
}

Matrix6x12 cell_coupling(const MeshGeometry& geom, Index cell,
                         const Vector& q_full) {
  const Matrix3 f = deformation_gradient(geom, cell, q_full);
  return coupling_matrix(geom, cell, f,
                         geom.volumes[static_cast<size_t>(cell)]);
}

void strain_loads_serial(const MeshGeometry& geom, const Vector& q_full,
                         Vector& g) {
  const Index nc = static_cast<Index>(geom.cells.size());
  g.resize(6 * nc);
  for (Index c = 0; c < nc; ++c) {
    const Matrix3 f = deformation_gradient(geom, c, q_full);
    const Matrix3 e = 0.5 * (f.transpose() * f - Matrix3::Identity());
    g.segment<6>(6 * c) = geom.volumes[static_cast<size_t>(c)] * to_mandel(e);
  }
}

void strain_loads(const MeshGeometry& geom, const Vector& q_full, Vector& g) {
  if (!kernels::parallel_enabled() || geom.cells.size() < 512) {
    strain_loads_serial(geom, q_full, g);
    return;
  }
  const Index nc = static_cast<Index>(geom.cells.size());
  g.resize(6 * nc);
#pragma omp parallel for schedule(static) num_threads(kernels::num_threads())
  for (Index c = 0; c < nc; ++c) {
    const Matrix3 f = deformation_gradient(geom, c, q_full);
    const Matrix3 e = 0.5 * (f.transpose() * f - Matrix3::Identity());
    g.segment<6>(6 * c) = geom.volumes[static_cast<size_t>(c)] * to_mandel(e);
  }
}

void apply_l_serial(const MeshGeometry& geom, const Vector& q_full,
                    const Vector& v_full, Vector& out) {
  const Index nc = static_cast<Index>(geom.cells.size());
  out.resize(6 * nc);
  for (Index c = 0; c < nc; ++c) {
    const Matrix6x12 b = cell_coupling(geom, c, q_full);
    Eigen::Matrix<double, 12, 1> v_local;
    const auto& vs = geom.cells[static_cast<size_t>(c)];
    for (int a = 0; a < 4; ++a)
      v_local.segment<3>(3 * a) = v_full.segment<3>(3 * vs[static_cast<size_t>(a)]);
    out.segment<6>(6 * c).noalias() = b * v_local;
  }
}

void apply_l(const MeshGeometry& geom, const Vector& q_full,
             const Vector& v_full, Vector& out) {
  if (!kernels::parallel_enabled() || geom.cells.size() < 512) {
    apply_l_serial(geom, q_full, v_full, out);
    return;
  }
  const Index nc = static_cast<Index>(geom.cells.size());
  out.resize(6 * nc);
#pragma omp parallel for schedule(static) num_threads(kernels::num_threads())
  for (Index c = 0; c < nc; ++c) {
    const Matrix6x12 b = cell_coupling(geom, c, q_full);
    Eigen::Matrix<double, 12, 1> v_local;
    const auto& vs = geom.cells[static_cast<size_t>(c)];
    for (int a = 0; a < 4; ++a)
      v_local.segment<3>(3 * a) = v_full.segment<3>(3 * vs[static_cast<size_t>(a)]);
    out.segment<6>(6 * c).noalias() = b * v_local;
  }
}

namespace {
// Phase A of the transpose: per-cell 12-vectors b^T s_cell.
void lt_cell_phase(const MeshGeometry& geom, const Vector& q_full,
                   const Vector& s, std::vector<double>& cell_contrib,
                   bool parallel) {
  const Index nc = static_cast<Index>(geom.cells.size());
  cell_contrib.resize(static_cast<size_t>(12 * nc));
#pragma omp parallel for schedule(static) if (parallel) \
    num_threads(kernels::num_threads())
  for (Index c = 0; c < nc; ++c) {
    const Matrix6x12 b = cell_coupling(geom, c, q_full);
    Eigen::Map<Eigen::Matrix<double, 12, 1>> dest(
        cell_contrib.data() + 12 * c);
    dest.noalias() = b.transpose() * s.segment<6>(6 * c);
  }
}

// Phase B: vertex-indexed gather, cells visited in ascending order.
void lt_gather_phase(const MeshGeometry& geom,
                     const std::vector<double>& cell_contrib, Vector& out,
                     bool parallel) {
  const Index nv = geom.n_vertices;
  out.resize(3 * nv);
#pragma omp parallel for schedule(static) if (parallel) \
    num_threads(kernels::num_threads())
  for (Index v = 0; v < nv; ++v) {
    double acc[3] = {0.0, 0.0, 0.0};
    for (Index p = geom.incidence_offsets[static_cast<size_t>(v)];
         p < geom.incidence_offsets[static_cast<size_t>(v) + 1]; ++p) {
      const Index c = geom.incidence_cell[static_cast<size_t>(p)];
      const int a = geom.incidence_local[static_cast<size_t>(p)];
      const double* src = cell_contrib.data() + 12 * c + 3 * a;
      acc[0] += src[0];
      acc[1] += src[1];
      acc[2] += src[2];
    }
    out[3 * v] = acc[0];
    out[3 * v + 1] = acc[1];
    out[3 * v + 2] = acc[2];
  }
}
} // namespace

void apply_lt_serial(const MeshGeometry& geom, const Vector& q_full,
                     const Vector& s, Vector& out) {
  std::vector<double> contrib;
  lt_cell_phase(geom, q_full, s, contrib, false);
  lt_gather_phase(geom, contrib, out, false);
}

void apply_lt(const MeshGeometry& geom, const Vector& q_full, const Vector& s,
              Vector& out) {
  const bool parallel =
      kernels::parallel_enabled() && geom.cells.size() >= 512;
  std::vector<double> contrib;
  lt_cell_phase(geom, q_full, s, contrib, parallel);
  lt_gather_phase(geom, contrib, out, parallel);
}

void cell_stiffness_blocks_serial(const MeshGeometry& geom,
                                  const Matrix6& k_mandel,
                                  const Vector& ql_full, const Vector& qr_full,
                                  std::vector<Matrix12>& out) {
  const Index nc = static_cast<Index>(geom.cells.size());
  out.resize(static_cast<size_t>(nc));
  const bool same = &ql_full == &qr_full;
  for (Index c = 0; c < nc; ++c) {
    const double inv_v = 1.0 / geom.volumes[static_cast<size_t>(c)];
    const Matrix6x12 bl = cell_coupling(geom, c, ql_full);
    const Matrix6x12 br = same ? bl : cell_coupling(geom, c, qr_full);
    out[static_cast<size_t>(c)].noalias() =
        inv_v * bl.transpose() * k_mandel * br;
  }
}

void cell_stiffness_blocks(const MeshGeometry& geom, const Matrix6& k_mandel,
                           const Vector& ql_full, const Vector& qr_full,
                           std::vector<Matrix12>& out) {
  if (!kernels::parallel_enabled() || geom.cells.size() < 512) {
    cell_stiffness_blocks_serial(geom, k_mandel, ql_full, qr_full, out);
    return;
  }
  const Index nc = static_cast<Index>(geom.cells.size());
  out.resize(static_cast<size_t>(nc));
  const bool same = &ql_full == &qr_full;
#pragma omp parallel for schedule(static) num_threads(kernels::num_threads())
  for (Index c = 0; c < nc; ++c) {
    const double inv_v = 1.0 / geom.volumes[static_cast<size_t>(c)];
    const Matrix6x12 bl = cell_coupling(geom, c, ql_full);
    const Matrix6x12 br = same ? bl : cell_coupling(geom, c, qr_full);
    out[static_cast<size_t>(c)].noalias() =
        inv_v * bl.transpose() * k_mandel * br;
  }
}

namespace {
inline Matrix12 geometric_block(const MeshGeometry& geom, Index c,
                                const Vector& s) {
  const Matrix3 stress = from_mandel(s.segment<6>(6 * c));
  const auto& g = geom.grads[static_cast<size_t>(c)];
  const double v = geom.volumes[static_cast<size_t>(c)];
  Matrix12 out = Matrix12::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double val = v * g.col(a).dot(stress * g.col(b));
      out(3 * a, 3 * b) = val;
      out(3 * a + 1, 3 * b + 1) = val;
      out(3 * a + 2, 3 * b + 2) = val;
    }
  return out;
}
} // namespace

void cell_geometric_blocks_serial(const MeshGeometry& geom, const Vector& s,
                                  std::vector<Matrix12>& out) {
  const Index nc = static_cast<Index>(geom.cells.size());
  out.resize(static_cast<size_t>(nc));
  for (Index c = 0; c < nc; ++c)
    out[static_cast<size_t>(c)] = geometric_block(geom, c, s);
}

void cell_geometric_blocks(const MeshGeometry& geom, const Vector& s,
                           std::vector<Matrix12>& out) {
  if (!kernels::parallel_enabled() || geom.cells.size() < 512) {
    cell_geometric_blocks_serial(geom, s, out);
    return;
  }
  const Index nc = static_cast<Index>(geom.cells.size());
  out.resize(static_cast<size_t>(nc));
#pragma omp parallel for schedule(static) num_threads(kernels::num_threads())
  for (Index c = 0; c < nc; ++c)
    out[static_cast<size_t>(c)] = geometric_block(geom, c, s);
}

Vector3 angular_momentum_integral(const MeshGeometry& geom,
                                  const std::vector<Vector3>& vertices,
                                  double rho, const Vector& q_full,
                                  const Vector& v_full) {
  // Keast degree-3 rule: centroid with weight -4/5 plus four points
  // (1/2, 1/6, 1/6, 1/6) with weight 9/20.
  static const double pts[5][4] = {
      {0.25, 0.25, 0.25, 0.25},
      {0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0},
      {1.0 / 6.0, 0.5, 1.0 / 6.0, 1.0 / 6.0},
      {1.0 / 6.0, 1.0 / 6.0, 0.5, 1.0 / 6.0},
      {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.5}};
  static const double wts[5] = {-0.8, 0.45, 0.45, 0.45, 0.45};

  const Index nc = static_cast<Index>(geom.cells.size());
  std::vector<double> jx(static_cast<size_t>(nc)), jy(static_cast<size_t>(nc)),
      jz(static_cast<size_t>(nc));
  const bool parallel =
      kernels::parallel_enabled() && geom.cells.size() >= 512;
#pragma omp parallel for schedule(static) if (parallel) \
    num_threads(kernels::num_threads())
  for (Index c = 0; c < nc; ++c) {
    const auto& vs = geom.cells[static_cast<size_t>(c)];
    Vector3 acc = Vector3::Zero();
    for (int qp = 0; qp < 5; ++qp) {
      Vector3 r = Vector3::Zero();
      Vector3 vel = Vector3::Zero();
      for (int a = 0; a < 4; ++a) {
        const double lam = pts[qp][a];
        const Index vtx = vs[static_cast<size_t>(a)];
        r += lam * (vertices[static_cast<size_t>(vtx)] +
                    Vector3(q_full[3 * vtx], q_full[3 * vtx + 1],
                            q_full[3 * vtx + 2]));
        vel += lam * Vector3(v_full[3 * vtx], v_full[3 * vtx + 1],
                             v_full[3 * vtx + 2]);
      }
      acc += wts[qp] * r.cross(vel);
    }
    acc *= rho * geom.volumes[static_cast<size_t>(c)];
    jx[static_cast<size_t>(c)] = acc[0];
    jy[static_cast<size_t>(c)] = acc[1];
    jz[static_cast<size_t>(c)] = acc[2];
  }
  // Fixed-order reduction.
  Vector3 j = Vector3::Zero();
  for (Index c = 0; c < nc; ++c) {
    j[0] += jx[static_cast<size_t>(c)];
    j[1] += jy[static_cast<size_t>(c)];
    j[2] += jz[static_cast<size_t>(c)];
  }
  return j;
}

} // namespace hamflex::fem3d
