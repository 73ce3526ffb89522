// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "hamflex/core/block_diag.hpp"
#include "hamflex/fem3d/elasticity.hpp"
#include "hamflex/fem3d/kernels.hpp"
#include "hamflex/integrators/run.hpp"
#include "hamflex/kernels/parallel.hpp"
#include "hamflex/kernels/spmv.hpp"

using namespace hamflex;

namespace {

struct ThreadGuard {
  ~ThreadGuard() { kernels::set_num_threads(0); }
};

Vector random_vector(Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

} // namespace

TEST_CASE("parallel kernels reproduce the serial reference bitwise") {
  ThreadGuard guard;
  fem3d::ColumnParams params;
  params.nx = params.ny = 3;
  params.nz = 6;
  params.lz = 2.0;
  const fem3d::TetMesh mesh = fem3d::build_box_mesh(3, 3, 6, 1.0, 1.0, 2.0);
  auto model = fem3d::assemble_elasticity(mesh, params, true);
  const auto& geom = model->geometry();

  const Vector q_full = 0.05 * random_vector(3 * mesh.n_vertices(), 1);
  const Vector v_full = random_vector(3 * mesh.n_vertices(), 2);
  const Vector s = random_vector(6 * mesh.n_cells(), 3);

  SUBCASE("strain loads") {
    Vector serial, parallel;
    kernels::set_num_threads(1);
    fem3d::strain_loads(geom, q_full, serial);
    Vector reference;
    fem3d::strain_loads_serial(geom, q_full, reference);
    CHECK((serial - reference).lpNorm<Eigen::Infinity>() == 0.0);
    kernels::set_num_threads(2);
    fem3d::strain_loads(geom, q_full, parallel);
    CHECK((parallel - reference).lpNorm<Eigen::Infinity>() == 0.0);
  }

  SUBCASE("coupling action and transpose") {
    Vector ser_l, par_l, ser_lt, par_lt;
    kernels::set_num_threads(1);
    fem3d::apply_l(geom, q_full, v_full, ser_l);
    fem3d::apply_lt(geom, q_full, s, ser_lt);
    kernels::set_num_threads(2);
    fem3d::apply_l(geom, q_full, v_full, par_l);
    fem3d::apply_lt(geom, q_full, s, par_lt);
    CHECK((ser_l - par_l).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((ser_lt - par_lt).lpNorm<Eigen::Infinity>() == 0.0);
  }

  SUBCASE("stiffness assembly") {
    const Vector q_red = model->to_reduced(q_full);
    kernels::set_num_threads(1);
    const SpMat k1 = model->assemble_two_point_stiffness(q_red, q_red);
    const SpMat g1 = model->assemble_geometric_stiffness(s);
    kernels::set_num_threads(2);
    const SpMat k2 = model->assemble_two_point_stiffness(q_red, q_red);
    const SpMat g2 = model->assemble_geometric_stiffness(s);
    CHECK(k1.nonZeros() == k2.nonZeros());
    CHECK(Eigen::Map<const Vector>(k1.valuePtr(), k1.nonZeros()) ==
          Eigen::Map<const Vector>(k2.valuePtr(), k2.nonZeros()));
    CHECK(Eigen::Map<const Vector>(g1.valuePtr(), g1.nonZeros()) ==
          Eigen::Map<const Vector>(g2.valuePtr(), g2.nonZeros()));
  }

  SUBCASE("angular momentum reduction") {
    kernels::set_num_threads(1);
    const Vector3 j1 = fem3d::angular_momentum_integral(
        geom, mesh.vertices, params.rho, q_full, v_full);
    kernels::set_num_threads(2);
    const Vector3 j2 = fem3d::angular_momentum_integral(
        geom, mesh.vertices, params.rho, q_full, v_full);
    CHECK(j1 == j2);
  }
}

TEST_CASE("symmetric spmv and chunked sum are thread-count independent") {
  ThreadGuard guard;
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const Index n = 4000;
  std::vector<Triplet> trips;
  for (Index i = 0; i < n; ++i) {
    trips.emplace_back(i, i, 4.0 + dist(rng));
    if (i + 1 < n) {
      const double off = dist(rng);
      trips.emplace_back(i, i + 1, off);
      trips.emplace_back(i + 1, i, off);
    }
  }
  SpMat a(n, n);
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();
  const Vector x = random_vector(n, 10);

  Vector y1, y2, y_ref;
  kernels::spmv_sym_serial(a, x, y_ref);
  kernels::set_num_threads(1);
  kernels::spmv_sym(a, x, y1);
  kernels::set_num_threads(2);
  kernels::spmv_sym(a, x, y2);
  CHECK((y1 - y_ref).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((y2 - y_ref).lpNorm<Eigen::Infinity>() == 0.0);

  const Vector data = random_vector(100000, 11);
  const double s_ref = kernels::sum_serial(data.data(), data.size());
  kernels::set_num_threads(2);
  CHECK(kernels::sum(data.data(), data.size()) == s_ref);
}

TEST_CASE("block diagonal solve is thread-count independent") {
  ThreadGuard guard;
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Matrix> blocks;
  for (int b = 0; b < 64; ++b) {
    Matrix m(6, 6);
    for (Index i = 0; i < 6; ++i)
      for (Index j = 0; j < 6; ++j) m(i, j) = dist(rng);
    blocks.push_back(m.transpose() * m + 6.0 * Matrix::Identity(6, 6));
  }
  BlockDiagMatrix m(std::move(blocks));
  const Vector rhs = random_vector(m.rows(), 5);
  Vector y1, y2;
  kernels::set_num_threads(1);
  m.solve(rhs, y1);
  kernels::set_num_threads(2);
  m.solve(rhs, y2);
  CHECK((y1 - y2).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("a full integrator step is thread-count independent") {
  ThreadGuard guard;
  fem3d::ColumnParams params;
  params.nx = params.ny = 2;
  params.nz = 4;
  params.lz = 2.0;
  const fem3d::TetMesh mesh = fem3d::build_box_mesh(2, 2, 4, 1.0, 1.0, 2.0);
  auto model = fem3d::assemble_elasticity(mesh, params, true);
  const PoissonState initial = fem3d::column_initial_state(params, *model);

  auto run_energy = [&](int threads) {
    kernels::set_num_threads(threads);
    SchemeConfig cfg;
    cfg.dt = params.dt_base() / 4.0;
    cfg.t_end = 20 * cfg.dt;
    cfg.scheme = Scheme::LinearlyImplicit;
    return run(*model, cfg, initial).energy;
  };
  const auto e1 = run_energy(1);
  const auto e2 = run_energy(2);
  REQUIRE(e1.size() == e2.size());
  for (size_t i = 0; i < e1.size(); ++i) CHECK(e1[i] == e2[i]);
}
