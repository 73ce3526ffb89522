// SPDX-License-Identifier: Apache-2.0

#include <complex>
#include <random>

#include "doctest.h"
#include "hamflex/core/cayley.hpp"
#include "hamflex/core/system.hpp"
#include "hamflex/error.hpp"
#include "hamflex/fem1d/beam.hpp"
#include "hamflex/fem3d/elasticity.hpp"
#include "hamflex/models/duffing.hpp"

using namespace hamflex;

namespace {

Vector random_vector(Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

Matrix random_spd_dense(Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = dist(rng);
  return a.transpose() * a + static_cast<double>(n) * Matrix::Identity(n, n);
}

Matrix random_skew_dense(Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = dist(rng);
  return a - a.transpose();
}

void check_skew_property(const Model& model, std::mt19937& rng, int draws) {
  const Index nv = model.velocity_dim();
  const Index ns = model.stress_dim();
  for (int d = 0; d < draws; ++d) {
    const Vector q = random_vector(nv, rng);
    const Vector v = random_vector(nv, rng);
    const Vector s = random_vector(ns, rng);
    Vector dv, ds;
    apply_j(model, q, v, s, dv, ds);
    const double quad = v.dot(dv) + s.dot(ds); // x . J(q) x
    const double x_norm = std::sqrt(v.squaredNorm() + s.squaredNorm());
    const double jx_norm = std::sqrt(dv.squaredNorm() + ds.squaredNorm());
    CHECK(std::abs(quad) <= 1e-12 * x_norm * jx_norm);
  }
}

} // namespace

TEST_CASE("energy of the zero state is zero and scales quadratically") {
  DuffingParams params;
  auto model = duffing_system(params);
  PoissonState zero{Vector::Zero(1), Vector::Zero(1), Vector::Zero(2)};
  CHECK(energy(model->mass(), zero) == 0.0);

  std::mt19937 rng(5);
  PoissonState st{Vector::Zero(1), random_vector(1, rng),
                  random_vector(2, rng)};
  const double base = energy(model->mass(), st);
  CHECK(base > 0.0);
  PoissonState doubled{st.q, 2.0 * st.v, 2.0 * st.s};
  CHECK(energy(model->mass(), doubled) ==
        doctest::Approx(4.0 * base).epsilon(1e-14));

  PoissonState stress_only{st.q, Vector::Zero(1), st.s};
  PoissonState stress_double{st.q, Vector::Zero(1), 2.0 * st.s};
  CHECK(energy(model->mass(), stress_double) ==
        doctest::Approx(4.0 * energy(model->mass(), stress_only))
            .epsilon(1e-14));
}

TEST_CASE("energy of the reference initial state is 13000") {
  DuffingParams params;
  auto model = duffing_system(params);
  PoissonState st;
  st.q = Vector::Constant(1, params.q0);
  st.v = Vector::Zero(1);
  st.s = Vector(2);
  st.s << 50.0, 250.0;
  CHECK(energy(model->mass(), st) == doctest::Approx(13000.0).epsilon(1e-14));
}

TEST_CASE("energy rejects mismatched dimensions") {
  DuffingParams params;
  auto model = duffing_system(params);
  PoissonState bad{Vector::Zero(1), Vector::Zero(2), Vector::Zero(2)};
  CHECK_THROWS_AS(energy(model->mass(), bad), ConfigError);
}

TEST_CASE("apply_j on the zero vector vanishes") {
  DuffingParams params;
  auto model = duffing_system(params);
  Vector dv, ds;
  apply_j(*model, Vector::Constant(1, 3.0), Vector::Zero(1), Vector::Zero(2),
          dv, ds);
  CHECK(dv.norm() == 0.0);
  CHECK(ds.norm() == 0.0);
}

TEST_CASE("apply_j matches the hand evaluation at q = 0") {
  // J(0) = [[0, -2, 0], [2, 0, 0], [0, 0, 0]], x = (1, 1, 1).
  DuffingParams params;
  auto model = duffing_system(params);
  Vector dv, ds;
  apply_j(*model, Vector::Zero(1), Vector::Ones(1), Vector::Ones(2), dv, ds);
  CHECK(dv[0] == doctest::Approx(-2.0));
  CHECK(ds[0] == doctest::Approx(2.0));
  CHECK(ds[1] == 0.0);
}

TEST_CASE("x . J(q) x vanishes for random draws on all three models") {
  std::mt19937 rng(99);

  DuffingParams dparams;
  auto duffing = duffing_system(dparams);
  check_skew_property(*duffing, rng, 1000);

  fem1d::Mesh1D mesh{6, 1.0};
  fem1d::BeamParams bparams;
  bparams.n_el = 6;
  auto beam = fem1d::assemble_beam(mesh, bparams, fem1d::BeamBc::SimplySupported);
  check_skew_property(*beam, rng, 1000);

  fem3d::ColumnParams cparams;
  cparams.nx = cparams.ny = 1;
  cparams.nz = 2;
  cparams.lz = 2.0;
  auto column = fem3d::assemble_elasticity(
      fem3d::build_box_mesh(1, 1, 2, 1.0, 1.0, 2.0), cparams, true);
  check_skew_property(*column, rng, 1000);
}

TEST_CASE("cayley spectrum of J = 0 is identically one") {
  std::mt19937 rng(3);
  const Matrix h = random_spd_dense(6, rng);
  const Matrix j = Matrix::Zero(6, 6);
  for (const auto& ev : cayley_spectrum(h, j, 0.25)) {
    CHECK(ev.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ev.imag()) < 1e-12);
  }
}

TEST_CASE("cayley spectrum of the 2x2 rotation block is the closed form") {
  const double omega = 3.0;
  const double dt = 0.1;
  Matrix h = Matrix::Identity(2, 2);
  Matrix j(2, 2);
  j << 0.0, -omega, omega, 0.0;
  const auto spectrum = cayley_spectrum(h, j, dt);
  // (1 +- i w dt/2) / (1 -+ i w dt/2)
  const std::complex<double> iwdt(0.0, 0.5 * omega * dt);
  const std::complex<double> expected = (1.0 + iwdt) / (1.0 - iwdt);
  bool found_plus = false, found_minus = false;
  for (const auto& ev : spectrum) {
    if (std::abs(ev - expected) < 1e-13) found_plus = true;
    if (std::abs(ev - std::conj(expected)) < 1e-13) found_minus = true;
    CHECK(std::abs(std::abs(ev) - 1.0) < 1e-14);
  }
  CHECK(found_plus);
  CHECK(found_minus);
}

TEST_CASE("cayley spectrum has unit modulus for random systems") {
  std::mt19937 rng(17);
  for (Index n : {10, 25, 50}) {
    const Matrix h = random_spd_dense(n, rng);
    const Matrix j = random_skew_dense(n, rng);
    for (const auto& ev : cayley_spectrum(h, j, 0.1))
      CHECK(std::abs(std::abs(ev) - 1.0) <= 1e-10);
  }
}

TEST_CASE("cayley transition preserves the H norm") {
  // Independent of the eigenvalue route: |Cay x|_H = |x|_H.
  std::mt19937 rng(31);
  const Matrix h = random_spd_dense(12, rng);
  const Matrix j = random_skew_dense(12, rng);
  const Matrix cay = cayley_transition(h, j, 0.05);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = random_vector(12, rng);
    const Vector y = cay * x;
    CHECK(y.dot(h * y) == doctest::Approx(x.dot(h * x)).epsilon(1e-11));
  }
}

TEST_CASE("H - (dt/2) J stays invertible for a range of time steps") {
  std::mt19937 rng(57);
  for (double dt : {1e-6, 1e-2, 1.0, 100.0, 1e6}) {
    const Matrix h = random_spd_dense(15, rng);
    const Matrix j = random_skew_dense(15, rng);
    const Matrix cay = cayley_transition(h, j, dt);
    CHECK(cay.allFinite());
  }
}

TEST_CASE("dense J materialization is skew-symmetric") {
  DuffingParams params;
  auto model = duffing_system(params);
  std::mt19937 rng(71);
  const Vector q = random_vector(1, rng);
  const Matrix j = dense_j(*model, q);
  CHECK((j + j.transpose()).lpNorm<Eigen::Infinity>() < 1e-14);
  CHECK(j(0, 1) == doctest::Approx(-2.0));
  CHECK(j(0, 2) == doctest::Approx(-2.0 * q[0]));
}
