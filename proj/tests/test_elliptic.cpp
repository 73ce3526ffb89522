// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "hamflex/error.hpp"
#include "hamflex/models/duffing.hpp"
#include "hamflex/models/elliptic.hpp"

using namespace hamflex;

namespace {

// Quadrature oracle for K(m): 64-point Gauss on [0, pi/2] of
// 1 / sqrt(1 - m sin^2 t). Independent of the AGM implementation.
double elliptic_k_quadrature(double m) {
  // Gauss-Legendre nodes via Newton on P_64.
  const int n = 64;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 60; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      p = p1;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const double t = M_PI / 4.0 * (x + 1.0);
    total += (M_PI / 4.0) * w * 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t));
  }
  return total;
}

} // namespace

TEST_CASE("jacobi_elliptic degenerates to circular functions at m = 0") {
  for (double u : {0.0, 0.3, 1.7, -2.5, 10.0}) {
    const auto j = jacobi_elliptic(u, 0.0);
    CHECK(j.sn == doctest::Approx(std::sin(u)).epsilon(1e-15));
    CHECK(j.cn == doctest::Approx(std::cos(u)).epsilon(1e-15));
    CHECK(j.dn == 1.0);
  }
}

TEST_CASE("jacobi_elliptic matches the small-m series at u = 1") {
  // sn = sin u - (m/4)(u - sin u cos u) cos u + O(m^2), and likewise
  // for cn, dn.
  const double u = 1.0;
  const double su = std::sin(u), cu = std::cos(u);
  for (double m : {1e-3, 1e-4, 1e-5}) {
    const auto j = jacobi_elliptic(u, m);
    const double sn_series = su - 0.25 * m * (u - su * cu) * cu;
    const double cn_series = cu + 0.25 * m * (u - su * cu) * su;
    const double dn_series = 1.0 - 0.5 * m * su * su;
    CHECK(std::abs(j.sn - sn_series) < 5.0 * m * m);
    CHECK(std::abs(j.cn - cn_series) < 5.0 * m * m);
    CHECK(std::abs(j.dn - dn_series) < 5.0 * m * m);
  }
}

TEST_CASE("jacobi_elliptic quarter-period identities") {
  for (double m : {0.1, 0.49, 0.9}) {
    const double k = elliptic_k(m);
    const auto j = jacobi_elliptic(k, m);
    CHECK(std::abs(j.sn - 1.0) < 1e-13);
    CHECK(std::abs(j.cn) < 1e-13);
    CHECK(std::abs(j.dn - std::sqrt(1.0 - m)) < 1e-13);
  }
}

TEST_CASE("elliptic_k matches the quadrature oracle") {
  for (double m : {0.0, 0.1, 0.490196078431372, 0.8, 0.95}) {
    CHECK(elliptic_k(m) ==
          doctest::Approx(elliptic_k_quadrature(m)).epsilon(1e-13));
  }
}

TEST_CASE("jacobi_elliptic rejects parameters outside [0, 1)") {
  CHECK_THROWS_AS(jacobi_elliptic(1.0, -0.1), ConfigError);
  CHECK_THROWS_AS(jacobi_elliptic(1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(jacobi_elliptic(1.0, 1.5), ConfigError);
}

TEST_CASE("pythagorean identities hold at random points") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u_dist(-10.0, 10.0);
  std::uniform_real_distribution<double> m_dist(0.0, 0.9999);
  for (int i = 0; i < 10000; ++i) {
    const double u = u_dist(rng);
    const double m = m_dist(rng);
    const auto j = jacobi_elliptic(u, m);
    CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-13);
    CHECK(std::abs(j.dn * j.dn + m * j.sn * j.sn - 1.0) < 1e-13);
  }
}

TEST_CASE("duffing_exact starts at (q0, 0)") {
  DuffingParams params;
  const auto v = duffing_exact(params, 0.0);
  CHECK(v.q == doctest::Approx(params.q0).epsilon(1e-15));
  CHECK(v.v == 0.0);
}

TEST_CASE("duffing_exact frequency and parameter match the closed form") {
  DuffingParams params; // alpha 10, beta 5, q0 10
  const double w0 = std::sqrt(params.alpha + params.beta * params.q0 * params.q0);
  CHECK(w0 == doctest::Approx(std::sqrt(510.0)).epsilon(1e-15));
  CHECK(w0 == doctest::Approx(22.5832).epsilon(1e-4));
  const double k2 = params.beta * params.q0 * params.q0 / (2.0 * w0 * w0);
  CHECK(k2 == doctest::Approx(500.0 / 1020.0).epsilon(1e-15));
  CHECK(k2 == doctest::Approx(0.490196).epsilon(1e-5));
}

TEST_CASE("duffing_exact returns to the start after one true period") {
  DuffingParams params;
  const double w0 = std::sqrt(params.alpha + params.beta * params.q0 * params.q0);
  const double m = params.beta * params.q0 * params.q0 / (2.0 * w0 * w0);
  const double period = 4.0 * elliptic_k_quadrature(m) / w0;
  const auto v = duffing_exact(params, period);
  CHECK(std::abs(v.q - params.q0) < 1e-9);
  CHECK(std::abs(v.v) < 1e-9 * w0 * params.q0);
}

TEST_CASE("duffing_exact conserves the energy over 100 characteristic periods") {
  DuffingParams params;
  auto potential = [&](double q) {
    return 0.5 * params.alpha * q * q + 0.25 * params.beta * q * q * q * q;
  };
  const double h0 = potential(params.q0);
  CHECK(h0 == doctest::Approx(13000.0).epsilon(1e-14));
  const double t_end = 100.0 * params.period();
  for (int i = 0; i <= 2000; ++i) {
    const double t = t_end * i / 2000.0;
    const auto v = duffing_exact(params, t);
    const double h = 0.5 * v.v * v.v + potential(v.q);
    CHECK(std::abs(h - h0) <= 1e-10 * h0);
  }
}

TEST_CASE("three-variable form reproduces the exact solution under RK4") {
  // Independent utility: RK4 on (q, v, s_hor, s_ver) with the block
  // mass applied explicitly, dt = T / 1e5, one period.
  DuffingParams params;
  const auto model = duffing_system(params);
  const double t_period = params.period();
  const double dt = t_period / 100000.0;

  Vector y(4);
  y << params.q0, 0.0, params.k_hor() * params.q0,
      params.k_ver() * params.q0 * params.q0 / 2.0;

  auto rhs = [&](const Vector& state) {
    const double q = state[0], v = state[1], sh = state[2], sv = state[3];
    Vector dy(4);
    dy[0] = v;
    // H = Diag[m, 2/k_hor, 2/k_ver]; J as in the three-variable form.
    dy[1] = (-2.0 * sh - 2.0 * q / params.length * sv) / params.mass;
    dy[2] = 0.5 * params.k_hor() * (2.0 * v);
    dy[3] = 0.5 * params.k_ver() * (2.0 * q / params.length * v);
    return dy;
  };

  double t = 0.0;
  for (int n = 0; n < 100000; ++n) {
    const Vector k1 = rhs(y);
    const Vector k2 = rhs(y + 0.5 * dt * k1);
    const Vector k3 = rhs(y + 0.5 * dt * k2);
    const Vector k4 = rhs(y + dt * k3);
    y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += dt;
  }
  const auto exact = duffing_exact(params, t);
  CHECK(std::abs(y[0] - exact.q) < 1e-8 * params.q0);
  CHECK(std::abs(y[1] - exact.v) < 1e-8 * 22.6 * params.q0);
  (void)model;
}

TEST_CASE("duffing_system matches the hand-evaluated structure") {
  DuffingParams params;
  auto model = duffing_system(params);

  // Initial stresses and energy.
  const PoissonState s0 = model->initial_state();
  CHECK(s0.s[0] == doctest::Approx(50.0).epsilon(1e-14));
  CHECK(s0.s[1] == doctest::Approx(250.0).epsilon(1e-14));
  CHECK(energy(model->mass(), s0) == doctest::Approx(13000.0).epsilon(1e-14));

  // Acceleration at t = 0: -alpha q0 - beta q0^3 = -5100.
  const Vector a0 = model->mass().solve_velocity(model->rhs_force(s0.q));
  CHECK(a0[0] == doctest::Approx(-5100.0).epsilon(1e-13));

  // J(0) has no nonlinear entry.
  const Matrix j0(model->assemble_coupling(Vector::Zero(1)));
  CHECK(j0(0, 0) == doctest::Approx(2.0));
  CHECK(j0(1, 0) == 0.0);
}
