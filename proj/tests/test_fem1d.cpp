// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "hamflex/error.hpp"
#include "hamflex/fem1d/assembly.hpp"
#include "hamflex/fem1d/bar.hpp"
#include "hamflex/fem1d/beam.hpp"
#include "hamflex/fem1d/quadrature.hpp"
#include "hamflex/solvers/spd.hpp"

using namespace hamflex;
using namespace hamflex::fem1d;

namespace {

Vector random_vector(Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

// L2 projection of a pointwise function onto a DG space, via Legendre
// orthogonality: c_j = (2j + 1) / h * int f psi_j.
Vector dg_project(const Space1D& dg, const QuadratureRule& rule,
                  const std::function<double(Index, double)>& f) {
  const Mesh1D& mesh = dg.mesh();
  Vector coeff = Vector::Zero(dg.n_dofs());
  for (Index e = 0; e < mesh.n_el; ++e)
    for (int j = 0; j < dg.dofs_per_element(); ++j) {
      double integral = 0.0;
      for (int qp = 0; qp < rule.size(); ++qp) {
        const double xi = rule.points[static_cast<size_t>(qp)];
        double v, d1, d2;
        dg.eval(j, xi, v, d1, d2);
        integral += rule.weights[static_cast<size_t>(qp)] * f(e, xi) * v;
      }
      coeff[dg.dof(e, j).global] = (2.0 * j + 1.0) * integral;
    }
  return coeff;
}

} // namespace

TEST_CASE("gauss rules integrate monomials exactly") {
  for (int n = 1; n <= 10; ++n) {
    const QuadratureRule rule = gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double integral = 0.0;
      for (int qp = 0; qp < n; ++qp)
        integral += rule.weights[static_cast<size_t>(qp)] *
                    std::pow(rule.points[static_cast<size_t>(qp)], p);
      CHECK(integral == doctest::Approx(1.0 / (p + 1)).epsilon(1e-14));
    }
  }
}

TEST_CASE("CG and Hermite bases form a partition of unity") {
  Mesh1D mesh{4, 2.0};
  for (int order : {1, 2, 3}) {
    Space1D cg(Space1D::Kind::CG, order, mesh);
    for (double xi : {0.0, 0.25, 0.7, 1.0}) {
      double total = 0.0;
      for (int l = 0; l < cg.dofs_per_element(); ++l) {
        double v, d1, d2;
        cg.eval(l, xi, v, d1, d2);
        total += v;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  Space1D her(Space1D::Kind::Hermite, 3, mesh);
  for (double xi : {0.0, 0.3, 1.0}) {
    double v0, v2, d1, d2, dummy;
    her.eval(0, xi, v0, d1, dummy);
    her.eval(2, xi, v2, d2, dummy);
    CHECK(v0 + v2 == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("derivative inclusions hold discretely") {
  Mesh1D mesh{5, 1.3};
  std::mt19937 rng(2);
  const QuadratureRule rule = gauss_legendre(8);

  SUBCASE("d_x CG_k lands in DG_{k-1}") {
    for (int k : {1, 2, 3}) {
      Space1D cg(Space1D::Kind::CG, k, mesh);
      Space1D dg(Space1D::Kind::DG, k - 1, mesh);
      const Vector u = random_vector(cg.n_dofs(), rng);
      const Vector proj = dg_project(
          dg, rule, [&](Index e, double xi) { return cg.deriv(u, e, xi); });
      for (Index e = 0; e < mesh.n_el; ++e)
        for (double xi : {0.1, 0.5, 0.9})
          CHECK(dg.value(proj, e, xi) ==
                doctest::Approx(cg.deriv(u, e, xi)).epsilon(1e-13));
    }
  }

  SUBCASE("d_xx Hermite lands in DG_1") {
    Space1D her(Space1D::Kind::Hermite, 3, mesh);
    Space1D dg1(Space1D::Kind::DG, 1, mesh);
    const Vector u = random_vector(her.n_dofs(), rng);
    const Vector proj = dg_project(
        dg1, rule, [&](Index e, double xi) { return her.deriv2(u, e, xi); });
    for (Index e = 0; e < mesh.n_el; ++e)
      for (double xi : {0.2, 0.8})
        CHECK(dg1.value(proj, e, xi) ==
              doctest::Approx(her.deriv2(u, e, xi)).epsilon(1e-13));
  }

  SUBCASE("(d_x Hermite)^2 lands in DG_4") {
    Space1D her(Space1D::Kind::Hermite, 3, mesh);
    Space1D dg4(Space1D::Kind::DG, 4, mesh);
    const Vector u = random_vector(her.n_dofs(), rng);
    auto f = [&](Index e, double xi) {
      const double d = her.deriv(u, e, xi);
      return d * d;
    };
    const Vector proj = dg_project(dg4, rule, f);
    for (Index e = 0; e < mesh.n_el; ++e)
      for (double xi : {0.15, 0.5, 0.85}) {
        const double exact = f(e, xi);
        CHECK(std::abs(dg4.value(proj, e, xi) - exact) <=
              1e-13 * (1.0 + std::abs(exact)));
      }
  }
}

TEST_CASE("wave bar: lowest-order compliance mass is (C_a h) I") {
  Mesh1D mesh{8, 2.0};
  const double rho = 1200.0, area = 3e-4, e_mod = 2e9;
  const auto bar = assemble_wave_bar(mesh, rho, area, e_mod, 1);
  const double c_a_h = mesh.h() / (e_mod * area);
  for (Index b = 0; b < bar.m_ca.block_count(); ++b) {
    CHECK(bar.m_ca.block(b).rows() == 1);
    CHECK(bar.m_ca.block(b)(0, 0) == doctest::Approx(c_a_h).epsilon(1e-14));
  }
}

TEST_CASE("wave bar: constants lie in the kernel of D") {
  Mesh1D mesh{7, 1.0};
  for (int k : {1, 2, 3}) {
    const auto bar = assemble_wave_bar(mesh, 1.0, 1.0, 1.0, k);
    const Vector ones = Vector::Ones(bar.d_dx.cols());
    CHECK((bar.d_dx * ones).lpNorm<Eigen::Infinity>() < 1e-13);
  }
}

TEST_CASE("wave bar: D^T M_Ca^{-1} D is the classical stiffness") {
  Mesh1D mesh{6, 1.2};
  const double rho = 1.0, area = 5e-4, e_mod = 7e10;
  const auto bar = assemble_wave_bar(mesh, rho, area, e_mod, 1);
  const Matrix d(bar.d_dx);
  const Matrix k = d.transpose() * Matrix(bar.m_ca.inverse_sparse()) * d;
  const double scale = e_mod * area / mesh.h();
  for (Index i = 1; i + 1 < k.rows(); ++i) {
    CHECK(k(i, i) == doctest::Approx(2.0 * scale).epsilon(1e-12));
    CHECK(k(i, i - 1) == doctest::Approx(-scale).epsilon(1e-12));
    CHECK(k(i, i + 1) == doctest::Approx(-scale).epsilon(1e-12));
  }
}

TEST_CASE("beam with flat deflection decouples into bar and bending") {
  Mesh1D mesh{4, 1.0};
  BeamParams params;
  params.n_el = 4;
  auto beam = assemble_beam(mesh, params, BeamBc::SimplySupported);
  const Index nv = beam->velocity_dim();
  const SpMat l0 = beam->assemble_coupling(Vector::Zero(nv));
  // Axial stress rows must have no transverse velocity coupling.
  const Matrix l0_dense(l0);
  const Index n_n = beam->axial_stress_dofs();
  const Index n_ax = beam->axial_dofs();
  CHECK(l0_dense.block(0, n_ax, n_n, nv - n_ax).lpNorm<Eigen::Infinity>() ==
        0.0);
}

TEST_CASE("beam axial strain load of the first mode matches quadrature") {
  Mesh1D mesh{50, 1.0};
  BeamParams params;
  auto beam = assemble_beam(mesh, params, BeamBc::SimplySupported);
  const PoissonState st = beam->initial_state();
  const Vector g = beam->strain_projection(st.q);

  // Sum of the elementwise averages times h = integral of the axial
  // strain; here q_x = 0 so it is int 1/2 (d_x q_z)^2.
  double integral_from_g = 0.0;
  const auto& nsp = beam->n_space();
  for (Index e = 0; e < mesh.n_el; ++e)
    integral_from_g += g[nsp.dof(e, 0).global];

  // Independent high-order quadrature of the interpolant.
  const QuadratureRule fine = gauss_legendre(10);
  const Vector q_full = beam->to_full(st.q);
  const auto& vz = beam->vz_space();
  const Vector qz = q_full.tail(vz.n_dofs());
  double integral_direct = 0.0;
  for (Index e = 0; e < mesh.n_el; ++e)
    for (int qp = 0; qp < fine.size(); ++qp) {
      const double xi = fine.points[static_cast<size_t>(qp)];
      const double d = vz.deriv(qz, e, xi);
      integral_direct +=
          fine.weights[static_cast<size_t>(qp)] * mesh.h() * 0.5 * d * d;
    }
  CHECK(integral_from_g ==
        doctest::Approx(integral_direct).epsilon(1e-12));

  // And against the closed form for the underlying sine mode,
  // int 1/2 A^2 (pi/L)^2 cos^2 = A^2 pi^2 / (4 L).
  const double closed = params.amplitude * params.amplitude * M_PI * M_PI /
                        (4.0 * params.length);
  CHECK(integral_direct == doctest::Approx(closed).epsilon(1e-5));
  CHECK(integral_from_g > 0.0);
}

TEST_CASE("beam strain projection has L(q) as directional derivative") {
  Mesh1D mesh{8, 1.0};
  BeamParams params;
  params.n_el = 8;
  auto beam = assemble_beam(mesh, params, BeamBc::SimplySupported);
  std::mt19937 rng(9);
  const Index nv = beam->velocity_dim();
  const Vector q = 1e-3 * random_vector(nv, rng);
  const Vector w = random_vector(nv, rng);
  const double eps = 1e-5 * (q.norm() + 1.0);
  const Vector g_plus = beam->strain_projection(q + eps * w);
  const Vector g_minus = beam->strain_projection(q - eps * w);
  const Vector fd = (g_plus - g_minus) / (2.0 * eps);
  Vector lw;
  beam->apply_coupling(q, w, lw);
  CHECK((fd - lw).norm() <= 1e-6 * (1.0 + lw.norm()));
}

TEST_CASE("simply supported elimination leaves the documented dof counts") {
  Mesh1D mesh{50, 1.0};
  BeamParams params;
  auto free_beam = assemble_beam(mesh, params, BeamBc::Free);
  auto beam = apply_beam_bcs(*free_beam, "simply_supported");
  const Index n_el = mesh.n_el;
  CHECK(beam->axial_dofs() == n_el + 1 - 2);
  CHECK(beam->transverse_dofs() == 2 * (n_el + 1) - 2);
  CHECK(beam->velocity_dim() == (n_el + 1 - 2) + (2 * (n_el + 1) - 2));
  // Reduced force vectors carry no entries for the dropped dofs.
  const PoissonState st = beam->initial_state();
  CHECK(beam->rhs_force(st.q).size() == beam->velocity_dim());

  CHECK_THROWS_AS(apply_beam_bcs(*free_beam, "clamped_guess"), ConfigError);
}

TEST_CASE("reduced bending operator has no rigid mode left") {
  Mesh1D mesh{10, 1.0};
  BeamParams params;
  params.n_el = 10;
  auto free_beam = assemble_beam(mesh, params, BeamBc::Free);
  auto ss_beam = assemble_beam(mesh, params, BeamBc::SimplySupported);

  auto smallest_eig = [](const Model& m) {
    const Vector q0 = Vector::Zero(m.velocity_dim());
    const Matrix k(m.assemble_two_point_stiffness(q0, q0));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(k);
    return eig.eigenvalues()[0];
  };
  const double free_min = smallest_eig(*free_beam);
  const double ss_min = smallest_eig(*ss_beam);
  CHECK(std::abs(free_min) < 1e-4); // rigid translation in the kernel
  CHECK(ss_min > 1e-3);             // eliminated by the supports
}

TEST_CASE("first-mode interpolation hits the documented dof values") {
  Mesh1D mesh{50, 1.0};
  BeamParams params;
  auto beam = assemble_beam(mesh, params, BeamBc::SimplySupported);
  const PoissonState st = beam_initial_state(params, *beam);
  const Vector q_full = beam->to_full(st.q);
  const auto& vz = beam->vz_space();
  const Vector qz = q_full.tail(vz.n_dofs());

  // Midpoint value dof (node 25) equals the amplitude.
  CHECK(qz[2 * 25] == doctest::Approx(params.amplitude).epsilon(1e-14));
  // End slope dofs are +- A pi / L.
  const double slope = params.amplitude * M_PI / params.length;
  CHECK(qz[1] == doctest::Approx(slope).epsilon(1e-14));
  CHECK(qz[2 * 50 + 1] == doctest::Approx(-slope).epsilon(1e-13));
  CHECK(st.v.norm() == 0.0);
}

TEST_CASE("initial beam energy matches an independent quadrature") {
  Mesh1D mesh{50, 1.0};
  BeamParams params;
  auto beam = assemble_beam(mesh, params, BeamBc::SimplySupported);
  const PoissonState st = beam_initial_state(params, *beam);
  const double assembled = energy(beam->mass(), st);

  const QuadratureRule fine = gauss_legendre(10);
  const Vector q_full = beam->to_full(st.q);
  const auto& vz = beam->vz_space();
  const Vector qz = q_full.tail(vz.n_dofs());
  const double ea = params.e_mod * params.area();
  const double ei = params.e_mod * params.inertia();
  double direct = 0.0;
  for (Index e = 0; e < mesh.n_el; ++e)
    for (int qp = 0; qp < fine.size(); ++qp) {
      const double xi = fine.points[static_cast<size_t>(qp)];
      const double w = fine.weights[static_cast<size_t>(qp)] * mesh.h();
      const double dz = vz.deriv(qz, e, xi);
      const double ddz = vz.deriv2(qz, e, xi);
      const double eps_a = 0.5 * dz * dz; // q_x = 0
      direct += 0.5 * w * (ea * eps_a * eps_a + ei * ddz * ddz);
    }
  CHECK(assembled == doctest::Approx(direct).epsilon(1e-12));

  // Sanity against the closed form for the continuous sine mode.
  const double a = params.amplitude, length = params.length;
  const double bend_cont = 0.5 * ei * std::pow(a * M_PI * M_PI / (length * length), 2) *
                           (length / 2.0);
  const double ax_cont = 0.5 * ea * std::pow(0.5 * a * a * M_PI * M_PI / (length * length), 2) *
                         (3.0 * length / 8.0);
  CHECK(assembled == doctest::Approx(bend_cont + ax_cont).epsilon(1e-4));
}

TEST_CASE("assembly is exact already at the default quadrature order") {
  Mesh1D mesh{6, 1.0};
  BeamParams params;
  params.n_el = 6;
  auto coarse = assemble_beam(mesh, params, BeamBc::SimplySupported, 5);
  auto fine = assemble_beam(mesh, params, BeamBc::SimplySupported, 8);
  std::mt19937 rng(4);
  const Vector q = random_vector(coarse->velocity_dim(), rng);

  const Matrix l5(coarse->assemble_coupling(q));
  const Matrix l8(fine->assemble_coupling(q));
  CHECK((l5 - l8).lpNorm<Eigen::Infinity>() <=
        1e-13 * l8.lpNorm<Eigen::Infinity>());

  const Matrix m5(coarse->mass().velocity_mass());
  const Matrix m8(fine->mass().velocity_mass());
  CHECK((m5 - m8).lpNorm<Eigen::Infinity>() <=
        1e-13 * m8.lpNorm<Eigen::Infinity>());

  const Vector g5 = coarse->strain_projection(q);
  const Vector g8 = fine->strain_projection(q);
  CHECK((g5 - g8).lpNorm<Eigen::Infinity>() <=
        1e-13 * (1.0 + g8.lpNorm<Eigen::Infinity>()));
}

TEST_CASE("DG_4 reproduces the axial strain of any Hermite deflection") {
  Mesh1D mesh{5, 1.0};
  BeamParams params;
  params.n_el = 5;
  auto beam = assemble_beam(mesh, params, BeamBc::Free);
  std::mt19937 rng(13);
  const Vector q = random_vector(beam->velocity_dim(), rng);
  const Vector q_full = beam->to_full(q);
  const auto& vx = beam->vx_space();
  const auto& vz = beam->vz_space();
  const Vector qx = q_full.head(vx.n_dofs());
  const Vector qz = q_full.tail(vz.n_dofs());

  // The strain projection coefficients, interpreted as a DG_4 field,
  // must match epsilon_a pointwise once divided by the mass weights:
  // with orthonormal scaling, coeff_j = (2j+1)/h * load_j.
  const Vector g = beam->strain_projection(q);
  const auto& nsp = beam->n_space();
  Vector coeff = Vector::Zero(nsp.n_dofs());
  for (Index e = 0; e < mesh.n_el; ++e)
    for (int j = 0; j < 5; ++j) {
      const Index gj = nsp.dof(e, j).global;
      coeff[gj] = (2.0 * j + 1.0) / mesh.h() * g[gj];
    }
  for (Index e = 0; e < mesh.n_el; ++e)
    for (double xi : {0.05, 0.35, 0.65, 0.95}) {
      const double dqx = vx.deriv(qx, e, xi);
      const double dqz = vz.deriv(qz, e, xi);
      const double exact = dqx + 0.5 * dqz * dqz;
      CHECK(std::abs(nsp.value(coeff, e, xi) - exact) <=
            1e-13 * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("stress mass blocks are diagonal with sizes 5 and 2") {
  Mesh1D mesh{4, 1.0};
  BeamParams params;
  params.n_el = 4;
  auto beam = assemble_beam(mesh, params, BeamBc::SimplySupported);
  const auto& mc = beam->mass().stress_mass();
  CHECK(mc.block_count() == 8); // 4 axial + 4 bending
  for (Index b = 0; b < mc.block_count(); ++b) {
    const Matrix& block = mc.block(b);
    CHECK(block.rows() == (b < 4 ? 5 : 2));
    for (Index i = 0; i < block.rows(); ++i)
      for (Index j = 0; j < block.cols(); ++j)
        if (i != j) CHECK(std::abs(block(i, j)) < 1e-14 * block(0, 0));
  }
}

TEST_CASE("mass matrices are symmetric") {
  Mesh1D mesh{12, 1.0};
  BeamParams params;
  params.n_el = 12;
  auto beam = assemble_beam(mesh, params, BeamBc::SimplySupported);
  const SpMat& m = beam->mass().velocity_mass();
  const Matrix dense(m);
  CHECK((dense - dense.transpose()).lpNorm<Eigen::Infinity>() <=
        1e-14 * dense.lpNorm<Eigen::Infinity>());
}
