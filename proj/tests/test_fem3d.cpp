// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hamflex/error.hpp"
#include "hamflex/fem3d/elasticity.hpp"
#include "hamflex/fem3d/material.hpp"
#include "hamflex/fem3d/tet_mesh.hpp"
#include "hamflex/fem3d/vtk.hpp"

using namespace hamflex;
using namespace hamflex::fem3d;

namespace {

Matrix3 random_rotation(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector3 axis(dist(rng), dist(rng), dist(rng));
  axis.normalize();
  const double angle = M_PI * dist(rng);
  return Eigen::AngleAxisd(angle, axis).toRotationMatrix();
}

Vector random_vector(Index n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

} // namespace

TEST_CASE("unit cube splits into 6 positive tets covering the volume") {
  const TetMesh mesh = build_box_mesh(1, 1, 1, 1.0, 1.0, 1.0);
  CHECK(mesh.n_vertices() == 8);
  CHECK(mesh.n_cells() == 6);
  CHECK(mesh.volume() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("column mesh has the documented counts") {
  const TetMesh mesh = build_box_mesh(6, 6, 36, 1.0, 1.0, 6.0);
  CHECK(mesh.n_vertices() == 1813);
  CHECK(mesh.n_cells() == 7776);
  CHECK(mesh.volume() == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(mesh.base_vertices.size() == 49);
}

TEST_CASE("every interior face is shared by exactly two tets") {
  const TetMesh mesh = build_box_mesh(3, 2, 2, 1.0, 1.0, 1.0);
  std::map<std::array<Index, 3>, int> faces;
  for (const auto& t : mesh.tets) {
    const std::array<std::array<int, 3>, 4> combos{
        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
    for (const auto& c : combos) {
      std::array<Index, 3> f{t[static_cast<size_t>(c[0])],
                             t[static_cast<size_t>(c[1])],
                             t[static_cast<size_t>(c[2])]};
      std::sort(f.begin(), f.end());
      ++faces[f];
    }
  }
  Index boundary = 0;
  for (const auto& [face, count] : faces) {
    CHECK(count <= 2);
    if (count == 1) ++boundary;
  }
  // Two triangles per boundary quad.
  const Index nx = 3, ny = 2, nz = 2;
  CHECK(boundary == 2 * 2 * (nx * ny + ny * nz + nx * nz));
}

TEST_CASE("saint venant stiffness maps hydrostatic strain isotropically") {
  const auto mat = saint_venant_material(2.0, 3.0);
  const Vector6 e = to_mandel(Matrix3::Identity());
  const Vector6 s = mat.stiffness() * e;
  const Matrix3 stress = from_mandel(s);
  CHECK((stress - (3.0 * 3.0 + 2.0 * 2.0) * Matrix3::Identity())
            .lpNorm<Eigen::Infinity>() < 1e-13);
}

TEST_CASE("compliance inverts the stiffness") {
  const auto mat = saint_venant_material(6.5e6, 9.8e6);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix3 a;
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) a(i, j) = dist(rng);
    const Matrix3 sym = 0.5 * (a + a.transpose());
    const Vector6 s = to_mandel(sym);
    CHECK((mat.compliance() * (mat.stiffness() * s) - s).norm() <=
          1e-13 * s.norm());
  }
  CHECK_THROWS_AS(saint_venant_material(-1.0, 1.0), ConfigError);
}

TEST_CASE("column parameters reproduce the benchmark constants") {
  ColumnParams params;
  CHECK(params.mu() == doctest::Approx(6.538e6).epsilon(1e-3));
  CHECK(params.lambda() == doctest::Approx(9.808e6).epsilon(1e-3));
  CHECK(params.wave_speed() == doctest::Approx(144.0).epsilon(5e-3));
  CHECK(params.dt_base() == doctest::Approx(1.16e-3).epsilon(5e-3));
  // Derived constants obey the defining formulas exactly.
  CHECK(params.bulk() ==
        doctest::Approx(params.lambda() + 2.0 / 3.0 * params.mu())
            .epsilon(1e-14));
}

TEST_CASE("mandel inner product equals the Frobenius contraction") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix3 a, b;
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) {
        a(i, j) = dist(rng);
        b(i, j) = dist(rng);
      }
    const Matrix3 sa = 0.5 * (a + a.transpose());
    const Matrix3 sb = 0.5 * (b + b.transpose());
    const double frob = (sa.transpose() * sb).trace();
    CHECK(to_mandel(sa).dot(to_mandel(sb)) ==
          doctest::Approx(frob).epsilon(1e-14));
  }
}

TEST_CASE("coupling at q = 0 is the linear strain-rate operator") {
  ColumnParams params;
  params.nx = params.ny = 1;
  params.nz = 2;
  params.lz = 2.0;
  auto model = assemble_elasticity(build_box_mesh(1, 1, 2, 1.0, 1.0, 2.0),
                                   params, false);
  std::mt19937 rng(21);
  const Vector v = random_vector(model->velocity_dim(), rng);
  Vector lv;
  model->apply_coupling(Vector::Zero(model->velocity_dim()), v, lv);

  // Against a direct evaluation of V * mandel(sym(grad v)) per cell.
  const auto& geom = model->geometry();
  for (Index c = 0; c < model->mesh().n_cells(); ++c) {
    Matrix3 grad = Matrix3::Zero();
    const auto& cell = geom.cells[static_cast<size_t>(c)];
    for (int a = 0; a < 4; ++a) {
      const Index base = 3 * cell[static_cast<size_t>(a)];
      grad += Vector3(v[base], v[base + 1], v[base + 2]) *
              geom.grads[static_cast<size_t>(c)].col(a).transpose();
    }
    const Vector6 expected = geom.volumes[static_cast<size_t>(c)] *
                             to_mandel(0.5 * (grad + grad.transpose()));
    CHECK((lv.segment<6>(6 * c) - expected).norm() <=
          1e-13 * (1.0 + expected.norm()));
  }
}

TEST_CASE("green-lagrange strain is objective under rigid rotations") {
  ColumnParams params;
  params.nx = params.ny = 1;
  params.nz = 2;
  params.lz = 2.0;
  const TetMesh mesh = build_box_mesh(1, 1, 2, 1.0, 1.0, 2.0);
  auto model = assemble_elasticity(mesh, params, false);
  std::mt19937 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix3 r = random_rotation(rng);
    Vector q(model->velocity_dim());
    for (Index v = 0; v < mesh.n_vertices(); ++v) {
      const Vector3 disp =
          (r - Matrix3::Identity()) * mesh.vertices[static_cast<size_t>(v)];
      q.segment<3>(3 * v) = disp;
    }
    CHECK(model->strain_projection(q).lpNorm<Eigen::Infinity>() <= 1e-12);
    // The recovered stress amplifies strain roundoff by the moduli.
    CHECK(model->stress_from_q(q).lpNorm<Eigen::Infinity>() <=
          1e-13 * params.e_mod);
  }
}

TEST_CASE("uniform stretch produces the exact quadratic strain") {
  ColumnParams params;
  params.nx = params.ny = 1;
  params.nz = 1;
  params.lz = 1.0;
  const TetMesh mesh = build_box_mesh(1, 1, 1, 1.0, 1.0, 1.0);
  auto model = assemble_elasticity(mesh, params, false);
  const double gamma = 0.37;
  Vector q(model->velocity_dim());
  for (Index v = 0; v < mesh.n_vertices(); ++v) {
    q[3 * v] = gamma * mesh.vertices[static_cast<size_t>(v)][0];
    q[3 * v + 1] = 0.0;
    q[3 * v + 2] = 0.0;
  }
  const Vector g = model->strain_projection(q);
  const double e11 = gamma + 0.5 * gamma * gamma;
  const auto& geom = model->geometry();
  for (Index c = 0; c < mesh.n_cells(); ++c) {
    const double vol = geom.volumes[static_cast<size_t>(c)];
    CHECK(g[6 * c] == doctest::Approx(vol * e11).epsilon(1e-14));
    for (int comp = 1; comp < 6; ++comp)
      CHECK(std::abs(g[6 * c + comp]) < 1e-15);
  }
}

TEST_CASE("column initial state interpolates the linear velocity profile") {
  ColumnParams params;
  const TetMesh mesh = build_box_mesh(params.nx, params.ny, params.nz,
                                      params.lx, params.ly, params.lz);
  auto model = assemble_elasticity(mesh, params, true);
  const PoissonState st = column_initial_state(params, *model);
  const Vector v_full = model->to_full(st.v);
  for (Index v = 0; v < mesh.n_vertices(); ++v) {
    const double z = mesh.vertices[static_cast<size_t>(v)][2];
    CHECK(v_full[3 * v] == doctest::Approx(5.0 / 3.0 * z).epsilon(1e-14));
    CHECK(v_full[3 * v + 1] == 0.0);
    CHECK(v_full[3 * v + 2] == 0.0);
  }
  // Top plane moves at 10 m/s; the clamped base does not move.
  for (Index v : mesh.base_vertices) CHECK(v_full[3 * v] == 0.0);

  // Kinetic energy: 1/2 rho (25/9) int z^2 = 110000 J, exact for the
  // consistent mass since the profile is linear.
  CHECK(energy(model->mass(), st) ==
        doctest::Approx(110000.0).epsilon(1e-12));
}

TEST_CASE("angular momentum matches closed-form monomial integrals") {
  ColumnParams params;
  const TetMesh mesh = build_box_mesh(params.nx, params.ny, params.nz,
                                      params.lx, params.ly, params.lz);
  auto model = assemble_elasticity(mesh, params, false);
  PoissonState st = column_initial_state(params, *model);

  SUBCASE("zero velocity gives zero momentum") {
    st.v.setZero();
    CHECK(angular_momentum(*model, st).norm() == 0.0);
  }

  SUBCASE("initial profile: J = (0, 132000, -16500)") {
    const Vector3 j = angular_momentum(*model, st);
    CHECK(std::abs(j[0]) < 1e-9);
    CHECK(j[1] == doctest::Approx(132000.0).epsilon(1e-12));
    CHECK(j[2] == doctest::Approx(-16500.0).epsilon(1e-12));
  }

  SUBCASE("rigid spin about the centroid reproduces the inertia tensor") {
    const Vector3 center(0.5, 0.5, 3.0);
    const Vector3 omega(0.3, -0.2, 0.7);
    Vector v_full(3 * mesh.n_vertices());
    for (Index v = 0; v < mesh.n_vertices(); ++v)
      v_full.segment<3>(3 * v) =
          omega.cross(mesh.vertices[static_cast<size_t>(v)] - center);
    st.q.setZero();
    st.v = model->to_reduced(v_full);
    const Vector3 j = angular_momentum(*model, st);
    // Box inertia about its centroid; the linear momentum vanishes so
    // the origin-based momentum equals the centroid-based one.
    const double m = params.rho * 6.0;
    Matrix3 inertia = Matrix3::Zero();
    inertia(0, 0) = m / 12.0 * (1.0 + 36.0);
    inertia(1, 1) = m / 12.0 * (1.0 + 36.0);
    inertia(2, 2) = m / 12.0 * (1.0 + 1.0);
    const Vector3 expected = inertia * omega;
    CHECK((j - expected).norm() <= 1e-10 * expected.norm());
  }
}

TEST_CASE("consistent mass row sums give the total mass per component") {
  ColumnParams params;
  params.nx = params.ny = 2;
  params.nz = 4;
  params.lz = 2.0;
  const TetMesh mesh = build_box_mesh(2, 2, 4, 1.0, 1.0, 2.0);
  auto model = assemble_elasticity(mesh, params, false);
  const SpMat& m = model->mass().velocity_mass();
  for (int comp = 0; comp < 3; ++comp) {
    Vector ones = Vector::Zero(model->velocity_dim());
    for (Index v = 0; v < mesh.n_vertices(); ++v) ones[3 * v + comp] = 1.0;
    CHECK(ones.dot(m * ones) ==
          doctest::Approx(params.rho * mesh.volume()).epsilon(1e-12));
  }
}

TEST_CASE("strain projection derivative matches the coupling on the column") {
  ColumnParams params;
  params.nx = params.ny = 2;
  params.nz = 3;
  params.lz = 1.5;
  auto model = assemble_elasticity(build_box_mesh(2, 2, 3, 1.0, 1.0, 1.5),
                                   params, true);
  std::mt19937 rng(55);
  const Vector q = 0.1 * random_vector(model->velocity_dim(), rng);
  const Vector w = random_vector(model->velocity_dim(), rng);
  const double eps = 1e-5 * (q.norm() + 1.0);
  const Vector fd = (model->strain_projection(q + eps * w) -
                     model->strain_projection(q - eps * w)) /
                    (2.0 * eps);
  Vector lw;
  model->apply_coupling(q, w, lw);
  CHECK((fd - lw).norm() <= 1e-6 * (1.0 + lw.norm()));
}

TEST_CASE("vtk export writes a parseable snapshot that round-trips") {
  const TetMesh mesh = build_box_mesh(1, 1, 1, 1.0, 1.0, 1.0);
  const std::string path = "test_cube.vtk";

  SUBCASE("mesh-only file") {
    export_vtk(mesh, {}, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    CHECK(text.find("# vtk DataFile Version 3.0") != std::string::npos);
    CHECK(text.find("DATASET UNSTRUCTURED_GRID") != std::string::npos);
    CHECK(text.find("POINTS 8 double") != std::string::npos);
    CHECK(text.find("CELLS 6 30") != std::string::npos);
    CHECK(text.find("CELL_TYPES 6") != std::string::npos);
  }

  SUBCASE("displacement field round-trips") {
    std::mt19937 rng(77);
    const Vector u = random_vector(3 * mesh.n_vertices(), rng);
    VtkFields fields;
    fields.point_displacement = &u;
    export_vtk(mesh, fields, path);

    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    while (std::getline(in, line))
      if (line.rfind("VECTORS displacement", 0) == 0) break;
    Vector recovered(3 * mesh.n_vertices());
    for (Index v = 0; v < mesh.n_vertices(); ++v) {
      REQUIRE(std::getline(in, line));
      std::istringstream ls(line);
      ls >> recovered[3 * v] >> recovered[3 * v + 1] >> recovered[3 * v + 2];
    }
    CHECK((recovered - u).lpNorm<Eigen::Infinity>() <= 1e-12);
  }

  std::remove(path.c_str());
}
