// SPDX-License-Identifier: Apache-2.0

// Serial-vs-OpenMP comparison of the cell kernels on the column mesh.
// The parallel variants are bitwise identical to the serial reference;
// this target only reports their speed.

#include <chrono>
#include <cstdio>
#include <random>
#include <algorithm>
#include <functional>
#include <vector>

#include "hamflex/core/block_diag.hpp"
#include "hamflex/fem3d/elasticity.hpp"
#include "hamflex/fem3d/kernels.hpp"
#include "hamflex/kernels/parallel.hpp"
#include "hamflex/kernels/spmv.hpp"

using namespace hamflex;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& body, int repeats) {
  body(); // warm up
  std::vector<double> times;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = Clock::now();
    body();
    times.push_back(
        1e3 * std::chrono::duration<double>(Clock::now() - t0).count());
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
  fem3d::ColumnParams params;
  const fem3d::TetMesh mesh = fem3d::build_box_mesh(
      params.nx, params.ny, params.nz, params.lx, params.ly, params.lz);
  auto model = fem3d::assemble_elasticity(mesh, params, true);
  const auto& geom = model->geometry();

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector q_full(3 * mesh.n_vertices());
  Vector v_full(3 * mesh.n_vertices());
  for (Index i = 0; i < q_full.size(); ++i) {
    q_full[i] = 0.05 * dist(rng);
    v_full[i] = dist(rng);
  }
  Vector s(6 * mesh.n_cells());
  for (Index i = 0; i < s.size(); ++i) s[i] = dist(rng);
  const Vector q_red = model->to_reduced(q_full);

  std::printf("column mesh: %lld vertices, %lld cells, %d hardware threads\n",
              static_cast<long long>(mesh.n_vertices()),
              static_cast<long long>(mesh.n_cells()),
              kernels::num_threads());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  const int repeats = 9;
  Vector out;

  auto compare = [&](const char* name, const std::function<void()>& body) {
    kernels::set_num_threads(1);
    const double serial = time_ms(body, repeats);
    kernels::set_num_threads(0);
    const double parallel = time_ms(body, repeats);
    report(name, serial, parallel);
  };

  compare("strain_loads",
          [&] { fem3d::strain_loads(geom, q_full, out); });
  compare("apply_l",
          [&] { fem3d::apply_l(geom, q_full, v_full, out); });
  compare("apply_l_transpose",
          [&] { fem3d::apply_lt(geom, q_full, s, out); });

  std::vector<fem3d::Matrix12> blocks;
  const fem3d::Matrix6 k_mandel = model->material().stiffness();
  compare("cell_stiffness_blocks", [&] {
    fem3d::cell_stiffness_blocks(geom, k_mandel, q_full, q_full, blocks);
  });
  compare("two_point_stiffness", [&] {
    const SpMat k = model->assemble_two_point_stiffness(q_red, q_red);
    out.resize(1);
    out[0] = k.coeff(0, 0);
  });

  const SpMat k_fixed = model->assemble_two_point_stiffness(q_red, q_red);
  Vector x = Vector::Ones(k_fixed.rows());
  compare("spmv_sym", [&] { kernels::spmv_sym(k_fixed, x, out); });

  const Vector rhs_s = Vector::Ones(model->stress_dim());
  compare("stress_block_solve", [&] {
    out = model->mass().stress_mass().solve(rhs_s);
  });

  compare("angular_momentum", [&] {
    const Vector3 j = fem3d::angular_momentum_integral(
        geom, mesh.vertices, params.rho, q_full, v_full);
    out.resize(3);
    out = j;
  });

  kernels::set_num_threads(0);
  return 0;
}
