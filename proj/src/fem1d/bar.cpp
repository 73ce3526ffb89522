// SPDX-License-Identifier: Apache-2.0

#include "hamflex/fem1d/bar.hpp"

#include "hamflex/error.hpp"
#include "hamflex/fem1d/assembly.hpp"

namespace hamflex::fem1d {

BarMatrices assemble_wave_bar(const Mesh1D& mesh, double rho, double area,
                              double e_mod, int order) {
  if (order < 1) throw ConfigError("assemble_wave_bar: order must be >= 1");
  if (!(rho > 0.0) || !(area > 0.0) || !(e_mod > 0.0))
    throw ConfigError("assemble_wave_bar: material constants must be positive");

  const Space1D velocity(Space1D::Kind::CG, order, mesh);
  const Space1D stress(Space1D::Kind::DG, order - 1, mesh);
  const QuadratureRule rule = gauss_legendre(order + 1);

  BarMatrices out;
  out.m_rho_a = assemble_mass(velocity, rho * area, rule);
  out.m_ca = assemble_dg_mass(stress, 1.0 / (e_mod * area), rule);
  out.d_dx = assemble_coupling_1d(stress, velocity, 1, rule);
  return out;
}

} // namespace hamflex::fem1d
