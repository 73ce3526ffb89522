// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_FEM3D_MATERIAL_HPP
#define HAMFLEX_FEM3D_MATERIAL_HPP

#include "hamflex/fem3d/mandel.hpp"

namespace hamflex::fem3d {

/// Saint-Venant-Kirchhoff constitutive law in Mandel form:
/// stiffness K(E) = lambda tr(E) I + 2 mu E and its inverse, the
/// compliance C(S) = S / (2 mu) - lambda tr(S) I / (2 mu (3 lambda + 2 mu)).
struct SaintVenantMaterial {
  double mu = 0.0;
  double lambda = 0.0;

  Matrix6 stiffness() const;
  Matrix6 compliance() const;
};

/// Validates mu > 0 and 3 lambda + 2 mu > 0.
SaintVenantMaterial saint_venant_material(double mu, double lambda);

} // namespace hamflex::fem3d

#endif
