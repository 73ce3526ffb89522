// SPDX-License-Identifier: Apache-2.0

#include "hamflex/fem3d/material.hpp"

#include "hamflex/error.hpp"

namespace hamflex::fem3d {

namespace {
Vector6 trace_vector() {
  Vector6 e;
  e << 1.0, 1.0, 1.0, 0.0, 0.0, 0.0;
  return e;
}
} // namespace

Matrix6 SaintVenantMaterial::stiffness() const {
  const Vector6 e = trace_vector();
  return 2.0 * mu * Matrix6::Identity() + lambda * e * e.transpose();
}

Matrix6 SaintVenantMaterial::compliance() const {
  const Vector6 e = trace_vector();
  const double bulk = 3.0 * lambda + 2.0 * mu;
  return (Matrix6::Identity() -
          (lambda / bulk) * e * e.transpose()) /
         (2.0 * mu);
}

SaintVenantMaterial saint_venant_material(double mu, double lambda) {
  if (!(mu > 0.0) || !(3.0 * lambda + 2.0 * mu > 0.0))
    throw ConfigError("saint_venant_material: need mu > 0 and "
                      "3 lambda + 2 mu > 0");
  return {mu, lambda};
}

} // namespace hamflex::fem3d
