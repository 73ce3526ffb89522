// SPDX-License-Identifier: Apache-2.0

#include "hamflex/fem1d/space.hpp"

#include <cmath>

#include "hamflex/error.hpp"

namespace hamflex::fem1d {

namespace {

// Lagrange basis on equispaced reference nodes j/k, j = 0..k.
void lagrange_eval(int k, int local, double xi, double& value, double& d1,
                   double& d2) {
  const int n = k + 1;
  auto node = [k](int j) { return static_cast<double>(j) / k; };
  // value
  double v = 1.0;
  for (int j = 0; j < n; ++j) {
    if (j == local) continue;
    v *= (xi - node(j)) / (node(local) - node(j));
  }
  value = v;
  // first derivative: sum over omitted factors
  double dv = 0.0;
  for (int m = 0; m < n; ++m) {
    if (m == local) continue;
    double term = 1.0 / (node(local) - node(m));
    for (int j = 0; j < n; ++j) {
      if (j == local || j == m) continue;
      term *= (xi - node(j)) / (node(local) - node(j));
    }
    dv += term;
  }
  d1 = dv;
  // second derivative
  double ddv = 0.0;
  for (int m = 0; m < n; ++m) {
    if (m == local) continue;
    for (int p = 0; p < n; ++p) {
      if (p == local || p == m) continue;
      double term = 1.0 / ((node(local) - node(m)) * (node(local) - node(p)));
      for (int j = 0; j < n; ++j) {
        if (j == local || j == m || j == p) continue;
        term *= (xi - node(j)) / (node(local) - node(j));
      }
      ddv += term;
    }
  }
  d2 = ddv;
}

// Cubic Hermite shape functions on [0, 1]; slope dofs pre-scaled by h.
void hermite_eval(int local, double xi, double& value, double& d1,
                  double& d2) {
  const double x = xi;
  switch (local) {
  case 0:
    value = 1.0 - 3.0 * x * x + 2.0 * x * x * x;
    d1 = -6.0 * x + 6.0 * x * x;
    d2 = -6.0 + 12.0 * x;
    return;
  case 1:
    value = x - 2.0 * x * x + x * x * x;
    d1 = 1.0 - 4.0 * x + 3.0 * x * x;
    d2 = -4.0 + 6.0 * x;
    return;
  case 2:
    value = 3.0 * x * x - 2.0 * x * x * x;
    d1 = 6.0 * x - 6.0 * x * x;
    d2 = 6.0 - 12.0 * x;
    return;
  case 3:
    value = -x * x + x * x * x;
    d1 = -2.0 * x + 3.0 * x * x;
    d2 = -2.0 + 6.0 * x;
    return;
  default:
    throw ConfigError("hermite_eval: local dof out of range");
  }
}

// Legendre P_j(2 xi - 1) with derivatives in xi.
void legendre_eval(int local, double xi, double& value, double& d1,
                   double& d2) {
  const double t = 2.0 * xi - 1.0;
  double p0 = 1.0, p1 = t;
  double dp0 = 0.0, dp1 = 1.0;
  double ddp0 = 0.0, ddp1 = 0.0;
  if (local == 0) {
    value = 1.0;
    d1 = d2 = 0.0;
    return;
  }
  for (int k = 2; k <= local; ++k) {
    const double a = (2.0 * k - 1.0) / k;
    const double b = (k - 1.0) / static_cast<double>(k);
    const double p2 = a * t * p1 - b * p0;
    const double dp2 = a * (p1 + t * dp1) - b * dp0;
    const double ddp2 = a * (2.0 * dp1 + t * ddp1) - b * ddp0;
    p0 = p1; p1 = p2;
    dp0 = dp1; dp1 = dp2;
    ddp0 = ddp1; ddp1 = ddp2;
  }
  value = p1;
  d1 = 2.0 * dp1;
  d2 = 4.0 * ddp1;
}

} // namespace

Space1D::Space1D(Kind kind, int order, const Mesh1D& mesh)
    : kind_(kind), order_(order), mesh_(mesh) {
  if (mesh.n_el < 1) throw ConfigError("Space1D: empty mesh");
  switch (kind_) {
  case Kind::CG:
    if (order_ < 1) throw ConfigError("Space1D: CG order must be >= 1");
    n_local_ = order_ + 1;
    n_dofs_ = mesh_.n_el * order_ + 1;
    break;
  case Kind::Hermite:
    order_ = 3;
    n_local_ = 4;
    n_dofs_ = 2 * (mesh_.n_el + 1);
    break;
  case Kind::DG:
    if (order_ < 0) throw ConfigError("Space1D: DG order must be >= 0");
    n_local_ = order_ + 1;
    n_dofs_ = mesh_.n_el * (order_ + 1);
    break;
  }
}

Space1D::LocalDof Space1D::dof(Index element, int local) const {
  switch (kind_) {
  case Kind::CG:
    return {element * order_ + local, 1.0};
  case Kind::Hermite: {
    const Index node = element + local / 2;
    const bool slope = (local % 2) == 1;
    return {2 * node + (slope ? 1 : 0), slope ? mesh_.h() : 1.0};
  }
  case Kind::DG:
    return {element * n_local_ + local, 1.0};
  }
  throw ConfigError("Space1D::dof: bad kind");
}

void Space1D::eval(int local, double xi, double& value, double& d1,
                   double& d2) const {
  switch (kind_) {
  case Kind::CG: lagrange_eval(order_, local, xi, value, d1, d2); return;
  case Kind::Hermite: hermite_eval(local, xi, value, d1, d2); return;
  case Kind::DG: legendre_eval(local, xi, value, d1, d2); return;
  }
}

double Space1D::value(const Vector& dofs, Index e, double xi) const {
  double out = 0.0, v, d1, d2;
  for (int l = 0; l < n_local_; ++l) {
    eval(l, xi, v, d1, d2);
    const LocalDof ld = dof(e, l);
    out += v * ld.scale * dofs[ld.global];
  }
  return out;
}

double Space1D::deriv(const Vector& dofs, Index e, double xi) const {
  double out = 0.0, v, d1, d2;
  const double inv_h = 1.0 / mesh_.h();
  for (int l = 0; l < n_local_; ++l) {
    eval(l, xi, v, d1, d2);
    const LocalDof ld = dof(e, l);
    out += d1 * inv_h * ld.scale * dofs[ld.global];
  }
  return out;
}

double Space1D::deriv2(const Vector& dofs, Index e, double xi) const {
  double out = 0.0, v, d1, d2;
  const double inv_h2 = 1.0 / (mesh_.h() * mesh_.h());
  for (int l = 0; l < n_local_; ++l) {
    eval(l, xi, v, d1, d2);
    const LocalDof ld = dof(e, l);
    out += d2 * inv_h2 * ld.scale * dofs[ld.global];
  }
  return out;
}

Vector Space1D::interpolate(const std::function<double(double)>& f,
                            const std::function<double(double)>& df) const {
  Vector dofs = Vector::Zero(n_dofs_);
  switch (kind_) {
  case Kind::CG:
    for (Index e = 0; e < mesh_.n_el; ++e)
      for (int l = 0; l <= order_; ++l)
        dofs[e * order_ + l] =
            f(mesh_.point(e, static_cast<double>(l) / order_));
    return dofs;
  case Kind::Hermite: {
    if (!df)
      throw ConfigError("Space1D::interpolate: Hermite needs the derivative");
    for (Index i = 0; i <= mesh_.n_el; ++i) {
      dofs[2 * i] = f(mesh_.node(i));
      dofs[2 * i + 1] = df(mesh_.node(i));
    }
    return dofs;
  }
  case Kind::DG:
    throw ConfigError("Space1D::interpolate: not defined for DG spaces");
  }
  return dofs;
}

} // namespace hamflex::fem1d
