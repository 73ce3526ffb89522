// SPDX-License-Identifier: Apache-2.0

#include "hamflex/models/elliptic.hpp"

#include <cmath>

#include "hamflex/error.hpp"

namespace hamflex {

namespace {
constexpr int kMaxAgm = 32;
constexpr double kAgmTol = 1e-15;

void check_parameter(double m) {
  if (!(m >= 0.0) || m >= 1.0)
    throw ConfigError("jacobi_elliptic: parameter m = " + std::to_string(m) +
                      " outside [0, 1)");
}
} // namespace

JacobiValues jacobi_elliptic(double u, double m) {
  check_parameter(m);
  if (m < 1e-300) return {std::sin(u), std::cos(u), 1.0};

  double a[kMaxAgm + 1];
  double c[kMaxAgm + 1];
  a[0] = 1.0;
  c[0] = std::sqrt(m);
  double b = std::sqrt(1.0 - m);
  int n = 0;
  while (n < kMaxAgm) {
    const double an = 0.5 * (a[n] + b);
    const double cn = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
    a[n] = an;
    c[n] = cn;
    if (std::abs(cn) <= kAgmTol) break;
  }
  if (n == kMaxAgm && std::abs(c[n]) > kAgmTol)
    throw NumericalError("jacobi_elliptic: AGM did not converge");

  // Descending recursion for the amplitude.
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i >= 1; --i)
    phi = 0.5 * (phi + std::asin(c[i] * std::sin(phi) / a[i]));
  JacobiValues out;
  out.sn = std::sin(phi);
  out.cn = std::cos(phi);
  // dn > 0 for m < 1, so the defining identity is also the most
  // accurate evaluation.
  out.dn = std::sqrt(1.0 - m * out.sn * out.sn);
  return out;
}

double elliptic_k(double m) {
  check_parameter(m);
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  for (int i = 0; i < kMaxAgm && std::abs(a - b) > kAgmTol * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return M_PI / (2.0 * a);
}

} // namespace hamflex
