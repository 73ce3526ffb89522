// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_MODELS_ELLIPTIC_HPP
#define HAMFLEX_MODELS_ELLIPTIC_HPP

namespace hamflex {

struct JacobiValues {
  double sn;
  double cn;
  double dn;
};

/// Jacobi elliptic functions sn, cn, dn of argument u and parameter
/// m in [0, 1), computed with the arithmetic-geometric mean and the
/// descending Landen recursion. Throws ConfigError outside [0, 1).
JacobiValues jacobi_elliptic(double u, double m);

/// Complete elliptic integral of the first kind K(m), m in [0, 1).
double elliptic_k(double m);

} // namespace hamflex

#endif
