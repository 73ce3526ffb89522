// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_FEM3D_MANDEL_HPP
#define HAMFLEX_FEM3D_MANDEL_HPP

#include "hamflex/types.hpp"

namespace hamflex::fem3d {

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

// Orthonormal (Mandel) encoding of symmetric 3x3 tensors:
//   (S11, S22, S33, sqrt(2) S23, sqrt(2) S13, sqrt(2) S12).
// The Euclidean inner product of two encodings equals the Frobenius
// double contraction of the tensors, so mass blocks need no extra
// bookkeeping factors.

inline constexpr double kSqrt2 = 1.4142135623730951;

inline Vector6 to_mandel(const Matrix3& s) {
  Vector6 v;
  v << s(0, 0), s(1, 1), s(2, 2), kSqrt2 * s(1, 2), kSqrt2 * s(0, 2),
      kSqrt2 * s(0, 1);
  return v;
}

inline Matrix3 from_mandel(const Vector6& v) {
  Matrix3 s;
  const double a = v[3] / kSqrt2;
  const double b = v[4] / kSqrt2;
  const double c = v[5] / kSqrt2;
  s << v[0], c, b, c, v[1], a, b, a, v[2];
  return s;
}

} // namespace hamflex::fem3d

#endif
