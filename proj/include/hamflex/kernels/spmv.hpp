// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_KERNELS_SPMV_HPP
#define HAMFLEX_KERNELS_SPMV_HPP

#include "hamflex/types.hpp"

namespace hamflex::kernels {

// y = A x for symmetric A in compressed storage. Symmetry lets the
// column-major arrays be read as rows, so every y entry is an
// independent gather and the OpenMP variant is bitwise identical to
// the serial one.
void spmv_sym_serial(const SpMat& a, const Vector& x, Vector& y);
void spmv_sym(const SpMat& a, const Vector& x, Vector& y);

// Deterministic sum of a span of doubles: serial left-to-right order
// in both variants (the parallel variant splits into fixed chunks and
// combines partial sums in chunk order).
double sum_serial(const double* data, Index n);
double sum(const double* data, Index n);

} // namespace hamflex::kernels

#endif
