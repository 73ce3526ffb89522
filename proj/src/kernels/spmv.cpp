// SPDX-License-Identifier: Apache-2.0

#include "hamflex/kernels/spmv.hpp"

#include <vector>

#include "hamflex/error.hpp"
#include "hamflex/kernels/parallel.hpp"

namespace hamflex::kernels {

namespace {
// Fixed accumulation chunk so serial and parallel sums share one
// reduction tree regardless of thread count.
constexpr Index kChunk = 1024;
}

void spmv_sym_serial(const SpMat& a, const Vector& x, Vector& y) {
  if (!a.isCompressed())
    throw ConfigError("spmv_sym: matrix must be compressed");
  const Index n = a.outerSize();
  y.resize(n);
  const auto* outer = a.outerIndexPtr();
  const auto* inner = a.innerIndexPtr();
  const auto* val = a.valuePtr();
  for (Index r = 0; r < n; ++r) {
    double acc = 0.0;
    for (auto p = outer[r]; p < outer[r + 1]; ++p) acc += val[p] * x[inner[p]];
    y[r] = acc;
  }
}

void spmv_sym(const SpMat& a, const Vector& x, Vector& y) {
  if (!parallel_enabled() || a.outerSize() < 2048) {
    spmv_sym_serial(a, x, y);
    return;
  }
  if (!a.isCompressed())
    throw ConfigError("spmv_sym: matrix must be compressed");
  const Index n = a.outerSize();
  y.resize(n);
  const auto* outer = a.outerIndexPtr();
  const auto* inner = a.innerIndexPtr();
  const auto* val = a.valuePtr();
#pragma omp parallel for schedule(static) num_threads(num_threads())
  for (Index r = 0; r < n; ++r) {
    double acc = 0.0;
    for (auto p = outer[r]; p < outer[r + 1]; ++p) acc += val[p] * x[inner[p]];
    y[r] = acc;
  }
}

double sum_serial(const double* data, Index n) {
  const Index n_chunks = (n + kChunk - 1) / kChunk;
  double total = 0.0;
  for (Index c = 0; c < n_chunks; ++c) {
    const Index lo = c * kChunk;
    const Index hi = lo + kChunk < n ? lo + kChunk : n;
    double acc = 0.0;
    for (Index i = lo; i < hi; ++i) acc += data[i];
    total += acc;
  }
  return total;
}

double sum(const double* data, Index n) {
  if (!parallel_enabled() || n < 4 * kChunk) return sum_serial(data, n);
  const Index n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(static_cast<size_t>(n_chunks), 0.0);
#pragma omp parallel for schedule(static) num_threads(num_threads())
  for (Index c = 0; c < n_chunks; ++c) {
    const Index lo = c * kChunk;
    const Index hi = lo + kChunk < n ? lo + kChunk : n;
    double acc = 0.0;
    for (Index i = lo; i < hi; ++i) acc += data[i];
    partial[static_cast<size_t>(c)] = acc;
  }
  double total = 0.0;
  for (Index c = 0; c < n_chunks; ++c) total += partial[static_cast<size_t>(c)];
  return total;
}

} // namespace hamflex::kernels
