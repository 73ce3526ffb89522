// SPDX-License-Identifier: Apache-2.0

#include "hamflex/kernels/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hamflex::kernels {

namespace {
int g_threads = 0;
}

void set_num_threads(int n) { g_threads = n < 0 ? 0 : n; }

int num_threads() {
#ifdef _OPENMP
  if (g_threads > 0) return g_threads;
  return omp_get_max_threads();
#else
  return 1;
#endif
}

bool parallel_enabled() { return num_threads() > 1; }

} // namespace hamflex::kernels
