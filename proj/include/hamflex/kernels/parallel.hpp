// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_KERNELS_PARALLEL_HPP
#define HAMFLEX_KERNELS_PARALLEL_HPP

namespace hamflex::kernels {

// Global switch for the OpenMP kernel variants. 0 = library default
// (all available cores), 1 = serial reference path.
void set_num_threads(int n);
int num_threads();

// True when the OpenMP variants are active (num_threads() > 1).
bool parallel_enabled();

} // namespace hamflex::kernels

#endif
