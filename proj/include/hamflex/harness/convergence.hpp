// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_HARNESS_CONVERGENCE_HPP
#define HAMFLEX_HARNESS_CONVERGENCE_HPP

#include <string>
#include <vector>

#include "hamflex/harness/experiment.hpp"
#include "hamflex/harness/norms.hpp"

namespace hamflex::harness {

struct ConvergenceRow {
  Scheme scheme;
  int k = 0;
  double dt = 0.0;
  double err_q = 0.0;
  double err_v = 0.0;
  double rate_q = 0.0; // log2 ratio against the previous stable row
  double rate_v = 0.0;
  bool has_rate = false;
  bool unstable = false;
};

struct ConvergenceOptions {
  int k_min = 0;
  int k_max = 5;
  double t_end_override = -1.0; // <= 0: experiment's convergence window
  std::string cache_dir;
  double newton_tol = 1e-12;
  int newton_max_iter = 25;
};

/// Runs every scheme over dt = dt_base / 2^k for k in [k_min, k_max]
/// and reports the time-L2 errors against the experiment's reference
/// (exact solution for the Duffing oscillator, a fine leapfrog run
/// otherwise). Unstable runs are flagged instead of rated. The window
/// is aligned to the coarsest grid so all time grids nest.
std::vector<ConvergenceRow> convergence_table(const ExperimentSetup& setup,
                                              Experiment experiment,
                                              const std::vector<Scheme>& schemes,
                                              const ConvergenceOptions& options);

void write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                           const std::string& path);

} // namespace hamflex::harness

#endif
