// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_HARNESS_NORMS_HPP
#define HAMFLEX_HARNESS_NORMS_HPP

#include <vector>

#include "hamflex/integrators/run.hpp"
#include "hamflex/models/duffing.hpp"

namespace hamflex::harness {

struct ErrorNorms {
  double err_q = 0.0;
  double err_v = 0.0;
};

/// Discrete L2-in-time error
///   err = sqrt(sum_n dt_sample |y_n - y_ref(t_n)|^2)
/// over samples that live on a common time grid; the grids must agree
/// sample by sample or a ConfigError is raised.
ErrorNorms error_norms(const std::vector<Sample>& run_samples,
                       const std::vector<Sample>& ref_samples,
                       double dt_sample);

/// Against the closed-form Duffing solution, evaluated at every sample
/// time.
ErrorNorms error_norms_exact(const std::vector<Sample>& run_samples,
                             double dt_sample, const DuffingParams& params);

struct DriftReport {
  double max_relative = 0.0;  // max_n |H_n - H_0| / H_0
  double mean_step_diff = 0.0; // mean |H_{n+1} - H_n|
};

DriftReport drift_report(const RunRecord& record);

} // namespace hamflex::harness

#endif
