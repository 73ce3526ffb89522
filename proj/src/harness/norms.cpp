// SPDX-License-Identifier: Apache-2.0

#include "hamflex/harness/norms.hpp"

#include <cmath>

#include "hamflex/error.hpp"

namespace hamflex::harness {

ErrorNorms error_norms(const std::vector<Sample>& run_samples,
                       const std::vector<Sample>& ref_samples,
                       double dt_sample) {
  if (ref_samples.size() < run_samples.size())
    throw ConfigError("error_norms: reference does not cover the run");
  double acc_q = 0.0;
  double acc_v = 0.0;
  for (size_t i = 0; i < run_samples.size(); ++i) {
    const Sample& run = run_samples[i];
    const Sample& ref = ref_samples[i];
    if (std::abs(run.t - ref.t) > 1e-9 * (1.0 + std::abs(run.t)))
      throw ConfigError("error_norms: incompatible time grids at sample " +
                        std::to_string(i));
    acc_q += dt_sample * (run.q - ref.q).squaredNorm();
    acc_v += dt_sample * (run.v - ref.v).squaredNorm();
  }
  return {std::sqrt(acc_q), std::sqrt(acc_v)};
}

ErrorNorms error_norms_exact(const std::vector<Sample>& run_samples,
                             double dt_sample, const DuffingParams& params) {
  double acc_q = 0.0;
  double acc_v = 0.0;
  for (const Sample& sample : run_samples) {
    const DuffingExactValues exact = duffing_exact(params, sample.t);
    acc_q += dt_sample * std::pow(sample.q[0] - exact.q, 2);
    acc_v += dt_sample * std::pow(sample.v[0] - exact.v, 2);
  }
  return {std::sqrt(acc_q), std::sqrt(acc_v)};
}

DriftReport drift_report(const RunRecord& record) {
  DriftReport report;
  if (record.energy.empty()) return report;
  const double h0 = record.energy.front();
  double diff_sum = 0.0;
  for (size_t i = 0; i < record.energy.size(); ++i) {
    if (h0 != 0.0)
      report.max_relative = std::max(
          report.max_relative, std::abs(record.energy[i] - h0) / std::abs(h0));
    else
      report.max_relative =
          std::max(report.max_relative, std::abs(record.energy[i] - h0));
    if (i) diff_sum += std::abs(record.energy[i] - record.energy[i - 1]);
  }
  if (record.energy.size() > 1)
    report.mean_step_diff =
        diff_sum / static_cast<double>(record.energy.size() - 1);
  return report;
}

} // namespace hamflex::harness
