// SPDX-License-Identifier: Apache-2.0

#include "hamflex/harness/convergence.hpp"

#include <cmath>
#include <optional>

#include "hamflex/error.hpp"
#include "hamflex/harness/csv.hpp"
#include "hamflex/harness/reference.hpp"

namespace hamflex::harness {

std::vector<ConvergenceRow> convergence_table(
    const ExperimentSetup& setup, Experiment experiment,
    const std::vector<Scheme>& schemes, const ConvergenceOptions& options) {
  if (options.k_min < 0 || options.k_max < options.k_min ||
      options.k_max > 12)
    throw ConfigError("convergence_table: bad k range");
  if (schemes.empty())
    throw ConfigError("convergence_table: no schemes requested");

  // Align the comparison window to the coarsest grid so every finer
  // grid (and the reference grid) nests exactly.
  const double dt_coarse = setup.dt_base / std::pow(2.0, options.k_min);
  const double window =
      options.t_end_override > 0.0 ? options.t_end_override
                                   : setup.convergence_t_end;
  const double t_end =
      std::max(1.0, std::round(window / dt_coarse)) * dt_coarse;

  // The leapfrog reference is the dominant cost; fetch it only once a
  // run actually completes.
  std::optional<ReferenceSolution> reference;
  auto the_reference = [&]() -> const ReferenceSolution& {
    if (!reference)
      reference = get_reference(setup, experiment, t_end, options.cache_dir);
    return *reference;
  };

  std::vector<ConvergenceRow> rows;
  for (Scheme scheme : schemes) {
    std::optional<ConvergenceRow> previous;
    for (int k = options.k_min; k <= options.k_max; ++k) {
      ConvergenceRow row;
      row.scheme = scheme;
      row.k = k;
      row.dt = setup.dt_base / std::pow(2.0, k);

      SchemeConfig config;
      config.dt = row.dt;
      config.t_end = t_end;
      config.scheme = scheme;
      config.newton_tol = options.newton_tol;
      config.newton_max_iter = options.newton_max_iter;
      RunOptions run_options;
      // Errors are evaluated on the dt_base grid against stored
      // references, and on the run's own grid against the exact
      // solution.
      run_options.sample_stride = setup.duffing ? 1 : (Index(1) << k);

      try {
        const RunRecord record =
            run(*setup.model, config, setup.initial, run_options);
        if (!record.completed()) {
          row.unstable = true;
          previous.reset();
        } else if (setup.duffing) {
          const ErrorNorms norms =
              error_norms_exact(record.samples, row.dt, *setup.duffing);
          row.err_q = norms.err_q;
          row.err_v = norms.err_v;
        } else {
          const ReferenceSolution& ref = the_reference();
          const ErrorNorms norms =
              error_norms(record.samples, ref.samples, ref.dt_sample);
          row.err_q = norms.err_q;
          row.err_v = norms.err_v;
        }
      } catch (const StepFailure&) {
        row.unstable = true;
        previous.reset();
      }

      if (!row.unstable && previous && previous->err_q > 0.0 &&
          previous->err_v > 0.0) {
        row.rate_q = std::log2(previous->err_q / row.err_q);
        row.rate_v = std::log2(previous->err_v / row.err_v);
        row.has_rate = true;
      }
      rows.push_back(row);
      if (!row.unstable) previous = row;
    }
  }
  return rows;
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                           const std::string& path) {
  CsvWriter csv(path, {"scheme", "k", "dt", "err_q", "err_v", "rate_q",
                       "rate_v", "status"});
  for (const ConvergenceRow& row : rows) {
    std::vector<std::string> cells;
    cells.push_back(scheme_name(row.scheme));
    cells.push_back(std::to_string(row.k));
    cells.push_back(format_double(row.dt));
    if (row.unstable) {
      cells.insert(cells.end(), {"", "", "", "", "unstable"});
    } else {
      cells.push_back(format_double(row.err_q));
      cells.push_back(format_double(row.err_v));
      cells.push_back(row.has_rate ? format_double(row.rate_q) : "");
      cells.push_back(row.has_rate ? format_double(row.rate_v) : "");
      cells.push_back("ok");
    }
    csv.write_row(cells);
  }
}

} // namespace hamflex::harness
