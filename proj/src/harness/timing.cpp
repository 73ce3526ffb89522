// SPDX-License-Identifier: Apache-2.0

#include "hamflex/harness/timing.hpp"

#include <cmath>

#include "hamflex/error.hpp"
#include "hamflex/harness/csv.hpp"

namespace hamflex::harness {

std::vector<TimingRow> timing_table(const ExperimentSetup& setup,
                                    const std::vector<Scheme>& schemes, int k,
                                    Index steps) {
  if (steps < 1) throw ConfigError("timing_table: need at least one step");
  std::vector<TimingRow> rows;
  for (Scheme scheme : schemes) {
    TimingRow row;
    row.scheme = scheme;
    row.dt = setup.dt_base / std::pow(2.0, k);
    row.steps = steps;
    SchemeConfig config;
    config.dt = row.dt;
    config.t_end = static_cast<double>(steps) * row.dt;
    config.scheme = scheme;
    const RunRecord record = run(*setup.model, config, setup.initial);
    if (!record.completed())
      throw NumericalError("timing_table: " + scheme_name(scheme) +
                           " became unstable at this time step");
    row.wall_seconds = record.wall_seconds;
    row.seconds_per_step =
        record.wall_seconds / static_cast<double>(record.steps);
    rows.push_back(row);
  }
  return rows;
}

void write_timing_csv(const std::vector<TimingRow>& rows,
                      const std::string& path) {
  CsvWriter csv(path,
                {"scheme", "dt", "steps", "wall_seconds", "seconds_per_step"});
  for (const TimingRow& row : rows)
    csv.write_row({scheme_name(row.scheme), format_double(row.dt),
                   std::to_string(row.steps), format_double(row.wall_seconds),
                   format_double(row.seconds_per_step)});
}

} // namespace hamflex::harness
