// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_HARNESS_TIMING_HPP
#define HAMFLEX_HARNESS_TIMING_HPP

#include <string>
#include <vector>

#include "hamflex/harness/experiment.hpp"
#include "hamflex/integrators/run.hpp"

namespace hamflex::harness {

struct TimingRow {
  Scheme scheme;
  double dt = 0.0;
  Index steps = 0;
  double wall_seconds = 0.0;
  double seconds_per_step = 0.0;
};

/// Per-step wall-clock comparison of the schemes on one experiment at
/// a common time step. Only relative orderings are meaningful; the
/// absolute numbers depend on the machine.
std::vector<TimingRow> timing_table(const ExperimentSetup& setup,
                                    const std::vector<Scheme>& schemes, int k,
                                    Index steps);

void write_timing_csv(const std::vector<TimingRow>& rows,
                      const std::string& path);

} // namespace hamflex::harness

#endif
