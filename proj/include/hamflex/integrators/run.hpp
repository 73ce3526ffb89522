// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_INTEGRATORS_RUN_HPP
#define HAMFLEX_INTEGRATORS_RUN_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hamflex/core/system.hpp"
#include "hamflex/integrators/config.hpp"

namespace hamflex {

struct StepView {
  Index step;
  double t;
  const Vector& q; // displacement at the integer time
  const Vector& v;
  const Vector& s;
};

using Observer = std::function<void(const StepView&)>;

struct Instability {
  Index step;
  double time;
  double energy;
  std::string what;
};

struct Sample {
  Index step;
  double t;
  Vector q;
  Vector v;
};

struct Snapshot {
  Index step;
  double t;
  Vector q;
  Vector v;
  Vector s;
};

struct RunOptions {
  /// Record (q, v) every `sample_stride` steps; 0 disables sampling.
  Index sample_stride = 0;
  /// Extra full-state snapshots at these step indices (sorted).
  std::vector<Index> snapshot_steps;
  std::vector<Observer> observers;
};

struct RunRecord {
  double dt = 0.0;
  Index steps = 0; // N_t requested
  std::vector<double> energy; // size steps_completed + 1, entry n at t = n dt
  std::vector<Sample> samples;
  std::vector<Snapshot> snapshots;
  double wall_seconds = 0.0;
  Index steps_completed = 0;
  std::optional<Instability> failure;

  bool completed() const { return !failure.has_value(); }
  double initial_energy() const { return energy.empty() ? 0.0 : energy.front(); }
};

/// Executes N_t = round(t_end / dt) steps of the configured scheme,
/// recording the energy at every integer step. Blow-up (non-finite
/// state or energy above 1e6 H_0) stops the run and is reported in
/// RunRecord::failure; Newton failures propagate as StepFailure.
RunRecord run(const Model& model, const SchemeConfig& config,
              const PoissonState& initial, const RunOptions& options = {});

} // namespace hamflex

#endif
