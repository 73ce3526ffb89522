// SPDX-License-Identifier: Apache-2.0

#include "hamflex/integrators/run.hpp"

#include <chrono>
#include <cmath>

#include "hamflex/error.hpp"
#include "hamflex/integrators/schemes.hpp"

namespace hamflex {

namespace {

constexpr double kBlowupFactor = 1e6;

struct Recorder {
  const Model& model;
  const RunOptions& options;
  RunRecord& record;
  size_t next_snapshot = 0;

  // Returns false when the state has blown up.
  bool observe(Index step, double t, const Vector& q, const Vector& v,
               const Vector& s) {
    PoissonState view{q, v, s};
    if (!view.finite()) {
      record.failure = Instability{step, t, std::nan(""),
                                   "non-finite state entry"};
      return false;
    }
    const double h = energy(model.mass(), view);
    record.energy.push_back(h);
    const double h0 = record.energy.front();
    if (h0 > 0.0 && h > kBlowupFactor * h0) {
      record.failure =
          Instability{step, t, h, "energy exceeded 1e6 x initial energy"};
      return false;
    }
    if (options.sample_stride > 0 && step % options.sample_stride == 0)
      record.samples.push_back({step, t, q, v});
    if (next_snapshot < options.snapshot_steps.size() &&
        options.snapshot_steps[next_snapshot] == step) {
      record.snapshots.push_back({step, t, q, v, s});
      ++next_snapshot;
    }
    for (const Observer& obs : options.observers)
      obs(StepView{step, t, q, v, s});
    record.steps_completed = step;
    return true;
  }
};

} // namespace

RunRecord run(const Model& model, const SchemeConfig& config,
              const PoissonState& initial, const RunOptions& options) {
  config.validate();
  if (initial.q.size() != model.velocity_dim() ||
      initial.v.size() != model.velocity_dim() ||
      initial.s.size() != model.stress_dim())
    throw ConfigError("run: initial state does not match the model");

  const Index n_steps = static_cast<Index>(std::llround(config.t_end / config.dt));
  RunRecord record;
  record.dt = config.dt;
  record.steps = n_steps;
  record.energy.reserve(static_cast<size_t>(n_steps) + 1);

  Recorder recorder{model, options, record};

  const auto t0 = std::chrono::steady_clock::now();

  switch (config.scheme) {
  case Scheme::Leapfrog: {
    LeapfrogIntegrator integ(model, config.dt);
    StaggeredState st = integ.start(initial);
    if (!recorder.observe(0, 0.0, initial.q, initial.v, initial.s)) break;
    for (Index n = 1; n <= n_steps; ++n) {
      integ.step(st);
      if (!recorder.observe(n, n * config.dt, st.q_integer(config.dt), st.v,
                            st.s))
        break;
    }
    break;
  }
  case Scheme::LinearlyImplicit: {
    LinearlyImplicitIntegrator integ(model, config.dt, config.condensed,
                                     config.solver);
    StaggeredState st = integ.start(initial);
    if (!recorder.observe(0, 0.0, initial.q, initial.v, initial.s)) break;
    for (Index n = 1; n <= n_steps; ++n) {
      integ.step(st);
      if (!recorder.observe(n, n * config.dt, st.q_integer(config.dt), st.v,
                            st.s))
        break;
    }
    break;
  }
  case Scheme::DiscreteGradient: {
    DiscreteGradientIntegrator integ(model, config.dt, config.newton_tol,
                                     config.newton_max_iter,
                                     config.fd_jacobian);
    DiscreteGradientIntegrator::State st = integ.start(initial);
    if (!recorder.observe(0, 0.0, initial.q, initial.v, initial.s)) break;
    for (Index n = 1; n <= n_steps; ++n) {
      integ.step(st, n, n * config.dt);
      if (!recorder.observe(n, n * config.dt, st.q, st.v,
                            model.stress_from_q(st.q)))
        break;
    }
    break;
  }
  }

  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return record;
}

} // namespace hamflex
