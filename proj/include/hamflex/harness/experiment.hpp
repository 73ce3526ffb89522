// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_HARNESS_EXPERIMENT_HPP
#define HAMFLEX_HARNESS_EXPERIMENT_HPP

#include <memory>
#include <optional>
#include <string>

#include "hamflex/core/system.hpp"
#include "hamflex/fem1d/beam.hpp"
#include "hamflex/fem3d/elasticity.hpp"
#include "hamflex/integrators/config.hpp"
#include "hamflex/models/duffing.hpp"

namespace hamflex::harness {

enum class Experiment { Duffing, Beam, Column, ColumnFree };

Experiment experiment_from_name(const std::string& name);
std::string experiment_name(Experiment e);

/// Declarative description of a single run.
struct ExperimentConfig {
  Experiment experiment = Experiment::Duffing;
  Scheme scheme = Scheme::LinearlyImplicit;
  int k = 0; // dt = dt_base / 2^k
  double t_end_override = -1.0;
  std::string out_dir = ".";
  SolverBackend solver = SolverBackend::Direct;
  Index sample_stride = 0;
  bool free_bcs = false;
  double newton_tol = 1e-12;
  int newton_max_iter = 25;
  unsigned seed = 0; // reserved for randomized self-check modes
  int threads = 0;   // 0 keeps the library default

  void validate() const;
};

/// A constructed experiment: the model, its initial state and the
/// benchmark time parameters. Models are immutable and shareable
/// across concurrent runs.
struct ExperimentSetup {
  std::shared_ptr<Model> model;
  PoissonState initial;
  double dt_base = 0.0;
  double default_t_end = 0.0;
  /// Window used by convergence studies (differs from default_t_end
  /// for the beam, which is compared on the first tenth of a bending
  /// period).
  double convergence_t_end = 0.0;
  /// Stride exponent of the stored leapfrog reference: dt_ref =
  /// dt_base / 2^ref_k. Unset when an exact solution exists.
  std::optional<int> ref_k;
  std::optional<DuffingParams> duffing;
  /// Non-null for the column experiments.
  std::shared_ptr<const fem3d::ElasticityModel> column;
  std::shared_ptr<const fem1d::BeamModel> beam;
};

ExperimentSetup build_experiment(Experiment experiment);

/// SchemeConfig for a setup at time-step level k.
SchemeConfig make_scheme_config(const ExperimentSetup& setup,
                                const ExperimentConfig& config);

} // namespace hamflex::harness

#endif
