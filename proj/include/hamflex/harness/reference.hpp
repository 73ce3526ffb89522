// SPDX-License-Identifier: Apache-2.0

#ifndef HAMFLEX_HARNESS_REFERENCE_HPP
#define HAMFLEX_HARNESS_REFERENCE_HPP

#include <string>
#include <vector>

#include "hamflex/harness/experiment.hpp"
#include "hamflex/integrators/run.hpp"

namespace hamflex::harness {

/// Leapfrog reference trajectory: states sampled on the dt_base grid
/// (every 2^ref_k fine steps), which is where the error norms are
/// evaluated. References are cached on disk keyed by experiment,
/// reference step, window and code version, since they dominate the
/// cost of a convergence sweep.
struct ReferenceSolution {
  std::vector<Sample> samples;
  double dt_sample = 0.0;
};

ReferenceSolution compute_reference(const ExperimentSetup& setup,
                                    double t_end);

/// Cached variant; cache_dir is created on demand. An empty cache_dir
/// disables caching.
ReferenceSolution get_reference(const ExperimentSetup& setup,
                                Experiment experiment, double t_end,
                                const std::string& cache_dir);

} // namespace hamflex::harness

#endif
