// SPDX-License-Identifier: Apache-2.0

#include "hamflex/harness/experiment.hpp"

#include <cmath>

#include "hamflex/error.hpp"

namespace hamflex::harness {

Experiment experiment_from_name(const std::string& name) {
  if (name == "duffing") return Experiment::Duffing;
  if (name == "beam") return Experiment::Beam;
  if (name == "column") return Experiment::Column;
  if (name == "column_free") return Experiment::ColumnFree;
  throw ConfigError("unknown experiment '" + name + "'");
}

std::string experiment_name(Experiment e) {
  switch (e) {
  case Experiment::Duffing: return "duffing";
  case Experiment::Beam: return "beam";
  case Experiment::Column: return "column";
  case Experiment::ColumnFree: return "column_free";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (k < 0 || k > 12)
    throw ConfigError("ExperimentConfig: k must lie in [0, 12]");
  if (free_bcs && experiment != Experiment::Column &&
      experiment != Experiment::ColumnFree)
    throw ConfigError("ExperimentConfig: --free-bcs applies to the column");
}

ExperimentSetup build_experiment(Experiment experiment) {
  ExperimentSetup setup;
  switch (experiment) {
  case Experiment::Duffing: {
    DuffingParams params;
    auto model = duffing_system(params);
    setup.initial = model->initial_state();
    setup.model = std::move(model);
    setup.dt_base = DuffingParams::dt_base;
    setup.default_t_end = 100.0 * params.period();
    setup.convergence_t_end = setup.default_t_end;
    setup.duffing = params;
    return setup;
  }
  case Experiment::Beam: {
    fem1d::BeamParams params;
    fem1d::Mesh1D mesh{params.n_el, params.length};
    std::shared_ptr<fem1d::BeamModel> model =
        fem1d::assemble_beam(mesh, params, fem1d::BeamBc::SimplySupported);
    setup.initial = fem1d::beam_initial_state(params, *model);
    setup.model = model;
    setup.beam = model;
    setup.dt_base = params.dt_base;
    setup.default_t_end = params.t_end();
    setup.convergence_t_end = params.t1_bending() / 10.0;
    setup.ref_k = 6;
    return setup;
  }
  case Experiment::Column:
  case Experiment::ColumnFree: {
    fem3d::ColumnParams params;
    const fem3d::TetMesh mesh = fem3d::build_box_mesh(
        params.nx, params.ny, params.nz, params.lx, params.ly, params.lz);
    std::shared_ptr<fem3d::ElasticityModel> model = fem3d::assemble_elasticity(
        mesh, params, experiment == Experiment::Column);
    setup.initial = fem3d::column_initial_state(params, *model);
    setup.model = model;
    setup.column = model;
    setup.dt_base = params.dt_base();
    setup.default_t_end = params.t_end;
    setup.convergence_t_end = params.t_end;
    setup.ref_k = 7;
    return setup;
  }
  }
  throw ConfigError("build_experiment: bad experiment");
}

SchemeConfig make_scheme_config(const ExperimentSetup& setup,
                                const ExperimentConfig& config) {
  config.validate();
  SchemeConfig scheme;
  scheme.dt = setup.dt_base / std::pow(2.0, config.k);
  scheme.t_end =
      config.t_end_override > 0.0 ? config.t_end_override : setup.default_t_end;
  scheme.scheme = config.scheme;
  scheme.newton_tol = config.newton_tol;
  scheme.newton_max_iter = config.newton_max_iter;
  scheme.solver = config.solver;
  scheme.condensed = true;
  return scheme;
}

} // namespace hamflex::harness
