// SPDX-License-Identifier: Apache-2.0

#include "hamflex/harness/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "hamflex/error.hpp"
#include "hamflex/fem3d/vtk.hpp"
#include "hamflex/harness/convergence.hpp"
#include "hamflex/harness/csv.hpp"
#include "hamflex/harness/norms.hpp"
#include "hamflex/harness/timing.hpp"
#include "hamflex/kernels/parallel.hpp"
#include "hamflex/version.hpp"

namespace hamflex::harness {

namespace {

std::vector<Scheme> parse_schemes(const std::string& list) {
  std::vector<Scheme> out;
  size_t start = 0;
  while (start <= list.size()) {
    const size_t comma = list.find(',', start);
    const std::string token =
        list.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!token.empty()) out.push_back(scheme_from_name(token));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw ConfigError("no schemes given");
  return out;
}

std::pair<int, int> parse_k_range(const std::string& spec) {
  const size_t dots = spec.find("..");
  if (dots == std::string::npos) {
    const int k = std::stoi(spec);
    return {k, k};
  }
  return {std::stoi(spec.substr(0, dots)), std::stoi(spec.substr(dots + 2))};
}

void write_energy_csv(const RunRecord& record, const std::string& path) {
  CsvWriter csv(path, {"step", "t", "energy"});
  for (size_t n = 0; n < record.energy.size(); ++n)
    csv.write_row({std::to_string(n),
                   format_double(static_cast<double>(n) * record.dt),
                   format_double(record.energy[n])});
}

std::string run_tag(const ExperimentConfig& config) {
  return experiment_name(config.experiment) + "_" +
         scheme_name(config.scheme) + "_k" + std::to_string(config.k);
}

int run_single(const ExperimentConfig& config) {
  const ExperimentSetup setup = build_experiment(config.experiment);
  const SchemeConfig scheme = make_scheme_config(setup, config);
  std::filesystem::create_directories(config.out_dir);

  RunOptions options;
  options.sample_stride = config.sample_stride;

  const Index n_steps =
      static_cast<Index>(std::llround(scheme.t_end / scheme.dt));
  const bool is_column = setup.column != nullptr;
  if (is_column) {
    for (int quarter = 1; quarter <= 4; ++quarter)
      options.snapshot_steps.push_back(
          static_cast<Index>(std::llround(n_steps * quarter / 4.0)));
  }

  std::vector<std::array<double, 4>> momentum_series;
  if (config.experiment == Experiment::ColumnFree) {
    const auto column = setup.column;
    options.observers.push_back([column, &momentum_series](const StepView& view) {
      PoissonState state{view.q, view.v, view.s};
      const Vector3 j = fem3d::angular_momentum(*column, state);
      momentum_series.push_back({view.t, j[0], j[1], j[2]});
    });
  }

  const RunRecord record = run(*setup.model, scheme, setup.initial, options);
  const std::string tag = run_tag(config);
  write_energy_csv(record, config.out_dir + "/energy_" + tag + ".csv");

  if (!momentum_series.empty()) {
    CsvWriter csv(config.out_dir + "/angular_momentum_" + tag + ".csv",
                  {"t", "jx", "jy", "jz"});
    for (const auto& row : momentum_series)
      csv.write_row(std::vector<double>{row[0], row[1], row[2], row[3]});
  }

  if (config.sample_stride > 0) {
    CsvWriter csv(config.out_dir + "/samples_" + tag + ".csv",
                  {"step", "t", "norm_q", "norm_v"});
    for (const Sample& sample : record.samples)
      csv.write_row({std::to_string(sample.step), format_double(sample.t),
                     format_double(sample.q.norm()),
                     format_double(sample.v.norm())});
  }

  if (is_column) {
    int snap = 0;
    for (const Snapshot& snapshot : record.snapshots) {
      ++snap;
      const Vector displacement = setup.column->to_full(snapshot.q);
      Vector frobenius(setup.column->mesh().n_cells());
      for (Index c = 0; c < frobenius.size(); ++c)
        frobenius[c] = snapshot.s.segment<6>(6 * c).norm();
      fem3d::VtkFields fields;
      fields.point_displacement = &displacement;
      fields.cell_scalar = &frobenius;
      fem3d::export_vtk(setup.column->mesh(), fields,
                        config.out_dir + "/" + tag + "_snap" +
                            std::to_string(snap) + ".vtk");
    }
  }

  const DriftReport drift = drift_report(record);
  if (!record.completed()) {
    std::printf("%s: UNSTABLE at step %lld (t = %.6g s) after %.2f s wall\n",
                tag.c_str(), static_cast<long long>(record.failure->step),
                record.failure->time, record.wall_seconds);
    return 3;
  }
  std::printf("%s: %lld steps to t = %.6g s, max |H-H0|/H0 = %.3e, "
              "mean |dH| = %.3e, wall %.2f s\n",
              tag.c_str(), static_cast<long long>(record.steps),
              scheme.t_end, drift.max_relative, drift.mean_step_diff,
              record.wall_seconds);
  return 0;
}

void add_common(CLI::App* cmd, ExperimentConfig& config,
                std::string& scheme_name_opt) {
  cmd->add_option("--scheme", scheme_name_opt,
                  "Integrator: leapfrog | li | dg");
  cmd->add_option("--k", config.k, "Time step divisor exponent, dt_base/2^k")
      ->check(CLI::Range(0, 12));
  cmd->add_option("--out", config.out_dir, "Output directory");
  cmd->add_option("--t-end", config.t_end_override, "Final time override [s]");
  cmd->add_option("--stride", config.sample_stride,
                  "Record samples every N steps (0 = off)");
  cmd->add_option("--newton-tol", config.newton_tol,
                  "Relative Newton residual tolerance (dg)");
  cmd->add_option("--newton-max-iter", config.newton_max_iter,
                  "Newton iteration cap (dg)");
  cmd->add_option("--seed", config.seed,
                  "Seed reserved for randomized self-check modes");
  cmd->add_option("--threads", config.threads,
                  "Kernel threads (0 = all cores, 1 = serial reference)");
}

} // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Structure-preserving integrators for geometrically nonlinear "
               "mechanics"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config");
  app.require_subcommand(1);

  ExperimentConfig config;
  std::string scheme_opt = "li";
  std::string solver_opt = "direct";
  std::string schemes_opt = "leapfrog,li,dg";
  std::string k_range_opt = "0..5";
  std::string experiment_opt = "duffing";
  std::string cache_dir = "ref_cache";
  Index timing_steps = 100;

  CLI::App* duffing = app.add_subcommand("duffing", "Cubic oscillator benchmark");
  CLI::App* beam = app.add_subcommand("beam", "Moderate-rotation beam benchmark");
  CLI::App* column = app.add_subcommand("column", "Nonlinear elasticity column");
  for (CLI::App* cmd : {duffing, beam, column}) {
    add_common(cmd, config, scheme_opt);
    cmd->add_option("--solver", solver_opt,
                    "Velocity solve backend: direct | cg");
  }
  column->add_flag("--free-bcs", config.free_bcs,
                   "Drop the base clamp (angular-momentum study)");

  CLI::App* convergence =
      app.add_subcommand("convergence", "Error-vs-dt table for one experiment");
  convergence->add_option("--experiment", experiment_opt,
                          "duffing | beam | column");
  convergence->add_option("--schemes", schemes_opt, "Comma-separated schemes");
  convergence->add_option("--k", k_range_opt, "Range of exponents, e.g. 0..5");
  convergence->add_option("--out", config.out_dir, "Output directory");
  convergence->add_option("--t-end", config.t_end_override,
                          "Comparison window override [s]");
  convergence->add_option("--cache", cache_dir,
                          "Reference cache directory ('' disables)");
  convergence->add_option("--threads", config.threads, "Kernel threads");
  convergence->add_option("--seed", config.seed, "Reserved");

  CLI::App* drift = app.add_subcommand(
      "drift", "Energy drift statistics of a single run");
  drift->add_option("--experiment", experiment_opt, "duffing | beam | column");
  add_common(drift, config, scheme_opt);

  CLI::App* timing = app.add_subcommand(
      "timing", "Per-step wall-time comparison at equal dt");
  timing->add_option("--experiment", experiment_opt, "duffing | beam | column");
  timing->add_option("--schemes", schemes_opt, "Comma-separated schemes");
  timing->add_option("--k", config.k, "Time step exponent");
  timing->add_option("--steps", timing_steps, "Steps to time");
  timing->add_option("--out", config.out_dir, "Output directory");
  timing->add_option("--threads", config.threads, "Kernel threads");
  timing->add_option("--seed", config.seed, "Reserved");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (config.threads != 0) kernels::set_num_threads(config.threads);
    config.scheme = scheme_from_name(scheme_opt);
    if (solver_opt == "cg")
      config.solver = SolverBackend::ConjugateGradient;
    else if (solver_opt != "direct")
      throw ConfigError("unknown solver '" + solver_opt + "'");

    if (duffing->parsed() || beam->parsed() || column->parsed()) {
      config.experiment = duffing->parsed() ? Experiment::Duffing
                          : beam->parsed()  ? Experiment::Beam
                                            : Experiment::Column;
      if (column->parsed() && config.free_bcs)
        config.experiment = Experiment::ColumnFree;
      return run_single(config);
    }

    if (convergence->parsed()) {
      const Experiment experiment = experiment_from_name(experiment_opt);
      const ExperimentSetup setup = build_experiment(experiment);
      ConvergenceOptions options;
      std::tie(options.k_min, options.k_max) = parse_k_range(k_range_opt);
      options.t_end_override = config.t_end_override;
      options.cache_dir = cache_dir;
      const auto rows =
          convergence_table(setup, experiment, parse_schemes(schemes_opt), options);
      std::filesystem::create_directories(config.out_dir);
      const std::string path = config.out_dir + "/convergence_" +
                               experiment_name(experiment) + ".csv";
      write_convergence_csv(rows, path);
      for (const auto& row : rows) {
        if (row.unstable) {
          std::printf("%-8s k=%d dt=%.4e  unstable\n",
                      scheme_name(row.scheme).c_str(), row.k, row.dt);
        } else {
          std::string rate;
          if (row.has_rate) {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "  rate_q=%.2f rate_v=%.2f",
                          row.rate_q, row.rate_v);
            rate = buf;
          }
          std::printf("%-8s k=%d dt=%.4e  err_q=%.6e err_v=%.6e%s\n",
                      scheme_name(row.scheme).c_str(), row.k, row.dt,
                      row.err_q, row.err_v, rate.c_str());
        }
      }
      std::printf("wrote %s (%zu rows)\n", path.c_str(), rows.size());
      return 0;
    }

    if (drift->parsed()) {
      config.experiment = experiment_from_name(experiment_opt);
      if (config.free_bcs) config.experiment = Experiment::ColumnFree;
      const ExperimentSetup setup = build_experiment(config.experiment);
      const SchemeConfig scheme = make_scheme_config(setup, config);
      const RunRecord record = run(*setup.model, scheme, setup.initial);
      std::filesystem::create_directories(config.out_dir);
      write_energy_csv(record, config.out_dir + "/energy_" + run_tag(config) +
                                   ".csv");
      if (!record.completed()) {
        std::printf("unstable at step %lld\n",
                    static_cast<long long>(record.failure->step));
        return 3;
      }
      const DriftReport report = drift_report(record);
      std::printf("max |H-H0|/H0 = %.6e, mean |H_{n+1}-H_n| = %.6e\n",
                  report.max_relative, report.mean_step_diff);
      return 0;
    }

    if (timing->parsed()) {
      const Experiment experiment = experiment_from_name(experiment_opt);
      const ExperimentSetup setup = build_experiment(experiment);
      const auto rows = timing_table(setup, parse_schemes(schemes_opt),
                                     config.k, timing_steps);
      std::filesystem::create_directories(config.out_dir);
      const std::string path = config.out_dir + "/timing_" +
                               experiment_name(experiment) + ".csv";
      write_timing_csv(rows, path);
      for (const auto& row : rows)
        std::printf("%-8s dt=%.4e  %.3f ms/step\n",
                    scheme_name(row.scheme).c_str(), row.dt,
                    1e3 * row.seconds_per_step);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const StepFailure& e) {
    std::fprintf(stderr, "simulation failed: %s\n", e.what());
    return 3;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}

} // namespace hamflex::harness
