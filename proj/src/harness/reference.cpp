// SPDX-License-Identifier: Apache-2.0

#include "hamflex/harness/reference.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "hamflex/error.hpp"
#include "hamflex/version.hpp"

namespace hamflex::harness {

namespace {

constexpr char kMagic[8] = {'H', 'F', 'R', 'E', 'F', '0', '0', '1'};

std::string cache_path(const std::string& cache_dir, Experiment experiment,
                       int ref_k, double t_end) {
  char tag[64];
  std::snprintf(tag, sizeof(tag), "_k%d_T%.12e_v%s.ref", ref_k, t_end,
                kVersion);
  return cache_dir + "/" + experiment_name(experiment) + tag;
}

bool load_reference(const std::string& path, ReferenceSolution& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) return false;
  std::int64_t count = 0, dim = 0;
  in.read(reinterpret_cast<char*>(&out.dt_sample), sizeof(double));
  in.read(reinterpret_cast<char*>(&count), sizeof(count));
  in.read(reinterpret_cast<char*>(&dim), sizeof(dim));
  if (!in || count < 0 || dim <= 0) return false;
  out.samples.resize(static_cast<size_t>(count));
  for (auto& sample : out.samples) {
    std::int64_t step = 0;
    in.read(reinterpret_cast<char*>(&step), sizeof(step));
    in.read(reinterpret_cast<char*>(&sample.t), sizeof(double));
    sample.step = step;
    sample.q.resize(dim);
    sample.v.resize(dim);
    in.read(reinterpret_cast<char*>(sample.q.data()),
            static_cast<std::streamsize>(sizeof(double) * dim));
    in.read(reinterpret_cast<char*>(sample.v.data()),
            static_cast<std::streamsize>(sizeof(double) * dim));
    if (!in) return false;
  }
  return true;
}

void save_reference(const std::string& path, const ReferenceSolution& ref) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("reference cache: cannot write '" + path + "'");
  out.write(kMagic, 8);
  const std::int64_t count = static_cast<std::int64_t>(ref.samples.size());
  const std::int64_t dim =
      ref.samples.empty() ? 0 : static_cast<std::int64_t>(ref.samples[0].q.size());
  out.write(reinterpret_cast<const char*>(&ref.dt_sample), sizeof(double));
  out.write(reinterpret_cast<const char*>(&count), sizeof(count));
  out.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
  for (const auto& sample : ref.samples) {
    const std::int64_t step = sample.step;
    out.write(reinterpret_cast<const char*>(&step), sizeof(step));
    out.write(reinterpret_cast<const char*>(&sample.t), sizeof(double));
    out.write(reinterpret_cast<const char*>(sample.q.data()),
              static_cast<std::streamsize>(sizeof(double) * sample.q.size()));
    out.write(reinterpret_cast<const char*>(sample.v.data()),
              static_cast<std::streamsize>(sizeof(double) * sample.v.size()));
  }
  if (!out) throw FileError("reference cache: write failed for '" + path + "'");
}

} // namespace

ReferenceSolution compute_reference(const ExperimentSetup& setup,
                                    double t_end) {
  if (!setup.ref_k)
    throw ConfigError("compute_reference: experiment has an exact solution");
  const int ref_k = *setup.ref_k;
  SchemeConfig config;
  config.dt = setup.dt_base / std::pow(2.0, ref_k);
  config.t_end = t_end;
  config.scheme = Scheme::Leapfrog;
  RunOptions options;
  options.sample_stride = Index(1) << ref_k;
  const RunRecord record = run(*setup.model, config, setup.initial, options);
  if (!record.completed())
    throw NumericalError("compute_reference: leapfrog reference run became "
                         "unstable at step " +
                         std::to_string(record.failure->step));
  ReferenceSolution out;
  out.samples = record.samples;
  out.dt_sample = setup.dt_base;
  return out;
}

ReferenceSolution get_reference(const ExperimentSetup& setup,
                                Experiment experiment, double t_end,
                                const std::string& cache_dir) {
  if (cache_dir.empty()) return compute_reference(setup, t_end);
  std::filesystem::create_directories(cache_dir);
  const std::string path =
      cache_path(cache_dir, experiment, setup.ref_k.value_or(0), t_end);
  ReferenceSolution cached;
  if (load_reference(path, cached)) return cached;
  ReferenceSolution fresh = compute_reference(setup, t_end);
  save_reference(path, fresh);
  return fresh;
}

} // namespace hamflex::harness
