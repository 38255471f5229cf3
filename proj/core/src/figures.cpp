// Copyright 2026 The mmimo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmimo/figures.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>

#include "mmimo/engine.hpp"
#include "mmimo/errors.hpp"
#include "mmimo/output.hpp"

namespace mmimo {
namespace {

constexpr int kDiagnosticAntennas = 100;
constexpr long long kDefaultDiagnosticSamples = 100000;
constexpr long long kDefaultSweepPairs = 10000;

// 41 points: step pi/20 across [-pi, pi].
std::vector<double> sweep_angles(int points) {
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(points));
  const double lo = -std::numbers::pi;
  const double hi = std::numbers::pi;
  for (int i = 0; i < points; ++i) {
    angles.push_back(lo + (hi - lo) * i / (points - 1));
  }
  return angles;
}

std::vector<std::string> write_correlation_pair(const std::string& out_dir,
                                                const std::string& stem,
                                                const ChannelModelSpec& spec,
                                                long long samples,
                                                std::uint64_t seed) {
  ensure_directory(out_dir);
  const std::filesystem::path base(out_dir);
  const Eigen::MatrixXcd empirical =
      empirical_correlation_mc(spec, kDiagnosticAntennas, samples, seed);
  const Eigen::MatrixXcd model =
      channel_second_moment(spec, kDiagnosticAntennas) / spec.beta_linear();
  const std::string empirical_path = (base / (stem + "_empirical.csv")).string();
  const std::string model_path = (base / (stem + "_model.csv")).string();
  write_text_file(empirical_path, render_correlation_csv(empirical));
  write_text_file(model_path, render_correlation_csv(model));
  return {empirical_path, model_path};
}

std::vector<std::string> run_cdf_preset(ExperimentConfig config,
                                        const std::string& name,
                                        std::uint64_t master_seed,
                                        const std::string& out_dir,
                                        const FigureOverrides& overrides) {
  config.master_seed = master_seed;
  if (overrides.drops) config.drops = *overrides.drops;
  if (overrides.fading_realizations) {
    config.fading_realizations = *overrides.fading_realizations;
  }
  if (overrides.workers) config.workers = *overrides.workers;

  const auto start = std::chrono::steady_clock::now();
  std::vector<SeReport> reports;
  for (const RunSpec& run : config.expand_runs()) {
    reports.push_back(run_experiment(run, config.master_seed));
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const std::filesystem::path base =
      std::filesystem::path(out_dir) / name;
  return write_run_artifacts(base.string(), config, reports, wall);
}

}  // namespace

DoubleScatteringParams reference_link_params(int scatterer_count,
                                             double antenna_spacing_wl) {
  const NetworkConfig net;
  DoubleScatteringParams p;
  p.scatterer_count = scatterer_count;
  p.antenna_spacing_wl = antenna_spacing_wl;
  p.azimuth_rad = 0.0;
  p.cluster_distance_km = 0.7 * net.cell_edge_distance_km();
  p.beta_linear = 1.0;
  return p;
}

Eigen::MatrixXcd empirical_correlation_mc(const ChannelModelSpec& spec,
                                          int antennas, long long samples,
                                          std::uint64_t seed) {
  if (samples < 1) {
    throw DomainError("empirical_correlation_mc: samples must be >= 1");
  }
  Rng rng(derive_stream_seed(seed, StreamKind::kDiagnostics));
  const ChannelSampler sampler(spec, antennas);
  EmpiricalCorrelation acc(antennas, spec.beta_linear());
  Eigen::VectorXcd h(antennas);
  for (long long n = 0; n < samples; ++n) {
    sampler.sample(rng, h);
    acc.add(h);
  }
  return acc.value();
}

std::vector<std::pair<double, double>> fp_angle_sweep(
    const std::optional<DoubleScatteringParams>& params, int antennas,
    const std::vector<double>& angles_rad, long long pairs,
    std::uint64_t seed) {
  if (angles_rad.empty()) throw DomainError("fp_angle_sweep: no angles");
  std::vector<std::pair<double, double>> points;
  points.reserve(angles_rad.size());
  for (std::size_t i = 0; i < angles_rad.size(); ++i) {
    Rng rng(derive_stream_seed(seed, StreamKind::kDiagnostics, i));
    ChannelModelSpec spec_a = ChannelModelSpec::rayleigh(1.0);
    ChannelModelSpec spec_b = spec_a;
    if (params) {
      DoubleScatteringParams pa = *params;
      pa.azimuth_rad = 0.0;
      DoubleScatteringParams pb = *params;
      pb.azimuth_rad = angles_rad[i];
      spec_a = ChannelModelSpec::double_scattering(pa);
      spec_b = ChannelModelSpec::double_scattering(pb);
    }
    points.emplace_back(
        angles_rad[i],
        favorable_propagation_stat(rng, spec_a, spec_b, antennas, pairs));
  }
  return points;
}

std::vector<std::string> figure_preset_names() {
  return {"fig1", "fig3", "fig4", "fig5", "fig7", "fig8", "fig9"};
}

std::vector<std::string> run_figure_preset(const std::string& name,
                                           std::uint64_t master_seed,
                                           const std::string& out_dir,
                                           const FigureOverrides& overrides) {
  const long long samples =
      overrides.samples.value_or(kDefaultDiagnosticSamples);

  if (name == "fig1") {
    return write_correlation_pair(out_dir, name,
                                  ChannelModelSpec::rayleigh(1.0), samples,
                                  master_seed);
  }
  if (name == "fig3" || name == "fig4") {
    const int scatterers = name == "fig3" ? 21 : 81;
    return write_correlation_pair(
        out_dir, name,
        ChannelModelSpec::double_scattering(reference_link_params(scatterers, 0.5)),
        samples, master_seed);
  }
  if (name == "fig5") {
    const long long pairs = overrides.samples.value_or(kDefaultSweepPairs);
    const std::vector<double> angles = sweep_angles(41);
    ensure_directory(out_dir);
    const std::filesystem::path base(out_dir);
    std::vector<std::string> written;
    const auto write_curve = [&](const std::string& stem,
                                 const std::optional<DoubleScatteringParams>& p) {
      const auto points =
          fp_angle_sweep(p, kDiagnosticAntennas, angles, pairs, master_seed);
      const std::string path = (base / (name + "_" + stem + ".csv")).string();
      write_text_file(path, render_xy_csv("angle_rad", "fp_statistic", points));
      written.push_back(path);
    };
    write_curve("rayleigh", std::nullopt);
    write_curve("s21", reference_link_params(21, 0.5));
    write_curve("s81", reference_link_params(81, 0.5));
    return written;
  }

  if (name == "fig7") {
    ExperimentConfig config;
    config.models = {ChannelModelKind::kRayleigh,
                     ChannelModelKind::kDoubleScattering};
    config.scatterer_counts = {11, 21, 41};
    config.antenna_spacings_wl = {0.5};
    config.detectors = {DetectorKind::kMmse};
    return run_cdf_preset(config, name, master_seed, out_dir, overrides);
  }
  if (name == "fig8") {
    ExperimentConfig config;
    config.models = {ChannelModelKind::kRayleigh,
                     ChannelModelKind::kDoubleScattering};
    config.scatterer_counts = {21};
    config.antenna_spacings_wl = {0.1, 0.5, 1.0};
    config.detectors = {DetectorKind::kMmse};
    return run_cdf_preset(config, name, master_seed, out_dir, overrides);
  }
  if (name == "fig9") {
    ExperimentConfig config;
    config.models = {ChannelModelKind::kDoubleScattering};
    config.scatterer_counts = {21};
    config.antenna_spacings_wl = {0.5};
    config.detectors = {DetectorKind::kMr, DetectorKind::kZf,
                        DetectorKind::kMmse};
    return run_cdf_preset(config, name, master_seed, out_dir, overrides);
  }
  throw ConfigError("unknown figure preset '" + name + "'");
}

}  // namespace mmimo
