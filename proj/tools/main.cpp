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

// Command-line front end: multi-cell massive MIMO uplink simulation with
// double-scattering channels, LMMSE estimation and linear detection.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmimo/channel.hpp"
#include "mmimo/config.hpp"
#include "mmimo/engine.hpp"
#include "mmimo/errors.hpp"
#include "mmimo/figures.hpp"
#include "mmimo/output.hpp"

namespace {

using namespace mmimo;

struct CommonOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> drops;
  std::optional<int> realizations;
  std::optional<int> workers;
  std::string out_dir = "out";
};

void add_common_options(CLI::App* cmd, CommonOptions& opts, bool with_counts) {
  cmd->add_option("--seed", opts.seed, "Master seed (default from config)");
  cmd->add_option("--out", opts.out_dir, "Output directory")
      ->capture_default_str();
  if (with_counts) {
    cmd->add_option("--drops", opts.drops, "Number of user drops");
    cmd->add_option("--realizations", opts.realizations,
                    "Fading realizations per drop");
  }
  cmd->add_option("--workers", opts.workers,
                  "Worker threads (0 = hardware concurrency)");
}

void apply_overrides(ExperimentConfig& config, const CommonOptions& opts) {
  if (opts.seed) config.master_seed = *opts.seed;
  if (opts.drops) config.drops = *opts.drops;
  if (opts.realizations) config.fading_realizations = *opts.realizations;
  if (opts.workers) config.workers = *opts.workers;
}

int run_sweep(const ExperimentConfig& config, const std::string& out_dir,
              bool dump_geometry) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<SeReport> reports;
  for (const RunSpec& run : config.expand_runs()) {
    std::cerr << "running model=" << run_model_label(run.model);
    if (run.model.kind == ChannelModelTemplate::Kind::kDoubleScattering) {
      std::cerr << " S=" << run.model.scatterer_count
                << " d_l=" << run.model.antenna_spacing_wl;
    }
    std::cerr << " drops=" << run.drops
              << " realizations=" << run.fading_realizations << std::endl;
    reports.push_back(run_experiment(run, config.master_seed));
    for (const DetectorReport& det : reports.back().detectors) {
      std::cerr << "  " << detector_name(det.kind)
                << ": mean SE = " << det.mean_se()
                << " bit/s/Hz, 95%-likely SE = " << det.likely95_se()
                << " bit/s/Hz" << std::endl;
    }
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  const auto paths = write_run_artifacts(out_dir, config, reports, wall);
  for (const std::string& path : paths) std::cout << path << "\n";

  if (dump_geometry) {
    Rng rng(derive_stream_seed(config.master_seed, StreamKind::kUserDrop, 0));
    const UserDrop drop = drop_users(rng, config.network,
                                     place_base_stations(config.network),
                                     config.broadside_rad);
    const std::string path =
        (std::filesystem::path(out_dir) / "drop0.csv").string();
    write_text_file(path, render_user_drop_csv(drop));
    std::cout << path << "\n";
  }
  return 0;
}

int cmd_run(const std::string& config_path, const CommonOptions& opts,
            bool dump_geometry) {
  ExperimentConfig config =
      config_path.empty() ? default_preset() : parse_config_file(config_path);
  apply_overrides(config, opts);
  config.validate();
  return run_sweep(config, opts.out_dir, dump_geometry);
}

int cmd_smoke(const CommonOptions& opts) {
  ExperimentConfig config = smoke_preset();
  apply_overrides(config, opts);
  const std::string out =
      (std::filesystem::path(opts.out_dir) / "smoke").string();
  const int rc = run_sweep(config, out, false);
  std::cerr << "smoke run complete" << std::endl;
  return rc;
}

int cmd_figure(const std::string& preset, const CommonOptions& opts,
               std::optional<long long> samples) {
  FigureOverrides overrides;
  overrides.drops = opts.drops;
  overrides.fading_realizations = opts.realizations;
  overrides.workers = opts.workers;
  overrides.samples = samples;
  const std::uint64_t seed = opts.seed.value_or(1);
  for (const std::string& path :
       run_figure_preset(preset, seed, opts.out_dir, overrides)) {
    std::cout << path << "\n";
  }
  return 0;
}

int cmd_diag_corr(const std::string& model, int scatterers, double spacing,
                  int antennas, long long samples, const CommonOptions& opts) {
  const ChannelModelSpec spec =
      model == "rayleigh"
          ? ChannelModelSpec::rayleigh(1.0)
          : ChannelModelSpec::double_scattering(
                reference_link_params(scatterers, spacing));
  const Eigen::MatrixXcd empirical = empirical_correlation_mc(
      spec, antennas, samples, opts.seed.value_or(1));
  const Eigen::MatrixXcd closed_form =
      channel_second_moment(spec, antennas) / spec.beta_linear();

  ensure_directory(opts.out_dir);
  const std::filesystem::path base(opts.out_dir);
  const std::string empirical_path = (base / "diag_corr_empirical.csv").string();
  const std::string model_path = (base / "diag_corr_model.csv").string();
  write_text_file(empirical_path, render_correlation_csv(empirical));
  write_text_file(model_path, render_correlation_csv(closed_form));

  const double rel_error =
      (empirical - closed_form).norm() / closed_form.norm();
  std::cout << empirical_path << "\n" << model_path << "\n";
  std::cerr << "relative Frobenius error vs closed form: " << rel_error
            << std::endl;
  return 0;
}

int cmd_diag_fp(const std::string& model, int scatterers, double spacing,
                int antennas, long long pairs, int points,
                const CommonOptions& opts) {
  std::optional<DoubleScatteringParams> params;
  if (model != "rayleigh") params = reference_link_params(scatterers, spacing);
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    angles.push_back(-1.5707963267948966 +
                     3.141592653589793 * i / (points - 1));
  }
  const auto sweep =
      fp_angle_sweep(params, antennas, angles, pairs, opts.seed.value_or(1));

  ensure_directory(opts.out_dir);
  const std::string path =
      (std::filesystem::path(opts.out_dir) / "diag_fp.csv").string();
  write_text_file(path, render_xy_csv("angle_rad", "fp_statistic", sweep));
  std::cout << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Multi-cell massive MIMO uplink simulator: double-scattering channels, "
      "LMMSE channel estimation, MR/ZF/MMSE detection"};
  app.require_subcommand(1);

  std::string config_path;
  bool dump_geometry = false;
  CommonOptions run_opts;
  CLI::App* run = app.add_subcommand(
      "run", "Run the configured Monte-Carlo sweep and write CSV artifacts");
  run->add_option("--config", config_path, "key = value config file")
      ->check(CLI::ExistingFile);
  run->add_flag("--dump-geometry", dump_geometry,
                "Also write the geometry of drop 0");
  add_common_options(run, run_opts, true);

  CommonOptions smoke_opts;
  CLI::App* smoke = app.add_subcommand(
      "smoke", "Seconds-scale end-to-end run on a reduced preset");
  add_common_options(smoke, smoke_opts, true);

  std::string preset;
  std::optional<long long> figure_samples;
  CommonOptions figure_opts;
  CLI::App* figure = app.add_subcommand(
      "figure", "Produce the CSV data behind one named figure preset");
  figure->add_option("--preset", preset, "One of fig1 fig3 fig4 fig5 fig7 fig8 fig9")
      ->required();
  figure->add_option("--samples", figure_samples,
                     "Sample/pair count for the diagnostic presets");
  add_common_options(figure, figure_opts, true);

  std::string diag_what;
  std::string diag_model = "double_scattering";
  int diag_scatterers = 21;
  double diag_spacing = 0.5;
  int diag_antennas = 100;
  long long diag_samples = 100000;
  int diag_points = 41;
  CommonOptions diag_opts;
  CLI::App* diag = app.add_subcommand(
      "diag", "Correlation and favorable-propagation diagnostics");
  diag->add_option("--what", diag_what, "corr or fp")
      ->required()
      ->check(CLI::IsMember({"corr", "fp"}));
  diag->add_option("--model", diag_model, "rayleigh or double_scattering")
      ->check(CLI::IsMember({"rayleigh", "double_scattering"}))
      ->capture_default_str();
  diag->add_option("--scatterers", diag_scatterers, "Scatterer count S")
      ->capture_default_str();
  diag->add_option("--spacing-wl", diag_spacing,
                   "Antenna spacing in wavelengths")
      ->capture_default_str();
  diag->add_option("--antennas", diag_antennas, "Array size M")
      ->capture_default_str();
  diag->add_option("--samples", diag_samples, "Samples (corr) or pairs (fp)")
      ->capture_default_str();
  diag->add_option("--points", diag_points, "Angle grid size for fp")
      ->capture_default_str();
  add_common_options(diag, diag_opts, false);

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(config_path, run_opts, dump_geometry);
    if (smoke->parsed()) return cmd_smoke(smoke_opts);
    if (figure->parsed()) return cmd_figure(preset, figure_opts, figure_samples);
    if (diag->parsed()) {
      if (diag_what == "corr") {
        return cmd_diag_corr(diag_model, diag_scatterers, diag_spacing,
                             diag_antennas, diag_samples, diag_opts);
      }
      return cmd_diag_fp(diag_model, diag_scatterers, diag_spacing,
                         diag_antennas, diag_samples, diag_points, diag_opts);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << std::endl;
    return 3;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << std::endl;
    return 4;
  }
}
