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

#ifndef MMIMO_FIGURES_HPP_
#define MMIMO_FIGURES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmimo/channel.hpp"
#include "mmimo/config.hpp"

namespace mmimo {

// Double-scattering parameters of the diagnostic reference link: a user at
// the center of the area seen from a corner BS of the default network
// (distance side/sqrt(2) km, broadside azimuth 0, beta normalized to 1).
DoubleScatteringParams reference_link_params(int scatterer_count,
                                             double antenna_spacing_wl);

// Monte-Carlo estimate of E{h h^H} / beta over `samples` draws.
Eigen::MatrixXcd empirical_correlation_mc(const ChannelModelSpec& spec,
                                          int antennas, long long samples,
                                          std::uint64_t seed);

// Favorable-propagation statistic versus the azimuth of the second user,
// first user fixed at azimuth 0.  Returns (angle_rad, statistic) pairs.
std::vector<std::pair<double, double>> fp_angle_sweep(
    const std::optional<DoubleScatteringParams>& params, int antennas,
    const std::vector<double>& angles_rad, long long pairs,
    std::uint64_t seed);

// Named figure presets:
//   fig1  empirical correlation magnitude, Rayleigh, M = 100
//   fig3  empirical correlation magnitude, double scattering S = 21
//   fig4  empirical correlation magnitude, double scattering S = 81
//   fig5  favorable-propagation statistic vs user angle (Rayleigh, S = 21,
//         S = 81)
//   fig7  SE CDFs, MMSE, Rayleigh vs S in {11, 21, 41} at d_l = 0.5
//   fig8  SE CDFs, MMSE, Rayleigh vs d_l in {0.1, 0.5, 1} at S = 21
//   fig9  SE CDFs, MR/ZF/MMSE, double scattering S = 21, d_l = 0.5
std::vector<std::string> figure_preset_names();

struct FigureOverrides {
  std::optional<int> drops;
  std::optional<int> fading_realizations;
  std::optional<int> workers;
  std::optional<long long> samples;  // diagnostic sample/pair count
};

// Runs one preset and writes its CSV artifacts into out_dir; returns the
// written paths.  Unknown names raise ConfigError.
std::vector<std::string> run_figure_preset(const std::string& name,
                                           std::uint64_t master_seed,
                                           const std::string& out_dir,
                                           const FigureOverrides& overrides = {});

}  // namespace mmimo

#endif  // MMIMO_FIGURES_HPP_
