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

#ifndef MMIMO_CONFIG_HPP_
#define MMIMO_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmimo/engine.hpp"

namespace mmimo {

enum class ChannelModelKind { kRayleigh, kDoubleScattering };

std::string_view model_name(ChannelModelKind kind);
ChannelModelKind model_from_name(std::string_view name);  // throws ConfigError

// Complete experiment description: network preset plus the fading-model
// sweep.  Every field maps to one key of the key = value config format; the
// defaults reproduce the standard four-cell evaluation setup.
struct ExperimentConfig {
  NetworkConfig network;
  double carrier_frequency_hz = kDefaultCarrierHz;
  int pilot_reuse = 4;
  std::vector<ChannelModelKind> models = {ChannelModelKind::kRayleigh,
                                          ChannelModelKind::kDoubleScattering};
  std::vector<int> scatterer_counts = {11, 21, 41};
  std::vector<double> antenna_spacings_wl = {0.5};
  double scatterer_spacing_wl = 10.0;
  double bs_angular_spread_rad = 2.0943951023931953;
  std::optional<double> broadside_rad;  // nullopt = toward area center
  std::vector<DetectorKind> detectors = {DetectorKind::kMmse};
  int drops = 100;
  int fading_realizations = 1000;
  std::uint64_t master_seed = 1;
  int workers = 0;

  bool operator==(const ExperimentConfig&) const = default;

  void validate() const;  // throws ConfigError naming the offending key
  double wavelength_m() const;

  // The sweep as concrete runs: one per model point (Rayleigh once,
  // double scattering for every scatterer count x antenna spacing).  All
  // runs share the master seed, so model comparisons see common randomness.
  std::vector<RunSpec> expand_runs() const;
};

// key = value parser.  Lines starting with '#' or ';' are comments; an
// optional leading [config] section header is accepted and parsing stops at
// any other [section] header (so a config can be read back from a run
// record).  Unknown keys raise ConfigError naming the key.  Omitted keys
// keep their defaults.
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig parse_config_file(const std::string& path);

// Canonical serialization: every key on one line, fixed order, shortest
// round-trip number formatting.  parse_config_text(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& config);

// FNV-1a 64-bit hash of the canonical serialization.
std::uint64_t config_hash(const ExperimentConfig& config);

// Built-in presets: the full-scale default setup and a seconds-scale smoke
// configuration exercising every model and detector.
ExperimentConfig default_preset();
ExperimentConfig smoke_preset();

}  // namespace mmimo

#endif  // MMIMO_CONFIG_HPP_
