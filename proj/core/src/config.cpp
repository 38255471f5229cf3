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

#include "mmimo/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "mmimo/errors.hpp"
#include "mmimo/output.hpp"

namespace mmimo {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> items;
  while (!value.empty()) {
    const std::size_t comma = value.find(',');
    items.push_back(trim(value.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return items;
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto result = std::from_chars(value.data(), value.data() + value.size(), out);
  if (result.ec != std::errc{} || result.ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + std::string(key) +
                      "': invalid number '" + std::string(value) + "'");
  }
  return out;
}

long long parse_int(std::string_view key, std::string_view value) {
  long long out = 0;
  const auto result = std::from_chars(value.data(), value.data() + value.size(), out);
  if (result.ec != std::errc{} || result.ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + std::string(key) +
                      "': invalid integer '" + std::string(value) + "'");
  }
  return out;
}

std::uint64_t parse_uint64(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  const auto result = std::from_chars(value.data(), value.data() + value.size(), out);
  if (result.ec != std::errc{} || result.ptr != value.data() + value.size()) {
    throw ConfigError("config key '" + std::string(key) +
                      "': invalid unsigned integer '" + std::string(value) + "'");
  }
  return out;
}

int parse_bounded_int(std::string_view key, std::string_view value) {
  const long long v = parse_int(key, value);
  if (v < INT32_MIN || v > INT32_MAX) {
    throw ConfigError("config key '" + std::string(key) + "': value out of range");
  }
  return static_cast<int>(v);
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("config key '" + std::string(key) +
                    "': expected true or false, got '" + std::string(value) +
                    "'");
}

template <typename T>
std::string join_list(const std::vector<T>& items,
                      std::string (*format)(const T&)) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += format(items[i]);
  }
  return out;
}

void apply_key(ExperimentConfig& config, std::string_view key,
               std::string_view value) {
  NetworkConfig& net = config.network;
  if (key == "cells") {
    net.cells = parse_bounded_int(key, value);
  } else if (key == "users_per_cell") {
    net.users_per_cell = parse_bounded_int(key, value);
  } else if (key == "bs_antennas") {
    net.bs_antennas = parse_bounded_int(key, value);
  } else if (key == "coherence_symbols") {
    net.coherence_symbols = parse_bounded_int(key, value);
  } else if (key == "area_side_km") {
    net.area_side_km = parse_double(key, value);
  } else if (key == "min_bs_user_distance_km") {
    net.min_bs_user_distance_km = parse_double(key, value);
  } else if (key == "shadowing_std_db") {
    net.shadowing_std_db = parse_double(key, value);
  } else if (key == "serving_strongest") {
    net.serving_strongest = parse_bool(key, value);
  } else if (key == "serving_margin_db") {
    net.serving_margin_db = parse_double(key, value);
  } else if (key == "noise_power_dbm") {
    net.noise_power_dbm = parse_double(key, value);
  } else if (key == "edge_snr_db") {
    net.edge_snr_db = parse_double(key, value);
  } else if (key == "carrier_frequency_hz") {
    config.carrier_frequency_hz = parse_double(key, value);
  } else if (key == "pilot_reuse") {
    config.pilot_reuse = parse_bounded_int(key, value);
  } else if (key == "models") {
    config.models.clear();
    for (const auto item : split_list(value)) {
      config.models.push_back(model_from_name(item));
    }
  } else if (key == "scatterer_counts") {
    config.scatterer_counts.clear();
    for (const auto item : split_list(value)) {
      config.scatterer_counts.push_back(parse_bounded_int(key, item));
    }
  } else if (key == "antenna_spacings_wl") {
    config.antenna_spacings_wl.clear();
    for (const auto item : split_list(value)) {
      config.antenna_spacings_wl.push_back(parse_double(key, item));
    }
  } else if (key == "scatterer_spacing_wl") {
    config.scatterer_spacing_wl = parse_double(key, value);
  } else if (key == "bs_angular_spread_rad") {
    config.bs_angular_spread_rad = parse_double(key, value);
  } else if (key == "broadside_rad") {
    if (value == "auto") {
      config.broadside_rad.reset();
    } else {
      config.broadside_rad = parse_double(key, value);
    }
  } else if (key == "detectors") {
    config.detectors.clear();
    for (const auto item : split_list(value)) {
      config.detectors.push_back(detector_from_name(item));
    }
  } else if (key == "drops") {
    config.drops = parse_bounded_int(key, value);
  } else if (key == "fading_realizations") {
    config.fading_realizations = parse_bounded_int(key, value);
  } else if (key == "master_seed") {
    config.master_seed = parse_uint64(key, value);
  } else if (key == "workers") {
    config.workers = parse_bounded_int(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

}  // namespace

std::string_view model_name(ChannelModelKind kind) {
  switch (kind) {
    case ChannelModelKind::kRayleigh:
      return "rayleigh";
    case ChannelModelKind::kDoubleScattering:
      return "double_scattering";
  }
  throw DomainError("model_name: unknown model kind");
}

ChannelModelKind model_from_name(std::string_view name) {
  if (name == "rayleigh") return ChannelModelKind::kRayleigh;
  if (name == "double_scattering") return ChannelModelKind::kDoubleScattering;
  throw ConfigError("unknown channel model '" + std::string(name) +
                    "', expected rayleigh or double_scattering");
}

void ExperimentConfig::validate() const {
  network.validate();
  if (!(carrier_frequency_hz > 0.0)) {
    throw ConfigError("carrier_frequency_hz must be > 0");
  }
  if (models.empty()) throw ConfigError("models must not be empty");
  if (std::set<ChannelModelKind>(models.begin(), models.end()).size() !=
      models.size()) {
    throw ConfigError("models contains duplicates");
  }
  const bool has_scattering =
      std::find(models.begin(), models.end(),
                ChannelModelKind::kDoubleScattering) != models.end();
  if (has_scattering) {
    if (scatterer_counts.empty()) {
      throw ConfigError("scatterer_counts must not be empty");
    }
    for (const int s : scatterer_counts) {
      if (s < 1 || s % 2 == 0) {
        throw ConfigError("scatterer_counts entries must be odd and >= 1, got " +
                          std::to_string(s));
      }
    }
    if (antenna_spacings_wl.empty()) {
      throw ConfigError("antenna_spacings_wl must not be empty");
    }
    for (const double d : antenna_spacings_wl) {
      if (!(d > 0.0)) throw ConfigError("antenna_spacings_wl entries must be > 0");
    }
    if (scatterer_spacing_wl < 0.0) {
      throw ConfigError("scatterer_spacing_wl must be >= 0");
    }
    if (bs_angular_spread_rad < 0.0 ||
        bs_angular_spread_rad > 2.0 * 3.141592653589793) {
      throw ConfigError("bs_angular_spread_rad must lie in [0, 2 pi]");
    }
  }
  if (detectors.empty()) throw ConfigError("detectors must not be empty");
  if (std::set<DetectorKind>(detectors.begin(), detectors.end()).size() !=
      detectors.size()) {
    throw ConfigError("detectors contains duplicates");
  }
  if (drops < 1) throw ConfigError("drops must be >= 1");
  if (fading_realizations < 1) {
    throw ConfigError("fading_realizations must be >= 1");
  }
  if (workers < 0) throw ConfigError("workers must be >= 0");
  build_pilot_plan(network.cells, network.users_per_cell, pilot_reuse,
                   network.coherence_symbols);
}

double ExperimentConfig::wavelength_m() const {
  return carrier_wavelength_m(carrier_frequency_hz);
}

std::vector<RunSpec> ExperimentConfig::expand_runs() const {
  validate();
  RunSpec base;
  base.network = network;
  base.detectors = detectors;
  base.pilot_reuse = pilot_reuse;
  base.drops = drops;
  base.fading_realizations = fading_realizations;
  base.workers = workers;
  base.broadside_override_rad = broadside_rad;

  std::vector<RunSpec> runs;
  for (const ChannelModelKind kind : models) {
    if (kind == ChannelModelKind::kRayleigh) {
      RunSpec run = base;
      run.model.kind = ChannelModelTemplate::Kind::kRayleigh;
      runs.push_back(std::move(run));
      continue;
    }
    for (const int s : scatterer_counts) {
      for (const double spacing : antenna_spacings_wl) {
        RunSpec run = base;
        run.model.kind = ChannelModelTemplate::Kind::kDoubleScattering;
        run.model.scatterer_count = s;
        run.model.antenna_spacing_wl = spacing;
        run.model.scatterer_spacing_wl = scatterer_spacing_wl;
        run.model.bs_angular_spread_rad = bs_angular_spread_rad;
        run.model.wavelength_m = wavelength_m();
        runs.push_back(std::move(run));
      }
    }
  }
  return runs;
}

ExperimentConfig parse_config_text(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t pos = 0;
  bool in_config_section = true;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    line = trim(line);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      // A [config] header is accepted; any other section ends the config,
      // which lets a run-record manifest parse back into its configuration.
      in_config_section = line == "[config]";
      if (!in_config_section) break;
      continue;
    }
    if (!in_config_section) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line is not 'key = value': '" +
                        std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line with empty key");
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("duplicate config key '" + std::string(key) + "'");
    }
    apply_key(config, key, value);
  }
  config.validate();
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string emit_config(const ExperimentConfig& config) {
  const auto fmt_int = [](const int& v) { return std::to_string(v); };
  const auto fmt_double = [](const double& v) { return format_double(v); };
  const auto fmt_model = [](const ChannelModelKind& m) {
    return std::string(model_name(m));
  };
  const auto fmt_detector = [](const DetectorKind& d) {
    return std::string(detector_name(d));
  };

  std::string out;
  const auto line = [&out](std::string_view key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += "\n";
  };
  const NetworkConfig& net = config.network;
  line("cells", std::to_string(net.cells));
  line("users_per_cell", std::to_string(net.users_per_cell));
  line("bs_antennas", std::to_string(net.bs_antennas));
  line("coherence_symbols", std::to_string(net.coherence_symbols));
  line("area_side_km", format_double(net.area_side_km));
  line("min_bs_user_distance_km", format_double(net.min_bs_user_distance_km));
  line("shadowing_std_db", format_double(net.shadowing_std_db));
  line("serving_strongest", net.serving_strongest ? "true" : "false");
  line("serving_margin_db", format_double(net.serving_margin_db));
  line("noise_power_dbm", format_double(net.noise_power_dbm));
  line("edge_snr_db", format_double(net.edge_snr_db));
  line("carrier_frequency_hz", format_double(config.carrier_frequency_hz));
  line("pilot_reuse", std::to_string(config.pilot_reuse));
  line("models", join_list(config.models, +fmt_model));
  line("scatterer_counts", join_list(config.scatterer_counts, +fmt_int));
  line("antenna_spacings_wl", join_list(config.antenna_spacings_wl, +fmt_double));
  line("scatterer_spacing_wl", format_double(config.scatterer_spacing_wl));
  line("bs_angular_spread_rad", format_double(config.bs_angular_spread_rad));
  line("broadside_rad", config.broadside_rad
                            ? format_double(*config.broadside_rad)
                            : std::string("auto"));
  line("detectors", join_list(config.detectors, +fmt_detector));
  line("drops", std::to_string(config.drops));
  line("fading_realizations", std::to_string(config.fading_realizations));
  line("master_seed", std::to_string(config.master_seed));
  line("workers", std::to_string(config.workers));
  return out;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  const std::string text = emit_config(config);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

ExperimentConfig default_preset() { return ExperimentConfig{}; }

ExperimentConfig smoke_preset() {
  ExperimentConfig config;
  config.network.users_per_cell = 2;
  config.network.bs_antennas = 16;
  config.models = {ChannelModelKind::kRayleigh,
                   ChannelModelKind::kDoubleScattering};
  config.scatterer_counts = {11};
  config.antenna_spacings_wl = {0.5};
  config.detectors = {DetectorKind::kMr, DetectorKind::kZf, DetectorKind::kMmse};
  config.drops = 2;
  config.fading_realizations = 50;
  return config;
}

}  // namespace mmimo
