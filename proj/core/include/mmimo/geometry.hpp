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

#ifndef MMIMO_GEOMETRY_HPP_
#define MMIMO_GEOMETRY_HPP_

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mmimo/rng.hpp"

namespace mmimo {

// Static network-level parameters: cell layout, array size, frame structure
// and the power/noise budget.  Distances are in km, powers in the units
// indicated by the member name.
struct NetworkConfig {
  int cells = 4;                        // number of base stations L
  int users_per_cell = 5;               // K
  int bs_antennas = 100;                // M
  int coherence_symbols = 200;          // coherence block length in symbols
  double area_side_km = 1.0;            // side of the square deployment area
  double min_bs_user_distance_km = 0.1; // serving-link distance floor
  double shadowing_std_db = 7.0;        // log-normal shadow fading std-dev
  // Redraw a user's shadow fading until no neighboring BS beats the serving
  // BS's large-scale coefficient by more than the hysteresis margin, the
  // usual cell-selection rule.  Disable to make every link fully independent.
  bool serving_strongest = true;
  double serving_margin_db = 7.25;
  double noise_power_dbm = -96.0;       // receiver noise power
  double edge_snr_db = -3.0;            // median SNR target at the cell edge

  bool operator==(const NetworkConfig&) const = default;

  double noise_power_w() const;
  // Distance from a corner base station to the center of the square, the
  // farthest point of its quadrant cell.
  double cell_edge_distance_km() const;
  void validate() const;  // throws ConfigError
};

// Converts between dBm and watts.
double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

// Wraps an angle to (-pi, pi].
double wrap_angle(double angle_rad);

// Large-scale fading in dB for a distance in km and a shadow-fading value in
// dB: -128.1 - 37.6 log10(b) + z.  Throws DomainError for b <= 0.
double pathloss_beta_db(double distance_km, double shadowing_db);

// Azimuth of a user seen from a base station, measured against the array
// broadside direction and wrapped to (-pi, pi].  Throws DomainError when the
// two positions coincide.
double link_azimuth(const Eigen::Vector2d& bs_position, double broadside_rad,
                    const Eigen::Vector2d& user_position);

// Base stations sit at the corners of the square area (cells = 4) or at the
// origin (cells = 1).  Other cell counts are rejected.
std::vector<Eigen::Vector2d> place_base_stations(const NetworkConfig& config);

// Array broadside orientation: pointing from a corner toward the center of
// the square area.
double bs_broadside_toward_center(const Eigen::Vector2d& bs_position,
                                  double area_side_km);

// Transmit power (watts) such that a user at the cell edge with zero shadow
// fading reaches the configured median edge SNR.  The path-loss model is
// injectable for testing.
double calibrate_uplink_power(
    const NetworkConfig& config,
    const std::function<double(double, double)>& pathloss = pathloss_beta_db);

// Everything the channel model needs to know about one (user, BS) link.
struct LinkGeometry {
  double distance_km = 0.0;          // b
  double azimuth_rad = 0.0;          // user azimuth relative to broadside
  double cluster_distance_km = 0.0;  // scattering-cluster distance r = 0.7 b
  double shadowing_db = 0.0;         // z
  double beta_db = 0.0;              // large-scale fading in dB

  double beta_linear() const;
};

// One random user placement: positions, and per-link large-scale geometry
// for every (user, BS) pair in the network.
struct UserDrop {
  int cells = 0;
  int users_per_cell = 0;
  std::vector<Eigen::Vector2d> bs_positions;
  std::vector<double> bs_broadside_rad;
  std::vector<Eigen::Vector2d> user_positions;  // index cell * K + user
  std::vector<LinkGeometry> links;              // index (cell*K + user)*L + bs
  double uplink_power_w = 0.0;

  const LinkGeometry& link(int user_cell, int user, int bs) const;
  LinkGeometry& link(int user_cell, int user, int bs);
};

// Draws one drop: users uniform in their quadrant cell subject to the
// serving-distance floor, fresh shadow fading on every link (redrawn per user
// until the serving link is strongest when serving_strongest is set), and the
// calibrated uplink power.  When broadside_override_rad is set, every array
// uses that fixed orientation instead of pointing at the area center.
UserDrop drop_users(Rng& rng, const NetworkConfig& config,
                    const std::vector<Eigen::Vector2d>& bs_positions,
                    std::optional<double> broadside_override_rad = std::nullopt);

}  // namespace mmimo

#endif  // MMIMO_GEOMETRY_HPP_
