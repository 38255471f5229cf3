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

#include "mmimo/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mmimo/errors.hpp"

namespace mmimo {
namespace {

constexpr double kPi = std::numbers::pi;

// Axis-aligned cell region of one BS: its quadrant for the four-corner
// layout, the whole square for a single cell.
struct CellRect {
  double x_lo, x_hi, y_lo, y_hi;
};

CellRect cell_region(const Eigen::Vector2d& bs, double side, int cells) {
  if (cells == 1) return {0.0, side, 0.0, side};
  const double half = side / 2.0;
  const double x_lo = bs.x() < half ? 0.0 : half;
  const double y_lo = bs.y() < half ? 0.0 : half;
  return {x_lo, x_lo + half, y_lo, y_lo + half};
}

}  // namespace

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) {
  if (watt <= 0.0) throw DomainError("watt_to_dbm: power must be positive");
  return 10.0 * std::log10(watt) + 30.0;
}

double NetworkConfig::noise_power_w() const { return dbm_to_watt(noise_power_dbm); }

double NetworkConfig::cell_edge_distance_km() const {
  return area_side_km / std::numbers::sqrt2;
}

void NetworkConfig::validate() const {
  if (cells != 1 && cells != 4) {
    throw ConfigError("cells: supported values are 1 and 4, got " +
                      std::to_string(cells));
  }
  if (users_per_cell < 1) throw ConfigError("users_per_cell must be >= 1");
  if (bs_antennas < 1) throw ConfigError("bs_antennas must be >= 1");
  if (coherence_symbols < 1) throw ConfigError("coherence_symbols must be >= 1");
  if (!(area_side_km > 0.0)) throw ConfigError("area_side_km must be > 0");
  if (min_bs_user_distance_km < 0.0) {
    throw ConfigError("min_bs_user_distance_km must be >= 0");
  }
  if (shadowing_std_db < 0.0) throw ConfigError("shadowing_std_db must be >= 0");
  if (serving_margin_db < 0.0) {
    throw ConfigError("serving_margin_db must be >= 0");
  }
  const double cell_diag =
      std::hypot(area_side_km / (cells == 1 ? 1.0 : 2.0),
                 area_side_km / (cells == 1 ? 1.0 : 2.0));
  if (min_bs_user_distance_km >= cell_diag) {
    throw ConfigError("min_bs_user_distance_km leaves no feasible user area");
  }
}

double wrap_angle(double angle_rad) {
  double a = std::remainder(angle_rad, 2.0 * kPi);
  if (a <= -kPi) a = kPi;
  return a;
}

double pathloss_beta_db(double distance_km, double shadowing_db) {
  if (!(distance_km > 0.0)) {
    throw DomainError("pathloss_beta_db: distance must be positive");
  }
  return -128.1 - 37.6 * std::log10(distance_km) + shadowing_db;
}

double link_azimuth(const Eigen::Vector2d& bs_position, double broadside_rad,
                    const Eigen::Vector2d& user_position) {
  const Eigen::Vector2d d = user_position - bs_position;
  if (d.norm() < 1e-12) {
    throw DomainError("link_azimuth: user and BS positions coincide");
  }
  return wrap_angle(std::atan2(d.y(), d.x()) - broadside_rad);
}

std::vector<Eigen::Vector2d> place_base_stations(const NetworkConfig& config) {
  config.validate();
  const double s = config.area_side_km;
  if (config.cells == 1) return {Eigen::Vector2d(0.0, 0.0)};
  return {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(0.0, s),
          Eigen::Vector2d(s, 0.0), Eigen::Vector2d(s, s)};
}

double bs_broadside_toward_center(const Eigen::Vector2d& bs_position,
                                  double area_side_km) {
  const Eigen::Vector2d center(area_side_km / 2.0, area_side_km / 2.0);
  const Eigen::Vector2d d = center - bs_position;
  if (d.norm() < 1e-12) {
    throw DomainError("bs_broadside_toward_center: BS sits at the area center");
  }
  return std::atan2(d.y(), d.x());
}

double calibrate_uplink_power(
    const NetworkConfig& config,
    const std::function<double(double, double)>& pathloss) {
  config.validate();
  const double beta_edge_db = pathloss(config.cell_edge_distance_km(), 0.0);
  const double beta_edge = std::pow(10.0, beta_edge_db / 10.0);
  const double snr = std::pow(10.0, config.edge_snr_db / 10.0);
  return snr * config.noise_power_w() / beta_edge;
}

double LinkGeometry::beta_linear() const { return std::pow(10.0, beta_db / 10.0); }

const LinkGeometry& UserDrop::link(int user_cell, int user, int bs) const {
  return links[static_cast<std::size_t>(user_cell * users_per_cell + user) *
                   static_cast<std::size_t>(cells) +
               static_cast<std::size_t>(bs)];
}

LinkGeometry& UserDrop::link(int user_cell, int user, int bs) {
  return const_cast<LinkGeometry&>(
      static_cast<const UserDrop&>(*this).link(user_cell, user, bs));
}

UserDrop drop_users(Rng& rng, const NetworkConfig& config,
                    const std::vector<Eigen::Vector2d>& bs_positions,
                    std::optional<double> broadside_override_rad) {
  config.validate();
  if (static_cast<int>(bs_positions.size()) != config.cells) {
    throw DomainError("drop_users: bs_positions size does not match cells");
  }

  const int cells = config.cells;
  const int users = config.users_per_cell;

  UserDrop drop;
  drop.cells = cells;
  drop.users_per_cell = users;
  drop.bs_positions = bs_positions;
  drop.bs_broadside_rad.resize(bs_positions.size());
  for (std::size_t l = 0; l < bs_positions.size(); ++l) {
    drop.bs_broadside_rad[l] =
        broadside_override_rad
            ? *broadside_override_rad
            : bs_broadside_toward_center(bs_positions[l], config.area_side_km);
  }
  drop.user_positions.resize(static_cast<std::size_t>(cells) * users);
  drop.links.resize(static_cast<std::size_t>(cells) * users * cells);
  drop.uplink_power_w = calibrate_uplink_power(config);

  constexpr int kMaxAttempts = 100000;
  for (int i = 0; i < cells; ++i) {
    const CellRect rect = cell_region(bs_positions[i], config.area_side_km, cells);
    for (int k = 0; k < users; ++k) {
      Eigen::Vector2d pos;
      int attempt = 0;
      for (;; ++attempt) {
        if (attempt >= kMaxAttempts) {
          throw ConfigError(
              "drop_users: could not place a user outside the serving-distance "
              "floor; check min_bs_user_distance_km");
        }
        pos.x() = rect.x_lo + (rect.x_hi - rect.x_lo) * rng.uniform01();
        pos.y() = rect.y_lo + (rect.y_hi - rect.y_lo) * rng.uniform01();
        if ((pos - bs_positions[i]).norm() >= config.min_bs_user_distance_km) {
          break;
        }
      }
      drop.user_positions[static_cast<std::size_t>(i) * users + k] = pos;

      for (int l = 0; l < cells; ++l) {
        LinkGeometry& link = drop.link(i, k, l);
        link.distance_km = (pos - bs_positions[l]).norm();
        link.azimuth_rad =
            link_azimuth(bs_positions[l], drop.bs_broadside_rad[l], pos);
        link.cluster_distance_km = 0.7 * link.distance_km;
      }
      for (int round = 0;; ++round) {
        if (round >= kMaxAttempts) {
          throw ConfigError(
              "drop_users: shadow fading never kept the serving link within "
              "the hysteresis margin of the strongest one; check the network "
              "geometry");
        }
        for (int l = 0; l < cells; ++l) {
          LinkGeometry& link = drop.link(i, k, l);
          link.shadowing_db = config.shadowing_std_db * standard_normal(rng);
          link.beta_db = pathloss_beta_db(link.distance_km, link.shadowing_db);
        }
        if (!config.serving_strongest) break;
        const double ceiling =
            drop.link(i, k, i).beta_db + config.serving_margin_db;
        bool admissible = true;
        for (int l = 0; l < cells && admissible; ++l) {
          admissible = drop.link(i, k, l).beta_db <= ceiling;
        }
        if (admissible) break;
      }
    }
  }
  return drop;
}

}  // namespace mmimo
