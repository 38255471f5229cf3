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

#ifndef MMIMO_OUTPUT_HPP_
#define MMIMO_OUTPUT_HPP_

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mmimo/config.hpp"
#include "mmimo/engine.hpp"
#include "mmimo/geometry.hpp"

namespace mmimo {

// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

void ensure_directory(const std::string& path);                 // throws IoError
void write_text_file(const std::string& path, std::string_view content);

// Per-user results across runs.  Columns:
// drop,cell,user,model,detector,S,d_l,sinr,se_bps_hz
// Rayleigh rows carry S = 0 and d_l = 0.  Indices are 0-based.
std::string render_user_csv(const std::vector<SeReport>& reports);

// Pooled empirical SE CDFs.  Columns: model,detector,S,d_l,se_bps_hz,cdf.
std::string render_cdf_csv(const std::vector<SeReport>& reports);

// Run-record manifest: a [config] section holding the canonical config (so
// the record parses back into the exact configuration), then [run] metadata
// (seed, workers, config hash, wall time, exclusion and clamp counts) and a
// [results] summary per run and detector.
std::string render_run_record(const ExperimentConfig& config,
                              const std::vector<SeReport>& reports,
                              double total_wall_s);

// Writes users.csv, cdf.csv and manifest.txt into `dir`; returns the paths.
std::vector<std::string> write_run_artifacts(const std::string& dir,
                                             const ExperimentConfig& config,
                                             const std::vector<SeReport>& reports,
                                             double total_wall_s);

// Correlation-magnitude grid |A(i,j)| with antenna indices as first header
// row and column.
std::string render_correlation_csv(const Eigen::MatrixXcd& matrix);

// Complex matrix with interleaved re_j,im_j columns per matrix column.
std::string render_complex_matrix_csv(const Eigen::MatrixXcd& matrix);

// Two-column CSV of (x, y) points.
std::string render_xy_csv(std::string_view x_header, std::string_view y_header,
                          const std::vector<std::pair<double, double>>& points);

// One drop's geometry: BS positions, user positions and per-link large-scale
// quantities.
std::string render_user_drop_csv(const UserDrop& drop);

// Model/sweep labels used in CSV columns.
std::string run_model_label(const ChannelModelTemplate& model);
int run_scatterer_column(const ChannelModelTemplate& model);     // 0 for Rayleigh
double run_spacing_column(const ChannelModelTemplate& model);    // 0 for Rayleigh

}  // namespace mmimo

#endif  // MMIMO_OUTPUT_HPP_
