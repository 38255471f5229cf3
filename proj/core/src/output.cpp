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

#include "mmimo/output.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "mmimo/errors.hpp"

namespace mmimo {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) {
    throw IoError("cannot create directory '" + path + "': " + ec.message());
  }
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string run_model_label(const ChannelModelTemplate& model) {
  return model.kind == ChannelModelTemplate::Kind::kRayleigh
             ? "rayleigh"
             : "double_scattering";
}

int run_scatterer_column(const ChannelModelTemplate& model) {
  return model.kind == ChannelModelTemplate::Kind::kRayleigh
             ? 0
             : model.scatterer_count;
}

double run_spacing_column(const ChannelModelTemplate& model) {
  return model.kind == ChannelModelTemplate::Kind::kRayleigh
             ? 0.0
             : model.antenna_spacing_wl;
}

std::string render_user_csv(const std::vector<SeReport>& reports) {
  std::string out = "drop,cell,user,model,detector,S,d_l,sinr,se_bps_hz\n";
  for (const SeReport& report : reports) {
    const std::string model = run_model_label(report.model);
    const std::string scatterers = std::to_string(run_scatterer_column(report.model));
    const std::string spacing = format_double(run_spacing_column(report.model));
    for (const DetectorReport& det : report.detectors) {
      const std::string name(detector_name(det.kind));
      for (const SeUserSample& sample : det.samples) {
        out += std::to_string(sample.drop);
        out += ',';
        out += std::to_string(sample.cell);
        out += ',';
        out += std::to_string(sample.user);
        out += ',';
        out += model;
        out += ',';
        out += name;
        out += ',';
        out += scatterers;
        out += ',';
        out += spacing;
        out += ',';
        out += format_double(sample.sinr);
        out += ',';
        out += format_double(sample.se_bps_hz);
        out += '\n';
      }
    }
  }
  return out;
}

std::string render_cdf_csv(const std::vector<SeReport>& reports) {
  std::string out = "model,detector,S,d_l,se_bps_hz,cdf\n";
  for (const SeReport& report : reports) {
    const std::string model = run_model_label(report.model);
    const std::string scatterers = std::to_string(run_scatterer_column(report.model));
    const std::string spacing = format_double(run_spacing_column(report.model));
    for (const DetectorReport& det : report.detectors) {
      const std::string name(detector_name(det.kind));
      for (const auto& [value, probability] : aggregate_cdf(det.se_values())) {
        out += model;
        out += ',';
        out += name;
        out += ',';
        out += scatterers;
        out += ',';
        out += spacing;
        out += ',';
        out += format_double(value);
        out += ',';
        out += format_double(probability);
        out += '\n';
      }
    }
  }
  return out;
}

std::string render_run_record(const ExperimentConfig& config,
                              const std::vector<SeReport>& reports,
                              double total_wall_s) {
  std::string out = "[config]\n";
  out += emit_config(config);

  out += "\n[run]\n";
  out += "config_hash = " + std::to_string(config_hash(config)) + "\n";
  out += "master_seed = " + std::to_string(config.master_seed) + "\n";
  const int workers = reports.empty() ? 0 : reports.front().workers_used;
  out += "workers_used = " + std::to_string(workers) + "\n";
  out += "wall_time_s = " + format_double(total_wall_s) + "\n";
  out += "runs = " + std::to_string(reports.size()) + "\n";

  out += "\n[results]\n";
  for (const SeReport& report : reports) {
    const std::string prefix =
        run_model_label(report.model) + "_S" +
        std::to_string(run_scatterer_column(report.model)) + "_d" +
        format_double(run_spacing_column(report.model));
    for (const DetectorReport& det : report.detectors) {
      const std::string key = prefix + "_" + std::string(detector_name(det.kind));
      out += key + "_samples = " + std::to_string(det.samples.size()) + "\n";
      out += key + "_mean_se = " + format_double(det.mean_se()) + "\n";
      out += key + "_likely95_se = " + format_double(det.likely95_se()) + "\n";
      out += key + "_excluded_realizations = " +
             std::to_string(det.excluded_realizations) + "\n";
      out += key + "_clamped_sinr = " + std::to_string(det.clamped_sinr_count) +
             "\n";
    }
    out += prefix + "_wall_time_s = " + format_double(report.wall_time_s) + "\n";
  }
  return out;
}

std::vector<std::string> write_run_artifacts(const std::string& dir,
                                             const ExperimentConfig& config,
                                             const std::vector<SeReport>& reports,
                                             double total_wall_s) {
  ensure_directory(dir);
  const std::filesystem::path base(dir);
  const std::string users = (base / "users.csv").string();
  const std::string cdf = (base / "cdf.csv").string();
  const std::string manifest = (base / "manifest.txt").string();
  write_text_file(users, render_user_csv(reports));
  write_text_file(cdf, render_cdf_csv(reports));
  write_text_file(manifest, render_run_record(config, reports, total_wall_s));
  return {users, cdf, manifest};
}

std::string render_correlation_csv(const Eigen::MatrixXcd& matrix) {
  std::string out = "antenna";
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    out += ',';
    out += std::to_string(j);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    out += std::to_string(i);
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      out += ',';
      out += format_double(std::abs(matrix(i, j)));
    }
    out += '\n';
  }
  return out;
}

std::string render_complex_matrix_csv(const Eigen::MatrixXcd& matrix) {
  std::string out;
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    if (j > 0) out += ',';
    out += "re" + std::to_string(j) + ",im" + std::to_string(j);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(matrix(i, j).real());
      out += ',';
      out += format_double(matrix(i, j).imag());
    }
    out += '\n';
  }
  return out;
}

std::string render_xy_csv(std::string_view x_header, std::string_view y_header,
                          const std::vector<std::pair<double, double>>& points) {
  std::string out;
  out += x_header;
  out += ',';
  out += y_header;
  out += '\n';
  for (const auto& [x, y] : points) {
    out += format_double(x);
    out += ',';
    out += format_double(y);
    out += '\n';
  }
  return out;
}

std::string render_user_drop_csv(const UserDrop& drop) {
  std::string out =
      "cell,user,x_km,y_km,bs,distance_km,azimuth_rad,cluster_distance_km,"
      "shadowing_db,beta_db\n";
  for (int i = 0; i < drop.cells; ++i) {
    for (int k = 0; k < drop.users_per_cell; ++k) {
      const Eigen::Vector2d& pos =
          drop.user_positions[static_cast<std::size_t>(i) * drop.users_per_cell + k];
      for (int l = 0; l < drop.cells; ++l) {
        const LinkGeometry& link = drop.link(i, k, l);
        out += std::to_string(i);
        out += ',';
        out += std::to_string(k);
        out += ',';
        out += format_double(pos.x());
        out += ',';
        out += format_double(pos.y());
        out += ',';
        out += std::to_string(l);
        out += ',';
        out += format_double(link.distance_km);
        out += ',';
        out += format_double(link.azimuth_rad);
        out += ',';
        out += format_double(link.cluster_distance_km);
        out += ',';
        out += format_double(link.shadowing_db);
        out += ',';
        out += format_double(link.beta_db);
        out += '\n';
      }
    }
  }
  return out;
}

}  // namespace mmimo
