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

#include "mmimo/estimation.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "mmimo/errors.hpp"

namespace mmimo {

using namespace std::complex_literals;

PilotPlan build_pilot_plan(int cells, int users_per_cell, int reuse_factor,
                           int coherence_symbols) {
  if (cells < 1) throw ConfigError("build_pilot_plan: cells must be >= 1");
  if (users_per_cell < 1) {
    throw ConfigError("build_pilot_plan: users_per_cell must be >= 1");
  }
  if (reuse_factor < 1 || reuse_factor > cells) {
    throw ConfigError("pilot_reuse must lie in [1, cells], got " +
                      std::to_string(reuse_factor));
  }
  const int pilot_length = reuse_factor * users_per_cell;
  if (pilot_length > coherence_symbols) {
    throw ConfigError(
        "pilot_reuse * users_per_cell exceeds the coherence block (" +
        std::to_string(pilot_length) + " > " +
        std::to_string(coherence_symbols) + ")");
  }

  PilotPlan plan;
  plan.pilot_length = pilot_length;
  plan.reuse_factor = reuse_factor;
  plan.copilot_cells.resize(static_cast<std::size_t>(cells));
  for (int l = 0; l < cells; ++l) {
    for (int i = 0; i < cells; ++i) {
      if (i % reuse_factor == l % reuse_factor) {
        plan.copilot_cells[static_cast<std::size_t>(l)].push_back(i);
      }
    }
  }
  return plan;
}

Eigen::VectorXcd despread_pilot_sum(const ChannelTensor& channels,
                                    const PilotPlan& plan,
                                    const PowerGrid& powers_w, int bs,
                                    int pilot_index) {
  if (bs < 0 || bs >= channels.cells) {
    throw DomainError("despread_pilot_sum: bs index out of range");
  }
  if (pilot_index < 0 || pilot_index >= channels.users_per_cell) {
    throw DomainError("despread_pilot_sum: pilot index out of range");
  }
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(channels.antennas);
  const double tau_p = plan.pilot_length;
  for (const int i : plan.copilot(bs)) {
    y += std::sqrt(powers_w(i, pilot_index)) * tau_p *
         channels.to_bs[static_cast<std::size_t>(bs)].col(
             channels.column(i, pilot_index));
  }
  return y;
}

DespreadPilots despread_pilots(Rng& rng, const ChannelTensor& channels,
                               const PilotPlan& plan, const PowerGrid& powers_w,
                               double noise_power_w) {
  if (noise_power_w < 0.0) {
    throw DomainError("despread_pilots: noise power must be >= 0");
  }
  const double noise_scale = std::sqrt(plan.pilot_length * noise_power_w);
  DespreadPilots out;
  out.per_bs.assign(static_cast<std::size_t>(channels.cells),
                    Eigen::MatrixXcd(channels.antennas, channels.users_per_cell));
  for (int l = 0; l < channels.cells; ++l) {
    auto& y = out.per_bs[static_cast<std::size_t>(l)];
    for (int k = 0; k < channels.users_per_cell; ++k) {
      y.col(k) = despread_pilot_sum(channels, plan, powers_w, l, k);
      for (int m = 0; m < channels.antennas; ++m) {
        y(m, k) += noise_scale * complex_normal(rng);
      }
    }
  }
  return out;
}

LmmseFilter lmmse_filter(
    const std::vector<const Eigen::MatrixXcd*>& copilot_moments,
    const std::vector<double>& copilot_powers_w, std::size_t serving_index,
    int pilot_length, double noise_power_w) {
  if (copilot_moments.empty()) {
    throw DomainError("lmmse_filter: need at least one co-pilot moment");
  }
  if (copilot_moments.size() != copilot_powers_w.size()) {
    throw DomainError("lmmse_filter: moments/powers size mismatch");
  }
  if (serving_index >= copilot_moments.size()) {
    throw DomainError("lmmse_filter: serving index out of range");
  }
  if (pilot_length < 1) throw DomainError("lmmse_filter: pilot length must be >= 1");
  if (noise_power_w < 0.0) {
    throw DomainError("lmmse_filter: noise power must be >= 0");
  }

  const Eigen::Index m = copilot_moments.front()->rows();
  const double tau_p = pilot_length;
  Eigen::MatrixXcd observed_cov =
      tau_p * noise_power_w * Eigen::MatrixXcd::Identity(m, m);
  for (std::size_t i = 0; i < copilot_moments.size(); ++i) {
    const Eigen::MatrixXcd& q = *copilot_moments[i];
    if (q.rows() != m || q.cols() != m) {
      throw DomainError("lmmse_filter: moment dimension mismatch");
    }
    if ((q - q.adjoint()).norm() > 1e-10 * std::max(1.0, q.norm())) {
      throw NumericalError("lmmse_filter: second moment is not Hermitian");
    }
    if (copilot_powers_w[i] < 0.0) {
      throw DomainError("lmmse_filter: powers must be >= 0");
    }
    observed_cov += (tau_p * tau_p * copilot_powers_w[i]) * q;
  }

  const Eigen::MatrixXcd cross_cov =
      std::sqrt(copilot_powers_w[serving_index]) * tau_p *
      (*copilot_moments[serving_index]);

  Eigen::LLT<Eigen::MatrixXcd> llt(observed_cov);
  if (llt.info() != Eigen::Success) {
    throw NumericalError(
        "lmmse_filter: observation covariance is not positive definite");
  }
  // B = C_hy C_yy^{-1}; both C_hy and C_yy^{-1} are Hermitian, so solve on
  // the left and take the adjoint.
  LmmseFilter filter;
  filter.gain = llt.solve(cross_cov).adjoint();
  return filter;
}

ChannelEstimateSet estimate_channels(
    const std::vector<std::vector<LmmseFilter>>& filters,
    const DespreadPilots& pilots) {
  if (filters.size() != pilots.per_bs.size()) {
    throw DomainError("estimate_channels: filters/pilots cell count mismatch");
  }
  ChannelEstimateSet out;
  out.per_bs.resize(pilots.per_bs.size());
  for (std::size_t l = 0; l < pilots.per_bs.size(); ++l) {
    const Eigen::MatrixXcd& y = pilots.per_bs[l];
    if (static_cast<Eigen::Index>(filters[l].size()) != y.cols()) {
      throw DomainError("estimate_channels: filters/pilots user count mismatch");
    }
    Eigen::MatrixXcd est(y.rows(), y.cols());
    for (Eigen::Index k = 0; k < y.cols(); ++k) {
      const Eigen::MatrixXcd& gain = filters[l][static_cast<std::size_t>(k)].gain;
      if (gain.rows() != y.rows() || gain.cols() != y.rows()) {
        throw DomainError("estimate_channels: filter dimension mismatch");
      }
      est.col(k).noalias() = gain * y.col(k);
    }
    out.per_bs[l] = std::move(est);
  }
  return out;
}

Eigen::MatrixXcd orthogonal_pilot_book(int pilot_length) {
  if (pilot_length < 1) {
    throw DomainError("orthogonal_pilot_book: pilot length must be >= 1");
  }
  Eigen::MatrixXcd phi(pilot_length, pilot_length);
  for (int a = 0; a < pilot_length; ++a) {
    for (int b = 0; b < pilot_length; ++b) {
      phi(a, b) = std::exp(-2.0 * std::numbers::pi * 1i *
                           (static_cast<double>(a) * b / pilot_length));
    }
  }
  return phi;
}

}  // namespace mmimo
