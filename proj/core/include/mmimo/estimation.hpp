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

#ifndef MMIMO_ESTIMATION_HPP_
#define MMIMO_ESTIMATION_HPP_

#include <vector>

#include <Eigen/Dense>

#include "mmimo/channel.hpp"
#include "mmimo/rng.hpp"

namespace mmimo {

// Pilot assignment under reuse factor f: cells with equal index modulo f
// share the same pilot book of length tau_p = f * K, and users with equal
// index within co-pilot cells share the same pilot.
struct PilotPlan {
  int pilot_length = 0;  // tau_p
  int reuse_factor = 1;  // f
  std::vector<std::vector<int>> copilot_cells;  // per cell, sorted, incl. self

  const std::vector<int>& copilot(int cell) const { return copilot_cells[cell]; }
};

PilotPlan build_pilot_plan(int cells, int users_per_cell, int reuse_factor,
                           int coherence_symbols);

// Per-user transmit powers in watts, indexed (cell, user).
using PowerGrid = Eigen::ArrayXXd;

// Noise-free despread pilot observation at one BS for one pilot index:
// sum over co-pilot cells of sqrt(p_{i,k}) * tau_p * h_{i,k}^l.
Eigen::VectorXcd despread_pilot_sum(const ChannelTensor& channels,
                                    const PilotPlan& plan,
                                    const PowerGrid& powers_w, int bs,
                                    int pilot_index);

// Despread pilot observations of one realization: per BS an M x K matrix
// whose column k is the noise-free sum above plus CN(0, tau_p sigma^2 I)
// noise.  Noise is drawn in (bs, pilot) order from `rng`.
struct DespreadPilots {
  std::vector<Eigen::MatrixXcd> per_bs;
};

DespreadPilots despread_pilots(Rng& rng, const ChannelTensor& channels,
                               const PilotPlan& plan, const PowerGrid& powers_w,
                               double noise_power_w);

// Linear MMSE estimator of one serving channel from its despread pilot:
// gain = sqrt(p_serving) tau_p Q_serving *
//        (tau_p^2 sum_i p_i Q_i + tau_p sigma^2 I)^{-1},
// where Q_i are the co-pilot channel second moments in co-pilot cell order
// and `serving_index` selects the estimated link among them.
struct LmmseFilter {
  Eigen::MatrixXcd gain;
};

LmmseFilter lmmse_filter(const std::vector<const Eigen::MatrixXcd*>& copilot_moments,
                         const std::vector<double>& copilot_powers_w,
                         std::size_t serving_index, int pilot_length,
                         double noise_power_w);

// Serving-channel estimates of one realization: per BS an M x K matrix whose
// column k is filters[bs][k].gain * pilots.per_bs[bs].col(k).
struct ChannelEstimateSet {
  std::vector<Eigen::MatrixXcd> per_bs;
};

ChannelEstimateSet estimate_channels(
    const std::vector<std::vector<LmmseFilter>>& filters,
    const DespreadPilots& pilots);

// Orthogonal pilot book of dimension tau_p: column k is pilot k, with
// Phi^H Phi = tau_p I.  Built from the unitary DFT.  Exposed for tests that
// exercise the full (non-despread) pilot signal model.
Eigen::MatrixXcd orthogonal_pilot_book(int pilot_length);

}  // namespace mmimo

#endif  // MMIMO_ESTIMATION_HPP_
