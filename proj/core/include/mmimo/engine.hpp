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

#ifndef MMIMO_ENGINE_HPP_
#define MMIMO_ENGINE_HPP_

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mmimo/channel.hpp"
#include "mmimo/detection.hpp"
#include "mmimo/estimation.hpp"
#include "mmimo/geometry.hpp"

namespace mmimo {

// Running Monte-Carlo moments of the combined signal v_{l,k}^H h_{i,t}^l for
// every detector/source user pair, indexed by flat user c = cell * K + user.
// Everything needed by the ergodic SINR lower bound:
//   signal_sum    E{v^H h} of the own signal        (complex, per user)
//   cross_power   E{|v^H h|^2} detector user x source user
//   self_fourth   E{|v^H h|^4} of the own signal, for moment sanity checks
//   norm_sum      E{||v||^2} per user
struct SinrAccumulator {
  int cells = 0;
  int users_per_cell = 0;
  long long count = 0;
  Eigen::VectorXcd signal_sum;
  Eigen::MatrixXd cross_power_sum;
  Eigen::VectorXd self_fourth_sum;
  Eigen::VectorXd norm_sum;

  SinrAccumulator() = default;
  SinrAccumulator(int cells_, int users_per_cell_);

  void merge(const SinrAccumulator& other);
};

// Adds one fading realization.  detectors[l] is the M x K combining matrix
// of BS l; channels supplies h_{i,t}^l for every source user.
void accumulate_realization(SinrAccumulator& acc, const ChannelTensor& channels,
                            const std::vector<Eigen::MatrixXcd>& detectors);

// Ergodic SINR of every user from accumulated moments:
//   sinr = p |E{v^H h}|^2 /
//          (sum_{i,t} p_{i,t} E{|v^H h_{i,t}|^2} - p |E{v^H h}|^2
//           + sigma^2 E{||v||^2}).
// With common realizations in numerator and denominator the subtraction is a
// sample variance and cannot go negative; a denominator at or below zero is
// counted in clamped_count and the SINR reported as zero.  A self moment
// that is inconsistent beyond three standard errors of |E{v^H h}|^2 raises
// NumericalError.
struct SinrEstimate {
  Eigen::ArrayXd sinr;  // flat user index
  int clamped_count = 0;
};

SinrEstimate finalize_sinr(const SinrAccumulator& acc, const PowerGrid& powers_w,
                           double noise_power_w);

// Ergodic spectral efficiency lower bound in bit/s/Hz:
// (1 - tau_p / tau_c) log2(1 + sinr).
double spectral_efficiency(double sinr, int pilot_length, int coherence_symbols);

// One uplink data symbol at one BS: y = sum_{i,t} sqrt(p_{i,t}) h_{i,t}^l
// x_{i,t} + n with n ~ CN(0, sigma^2 I).  Returns the received vector and
// the noise that went into it so tests can decompose the combined signal.
struct UplinkReception {
  Eigen::VectorXcd received;
  Eigen::VectorXcd noise;
};

UplinkReception simulate_uplink_reception(Rng& rng, const ChannelTensor& channels,
                                          const PowerGrid& powers_w,
                                          const Eigen::MatrixXcd& symbols,
                                          double noise_power_w, int bs);

// Combined signal v^H y of one user split into its textbook terms.  The sum
// of the four terms equals v^H y exactly.
struct CombinedSignalTerms {
  std::complex<double> desired;
  std::complex<double> intra_cell;
  std::complex<double> inter_cell;
  std::complex<double> noise;
};

CombinedSignalTerms decompose_combined_signal(
    const Eigen::VectorXcd& detector_column, const ChannelTensor& channels,
    const PowerGrid& powers_w, const Eigen::MatrixXcd& symbols,
    const Eigen::VectorXcd& noise, int cell, int user);

// Full description of one Monte-Carlo experiment for one fading model.
struct RunSpec {
  NetworkConfig network;
  ChannelModelTemplate model;
  std::vector<DetectorKind> detectors = {DetectorKind::kMmse};
  int pilot_reuse = 1;
  int drops = 100;
  int fading_realizations = 1000;
  int workers = 0;  // 0 = hardware concurrency
  std::optional<double> broadside_override_rad;

  void validate() const;
};

// One user's outcome in one drop.
struct SeUserSample {
  int drop = 0;
  int cell = 0;
  int user = 0;
  double sinr = 0.0;
  double se_bps_hz = 0.0;
};

struct DetectorReport {
  DetectorKind kind = DetectorKind::kMmse;
  std::vector<SeUserSample> samples;  // drops * L * K entries, drop-major
  long long excluded_realizations = 0;
  int clamped_sinr_count = 0;

  double mean_se() const;
  double likely95_se() const;  // 5th percentile of the SE samples
  std::vector<double> se_values() const;
};

struct SeReport {
  ChannelModelTemplate model;
  int drops = 0;
  int fading_realizations = 0;
  int pilot_length = 0;
  std::uint64_t master_seed = 0;
  int workers_used = 0;
  double wall_time_s = 0.0;
  std::vector<DetectorReport> detectors;

  const DetectorReport& detector(DetectorKind kind) const;
};

// Runs the experiment: per drop, draws geometry, builds LMMSE filters from
// closed-form moments, then averages the SINR moments over common fading
// realizations for every requested detector.  Work is distributed over
// drops; all randomness derives from (master_seed, drop, realization), so
// results are identical for any worker count.
SeReport run_experiment(const RunSpec& spec, std::uint64_t master_seed);

// Empirical CDF points (value, probability) of a sample set, sorted by
// value, probability (i+1)/n.
std::vector<std::pair<double, double>> aggregate_cdf(std::vector<double> values);

// Quantile with linear interpolation between order statistics at position
// q * (n - 1), q in [0, 1].
double percentile(std::vector<double> values, double q);

}  // namespace mmimo

#endif  // MMIMO_ENGINE_HPP_
