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

#include "mmimo/engine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <set>
#include <thread>

#include "mmimo/errors.hpp"

namespace mmimo {

SinrAccumulator::SinrAccumulator(int cells_, int users_per_cell_)
    : cells(cells_), users_per_cell(users_per_cell_) {
  if (cells < 1 || users_per_cell < 1) {
    throw DomainError("SinrAccumulator: dimensions must be >= 1");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(cells) * users_per_cell;
  signal_sum = Eigen::VectorXcd::Zero(n);
  cross_power_sum = Eigen::MatrixXd::Zero(n, n);
  self_fourth_sum = Eigen::VectorXd::Zero(n);
  norm_sum = Eigen::VectorXd::Zero(n);
}

void SinrAccumulator::merge(const SinrAccumulator& other) {
  if (other.cells != cells || other.users_per_cell != users_per_cell) {
    throw DomainError("SinrAccumulator::merge: dimension mismatch");
  }
  count += other.count;
  signal_sum += other.signal_sum;
  cross_power_sum += other.cross_power_sum;
  self_fourth_sum += other.self_fourth_sum;
  norm_sum += other.norm_sum;
}

void accumulate_realization(SinrAccumulator& acc, const ChannelTensor& channels,
                            const std::vector<Eigen::MatrixXcd>& detectors) {
  if (channels.cells != acc.cells ||
      channels.users_per_cell != acc.users_per_cell) {
    throw DomainError("accumulate_realization: tensor dimension mismatch");
  }
  if (static_cast<int>(detectors.size()) != acc.cells) {
    throw DomainError("accumulate_realization: one detector matrix per cell");
  }
  const int users = acc.users_per_cell;
  for (int l = 0; l < acc.cells; ++l) {
    const Eigen::MatrixXcd& v = detectors[static_cast<std::size_t>(l)];
    if (v.rows() != channels.antennas || v.cols() != users) {
      throw DomainError("accumulate_realization: detector dimension mismatch");
    }
    // All combined signals of BS l at once: row k holds v_{l,k}^H h_{i,t}^l
    // for every source user.
    const Eigen::MatrixXcd product =
        v.adjoint() * channels.to_bs[static_cast<std::size_t>(l)];
    for (int k = 0; k < users; ++k) {
      const Eigen::Index c = static_cast<Eigen::Index>(l) * users + k;
      const Eigen::RowVectorXd power_row = product.row(k).cwiseAbs2();
      acc.signal_sum(c) += product(k, c);
      acc.cross_power_sum.row(c) += power_row;
      acc.self_fourth_sum(c) += power_row(c) * power_row(c);
      acc.norm_sum(c) += v.col(k).squaredNorm();
    }
  }
  ++acc.count;
}

SinrEstimate finalize_sinr(const SinrAccumulator& acc, const PowerGrid& powers_w,
                           double noise_power_w) {
  if (acc.count < 1) throw DomainError("finalize_sinr: no realizations");
  if (powers_w.rows() != acc.cells || powers_w.cols() != acc.users_per_cell) {
    throw DomainError("finalize_sinr: power grid dimension mismatch");
  }
  if (noise_power_w < 0.0) {
    throw DomainError("finalize_sinr: noise power must be >= 0");
  }

  const int users = acc.users_per_cell;
  const Eigen::Index n = static_cast<Eigen::Index>(acc.cells) * users;
  const double inv_count = 1.0 / static_cast<double>(acc.count);

  // Flat per-user power vector aligned with the accumulator indexing.
  Eigen::VectorXd p_flat(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    p_flat(c) = powers_w(static_cast<int>(c) / users, static_cast<int>(c) % users);
  }

  SinrEstimate out;
  out.sinr = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const std::complex<double> m1 = acc.signal_sum(c) * inv_count;
    const double m2 = acc.cross_power_sum(c, c) * inv_count;
    const double m4 = acc.self_fourth_sum(c) * inv_count;
    const double coherent = std::norm(m1);

    // With common realizations m2 - |m1|^2 is a sample variance and cannot
    // be negative; beyond three standard errors of m2 the moments are
    // inconsistent.
    const double gap = m2 - coherent;
    const double m2_stderr = std::sqrt(std::max(m4 - m2 * m2, 0.0) * inv_count);
    if (gap < -(3.0 * m2_stderr + 1e-12 * m2)) {
      throw NumericalError(
          "finalize_sinr: second moment below the squared mean, accumulator "
          "inconsistent");
    }

    const double signal = p_flat(c) * coherent;
    const double interference =
        (acc.cross_power_sum.row(c) * p_flat).value() * inv_count;
    const double noise = noise_power_w * acc.norm_sum(c) * inv_count;
    const double denom = interference - signal + noise;
    if (denom <= 0.0) {
      ++out.clamped_count;
      out.sinr(c) = 0.0;
    } else {
      out.sinr(c) = signal / denom;
    }
  }
  return out;
}

double spectral_efficiency(double sinr, int pilot_length,
                           int coherence_symbols) {
  if (!(sinr >= 0.0)) throw DomainError("spectral_efficiency: sinr must be >= 0");
  if (coherence_symbols < 1) {
    throw DomainError("spectral_efficiency: coherence block must be >= 1");
  }
  if (pilot_length < 0 || pilot_length > coherence_symbols) {
    throw DomainError(
        "spectral_efficiency: pilot length must lie in [0, coherence block]");
  }
  const double prelog =
      1.0 - static_cast<double>(pilot_length) / coherence_symbols;
  return prelog * std::log2(1.0 + sinr);
}

UplinkReception simulate_uplink_reception(Rng& rng, const ChannelTensor& channels,
                                          const PowerGrid& powers_w,
                                          const Eigen::MatrixXcd& symbols,
                                          double noise_power_w, int bs) {
  if (bs < 0 || bs >= channels.cells) {
    throw DomainError("simulate_uplink_reception: bs index out of range");
  }
  if (symbols.rows() != channels.cells ||
      symbols.cols() != channels.users_per_cell) {
    throw DomainError("simulate_uplink_reception: symbol matrix mismatch");
  }
  if (powers_w.rows() != channels.cells ||
      powers_w.cols() != channels.users_per_cell) {
    throw DomainError("simulate_uplink_reception: power grid mismatch");
  }
  if (noise_power_w < 0.0) {
    throw DomainError("simulate_uplink_reception: noise power must be >= 0");
  }

  const Eigen::Index n = symbols.size();
  Eigen::VectorXcd weights(n);
  for (int i = 0; i < channels.cells; ++i) {
    for (int t = 0; t < channels.users_per_cell; ++t) {
      weights(channels.column(i, t)) = std::sqrt(powers_w(i, t)) * symbols(i, t);
    }
  }

  UplinkReception rx;
  rx.noise.resize(channels.antennas);
  const double noise_scale = std::sqrt(noise_power_w);
  for (int m = 0; m < channels.antennas; ++m) {
    rx.noise(m) = noise_scale * complex_normal(rng);
  }
  rx.received = channels.to_bs[static_cast<std::size_t>(bs)] * weights + rx.noise;
  return rx;
}

CombinedSignalTerms decompose_combined_signal(
    const Eigen::VectorXcd& detector_column, const ChannelTensor& channels,
    const PowerGrid& powers_w, const Eigen::MatrixXcd& symbols,
    const Eigen::VectorXcd& noise, int cell, int user) {
  if (detector_column.size() != channels.antennas ||
      noise.size() != channels.antennas) {
    throw DomainError("decompose_combined_signal: vector size mismatch");
  }
  CombinedSignalTerms terms{};
  for (int i = 0; i < channels.cells; ++i) {
    for (int t = 0; t < channels.users_per_cell; ++t) {
      const std::complex<double> contribution =
          std::sqrt(powers_w(i, t)) * symbols(i, t) *
          detector_column.dot(channels.channel(i, t, cell));
      if (i == cell && t == user) {
        terms.desired = contribution;
      } else if (i == cell) {
        terms.intra_cell += contribution;
      } else {
        terms.inter_cell += contribution;
      }
    }
  }
  terms.noise = detector_column.dot(noise);
  return terms;
}

void RunSpec::validate() const {
  network.validate();
  if (drops < 1) throw ConfigError("drops must be >= 1");
  if (fading_realizations < 1) throw ConfigError("fading_realizations must be >= 1");
  if (workers < 0) throw ConfigError("workers must be >= 0");
  if (detectors.empty()) throw ConfigError("at least one detector is required");
  std::set<DetectorKind> unique(detectors.begin(), detectors.end());
  if (unique.size() != detectors.size()) {
    throw ConfigError("duplicate detector in detector list");
  }
  if (model.kind == ChannelModelTemplate::Kind::kDoubleScattering) {
    DoubleScatteringParams probe;
    probe.scatterer_count = model.scatterer_count;
    probe.antenna_spacing_wl = model.antenna_spacing_wl;
    probe.scatterer_spacing_wl = model.scatterer_spacing_wl;
    probe.bs_angular_spread_rad = model.bs_angular_spread_rad;
    probe.wavelength_m = model.wavelength_m;
    probe.validate();
  }
  // Pilot feasibility is checked here so bad configs fail before any work.
  build_pilot_plan(network.cells, network.users_per_cell, pilot_reuse,
                   network.coherence_symbols);
}

namespace {

// Result of simulating one drop, per requested detector.
struct DropOutcome {
  std::vector<Eigen::ArrayXd> sinr;
  std::vector<int> clamped;
  std::vector<long long> excluded;
};

DropOutcome run_drop(const RunSpec& spec, std::uint64_t master_seed, int drop_index,
                     const std::vector<Eigen::Vector2d>& bs_positions,
                     const PilotPlan& plan) {
  const NetworkConfig& net = spec.network;
  const int cells = net.cells;
  const int users = net.users_per_cell;
  const int antennas = net.bs_antennas;
  const double sigma2 = net.noise_power_w();
  const std::size_t detector_count = spec.detectors.size();

  Rng geometry_rng(derive_stream_seed(
      master_seed, StreamKind::kUserDrop, static_cast<std::uint64_t>(drop_index)));
  const UserDrop drop =
      drop_users(geometry_rng, net, bs_positions, spec.broadside_override_rad);
  const PowerGrid powers = PowerGrid::Constant(cells, users, drop.uplink_power_w);

  // Per-link samplers, index ((i * K + k) * L + l).
  std::vector<ChannelSampler> samplers;
  samplers.reserve(static_cast<std::size_t>(cells) * users * cells);
  for (int i = 0; i < cells; ++i) {
    for (int k = 0; k < users; ++k) {
      for (int l = 0; l < cells; ++l) {
        samplers.emplace_back(spec.model.for_link(drop.link(i, k, l)), antennas);
      }
    }
  }
  const auto sampler_at = [&](int i, int k, int l) -> const ChannelSampler& {
    return samplers[(static_cast<std::size_t>(i) * users + k) * cells + l];
  };

  // LMMSE filters from the closed-form link moments, fixed for the drop.
  std::vector<std::vector<LmmseFilter>> filters(static_cast<std::size_t>(cells));
  for (int l = 0; l < cells; ++l) {
    filters[static_cast<std::size_t>(l)].resize(static_cast<std::size_t>(users));
    const std::vector<int>& copilot = plan.copilot(l);
    for (int k = 0; k < users; ++k) {
      std::vector<const Eigen::MatrixXcd*> moments;
      std::vector<double> link_powers;
      std::size_t serving_index = 0;
      moments.reserve(copilot.size());
      link_powers.reserve(copilot.size());
      for (std::size_t pos = 0; pos < copilot.size(); ++pos) {
        const int i = copilot[pos];
        if (i == l) serving_index = pos;
        moments.push_back(&sampler_at(i, k, l).second_moment());
        link_powers.push_back(powers(i, k));
      }
      filters[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] =
          lmmse_filter(moments, link_powers, serving_index, plan.pilot_length,
                       sigma2);
    }
  }

  // Own-cell powers normalized by the noise variance, the scale the MMSE
  // regularizer expects.
  std::vector<Eigen::VectorXd> mmse_powers(static_cast<std::size_t>(cells));
  for (int l = 0; l < cells; ++l) {
    mmse_powers[static_cast<std::size_t>(l)] =
        (powers.row(l) / sigma2).matrix().transpose();
  }

  std::vector<SinrAccumulator> accumulators;
  accumulators.reserve(detector_count);
  for (std::size_t v = 0; v < detector_count; ++v) {
    accumulators.emplace_back(cells, users);
  }
  std::vector<long long> excluded(detector_count, 0);

  ChannelTensor tensor(cells, users, antennas);
  std::vector<std::vector<Eigen::MatrixXcd>> detector_matrices(
      detector_count, std::vector<Eigen::MatrixXcd>(static_cast<std::size_t>(cells)));
  std::vector<bool> detector_failed(detector_count);

  for (int t = 0; t < spec.fading_realizations; ++t) {
    Rng rng(derive_stream_seed(master_seed, StreamKind::kFading,
                               static_cast<std::uint64_t>(drop_index),
                               static_cast<std::uint64_t>(t)));
    for (int l = 0; l < cells; ++l) {
      auto& block = tensor.to_bs[static_cast<std::size_t>(l)];
      for (int i = 0; i < cells; ++i) {
        for (int k = 0; k < users; ++k) {
          sampler_at(i, k, l).sample(rng, block.col(tensor.column(i, k)));
        }
      }
    }

    const DespreadPilots pilots =
        despread_pilots(rng, tensor, plan, powers, sigma2);
    const ChannelEstimateSet estimates = estimate_channels(filters, pilots);

    std::fill(detector_failed.begin(), detector_failed.end(), false);
    for (int l = 0; l < cells; ++l) {
      DetectorFactory factory(estimates.per_bs[static_cast<std::size_t>(l)]);
      for (std::size_t v = 0; v < detector_count; ++v) {
        if (detector_failed[v]) continue;
        try {
          detector_matrices[v][static_cast<std::size_t>(l)] =
              factory.make(spec.detectors[v], mmse_powers[static_cast<std::size_t>(l)]);
        } catch (const DetectorSingularError&) {
          detector_failed[v] = true;
        }
      }
    }
    for (std::size_t v = 0; v < detector_count; ++v) {
      if (detector_failed[v]) {
        ++excluded[v];
      } else {
        accumulate_realization(accumulators[v], tensor, detector_matrices[v]);
      }
    }
  }

  DropOutcome outcome;
  outcome.sinr.resize(detector_count);
  outcome.clamped.assign(detector_count, 0);
  outcome.excluded = std::move(excluded);
  for (std::size_t v = 0; v < detector_count; ++v) {
    if (accumulators[v].count == 0) {
      throw NumericalError(
          "run_experiment: every realization of a drop was excluded for "
          "detector " +
          std::string(detector_name(spec.detectors[v])));
    }
    SinrEstimate estimate = finalize_sinr(accumulators[v], powers, sigma2);
    outcome.sinr[v] = std::move(estimate.sinr);
    outcome.clamped[v] = estimate.clamped_count;
  }
  return outcome;
}

}  // namespace

SeReport run_experiment(const RunSpec& spec, std::uint64_t master_seed) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();

  const NetworkConfig& net = spec.network;
  const PilotPlan plan = build_pilot_plan(
      net.cells, net.users_per_cell, spec.pilot_reuse, net.coherence_symbols);
  const std::vector<Eigen::Vector2d> bs_positions = place_base_stations(net);

  int workers = spec.workers > 0
                    ? spec.workers
                    : static_cast<int>(
                          std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, spec.drops);

  std::vector<DropOutcome> outcomes(static_cast<std::size_t>(spec.drops));
  std::atomic<int> next_drop{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const auto worker_loop = [&]() {
    for (;;) {
      const int d = next_drop.fetch_add(1);
      if (d >= spec.drops || failed.load()) return;
      try {
        outcomes[static_cast<std::size_t>(d)] =
            run_drop(spec, master_seed, d, bs_positions, plan);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  if (workers <= 1) {
    worker_loop();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop);
    for (auto& thread : pool) thread.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  SeReport report;
  report.model = spec.model;
  report.drops = spec.drops;
  report.fading_realizations = spec.fading_realizations;
  report.pilot_length = plan.pilot_length;
  report.master_seed = master_seed;
  report.workers_used = workers;
  report.detectors.resize(spec.detectors.size());

  for (std::size_t v = 0; v < spec.detectors.size(); ++v) {
    DetectorReport& det = report.detectors[v];
    det.kind = spec.detectors[v];
    det.samples.reserve(static_cast<std::size_t>(spec.drops) * net.cells *
                        net.users_per_cell);
    for (int d = 0; d < spec.drops; ++d) {
      const DropOutcome& outcome = outcomes[static_cast<std::size_t>(d)];
      det.excluded_realizations += outcome.excluded[v];
      det.clamped_sinr_count += outcome.clamped[v];
      for (int l = 0; l < net.cells; ++l) {
        for (int k = 0; k < net.users_per_cell; ++k) {
          const double sinr = outcome.sinr[v](
              static_cast<Eigen::Index>(l) * net.users_per_cell + k);
          det.samples.push_back(
              {d, l, k, sinr,
               spectral_efficiency(sinr, plan.pilot_length,
                                   net.coherence_symbols)});
        }
      }
    }
  }

  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

std::vector<double> DetectorReport::se_values() const {
  std::vector<double> values;
  values.reserve(samples.size());
  for (const SeUserSample& sample : samples) values.push_back(sample.se_bps_hz);
  return values;
}

double DetectorReport::mean_se() const {
  if (samples.empty()) throw DomainError("DetectorReport: no samples");
  double acc = 0.0;
  for (const SeUserSample& sample : samples) acc += sample.se_bps_hz;
  return acc / static_cast<double>(samples.size());
}

double DetectorReport::likely95_se() const { return percentile(se_values(), 0.05); }

const DetectorReport& SeReport::detector(DetectorKind kind) const {
  for (const DetectorReport& det : detectors) {
    if (det.kind == kind) return det;
  }
  throw DomainError("SeReport: detector not present in this report");
}

std::vector<std::pair<double, double>> aggregate_cdf(std::vector<double> values) {
  if (values.empty()) throw DomainError("aggregate_cdf: no values");
  std::sort(values.begin(), values.end());
  std::vector<std::pair<double, double>> cdf;
  cdf.reserve(values.size());
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    cdf.emplace_back(values[i], static_cast<double>(i + 1) / n);
  }
  return cdf;
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw DomainError("percentile: no values");
  if (!(q >= 0.0) || !(q <= 1.0)) {
    throw DomainError("percentile: quantile must lie in [0, 1]");
  }
  std::sort(values.begin(), values.end());
  const double position = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(position);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = position - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

}  // namespace mmimo
