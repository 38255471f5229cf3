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

#include <benchmark/benchmark.h>

#include <vector>

#include "mmimo/channel.hpp"
#include "mmimo/detection.hpp"
#include "mmimo/engine.hpp"
#include "mmimo/estimation.hpp"
#include "mmimo/figures.hpp"
#include "mmimo/rng.hpp"

namespace {

using namespace mmimo;

DoubleScatteringParams bench_params(int scatterers) {
  DoubleScatteringParams p = reference_link_params(scatterers, 0.5);
  p.azimuth_rad = 0.3;
  return p;
}

void BM_CorrelationBuild(benchmark::State& state) {
  const int antennas = static_cast<int>(state.range(0));
  const DoubleScatteringParams p = bench_params(21);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bs_correlation_matrix(antennas, p));
  }
}
BENCHMARK(BM_CorrelationBuild)->Arg(32)->Arg(100);

void BM_MatrixSqrtPsd(benchmark::State& state) {
  const int antennas = static_cast<int>(state.range(0));
  const Eigen::MatrixXcd r = bs_correlation_matrix(antennas, bench_params(21));
  for (auto _ : state) {
    benchmark::DoNotOptimize(matrix_sqrt_psd(r));
  }
}
BENCHMARK(BM_MatrixSqrtPsd)->Arg(32)->Arg(100);

void BM_SampleRayleigh(benchmark::State& state) {
  const int antennas = static_cast<int>(state.range(0));
  const ChannelSampler sampler(ChannelModelSpec::rayleigh(1.0), antennas);
  Rng rng(1);
  Eigen::VectorXcd h(antennas);
  for (auto _ : state) {
    sampler.sample(rng, h);
    benchmark::DoNotOptimize(h.data());
  }
}
BENCHMARK(BM_SampleRayleigh)->Arg(100);

void BM_SampleDoubleScattering(benchmark::State& state) {
  const int scatterers = static_cast<int>(state.range(0));
  const ChannelSampler sampler(
      ChannelModelSpec::double_scattering(bench_params(scatterers)), 100);
  Rng rng(1);
  Eigen::VectorXcd h(100);
  for (auto _ : state) {
    sampler.sample(rng, h);
    benchmark::DoNotOptimize(h.data());
  }
}
BENCHMARK(BM_SampleDoubleScattering)->Arg(11)->Arg(21)->Arg(41)->Arg(81);

void BM_LmmseFilterBuild(benchmark::State& state) {
  const int antennas = static_cast<int>(state.range(0));
  std::vector<Eigen::MatrixXcd> moments;
  for (int i = 0; i < 4; ++i) {
    DoubleScatteringParams p = bench_params(21);
    p.azimuth_rad = 0.2 * i;
    p.beta_linear = 1.0 / (i + 1);
    moments.push_back(
        channel_second_moment(ChannelModelSpec::double_scattering(p), antennas));
  }
  const std::vector<const Eigen::MatrixXcd*> refs = {&moments[0], &moments[1],
                                                     &moments[2], &moments[3]};
  const std::vector<double> powers(4, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lmmse_filter(refs, powers, 0, 5, 1e-12));
  }
}
BENCHMARK(BM_LmmseFilterBuild)->Arg(100);

void BM_Detector(benchmark::State& state) {
  const int users = static_cast<int>(state.range(1));
  Rng rng(3);
  Eigen::MatrixXcd estimates(100, users);
  fill_complex_normal(rng, estimates);
  const Eigen::VectorXd powers = Eigen::VectorXd::Constant(users, 10.0);
  const DetectorKind kind = static_cast<DetectorKind>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(detector_matrix(estimates, powers, kind));
  }
}
BENCHMARK(BM_Detector)
    ->Args({static_cast<int>(DetectorKind::kZf), 5})
    ->Args({static_cast<int>(DetectorKind::kMmse), 5})
    ->Args({static_cast<int>(DetectorKind::kMmse), 20});

void BM_AccumulateRealization(benchmark::State& state) {
  const int cells = 4, users = 5, antennas = 100;
  Rng rng(4);
  ChannelTensor tensor(cells, users, antennas);
  std::vector<Eigen::MatrixXcd> detectors;
  for (int l = 0; l < cells; ++l) {
    fill_complex_normal(rng, tensor.to_bs[static_cast<std::size_t>(l)]);
    Eigen::MatrixXcd v(antennas, users);
    fill_complex_normal(rng, v);
    detectors.push_back(std::move(v));
  }
  SinrAccumulator acc(cells, users);
  for (auto _ : state) {
    accumulate_realization(acc, tensor, detectors);
    benchmark::DoNotOptimize(acc.count);
  }
}
BENCHMARK(BM_AccumulateRealization);

void BM_FullRealizationStep(benchmark::State& state) {
  // One complete fading realization of a reduced network (4 cells, 2 users,
  // 32 antennas): channel draw, pilot despreading, estimation, detection and
  // moment accumulation.
  const int cells = 4, users = 2, antennas = 32;
  const double sigma2 = 1.0, power = 20.0;
  const PilotPlan plan = build_pilot_plan(cells, users, 1, 200);
  const PowerGrid powers = PowerGrid::Constant(cells, users, power);

  std::vector<ChannelSampler> samplers;
  samplers.reserve(static_cast<std::size_t>(cells) * cells);
  std::vector<std::vector<LmmseFilter>> filters(cells);
  for (int l = 0; l < cells; ++l) {
    std::vector<const Eigen::MatrixXcd*> moments;
    for (int i = 0; i < cells; ++i) {
      DoubleScatteringParams p = bench_params(11);
      p.azimuth_rad = 0.15 * (3 * i + l);
      p.beta_linear = i == l ? 1.0 : 0.1;
      samplers.emplace_back(ChannelModelSpec::double_scattering(p), antennas);
    }
    for (int i = 0; i < cells; ++i) {
      moments.push_back(&samplers[static_cast<std::size_t>(l * cells + i)]
                             .second_moment());
    }
    const std::vector<double> link_powers(moments.size(), power);
    for (int k = 0; k < users; ++k) {
      filters[static_cast<std::size_t>(l)].push_back(lmmse_filter(
          moments, link_powers, static_cast<std::size_t>(l), plan.pilot_length,
          sigma2));
    }
  }

  Rng rng(5);
  ChannelTensor tensor(cells, users, antennas);
  SinrAccumulator acc(cells, users);
  const Eigen::VectorXd mmse_powers =
      Eigen::VectorXd::Constant(users, power / sigma2);
  std::vector<Eigen::MatrixXcd> detectors(cells);
  for (auto _ : state) {
    for (int l = 0; l < cells; ++l) {
      for (int i = 0; i < cells; ++i) {
        for (int k = 0; k < users; ++k) {
          samplers[static_cast<std::size_t>(l * cells + i)].sample(
              rng, tensor.to_bs[static_cast<std::size_t>(l)].col(
                       tensor.column(i, k)));
        }
      }
    }
    const DespreadPilots pilots =
        despread_pilots(rng, tensor, plan, powers, sigma2);
    const ChannelEstimateSet estimates = estimate_channels(filters, pilots);
    for (int l = 0; l < cells; ++l) {
      DetectorFactory factory(estimates.per_bs[static_cast<std::size_t>(l)]);
      detectors[static_cast<std::size_t>(l)] =
          factory.make(DetectorKind::kMmse, mmse_powers);
    }
    accumulate_realization(acc, tensor, detectors);
    benchmark::DoNotOptimize(acc.count);
  }
}
BENCHMARK(BM_FullRealizationStep);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
