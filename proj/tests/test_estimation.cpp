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

#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "mmimo/errors.hpp"
#include "mmimo/estimation.hpp"
#include "support/oracles.hpp"

using namespace mmimo;

namespace {

ChannelTensor random_tensor(Rng& rng, int cells, int users, int antennas,
                            double beta = 1.0) {
  ChannelTensor tensor(cells, users, antennas);
  const double scale = std::sqrt(beta);
  for (auto& block : tensor.to_bs) {
    fill_complex_normal(rng, block);
    block *= scale;
  }
  return tensor;
}

}  // namespace

TEST_CASE("pilot plan: full reuse shares one book across all cells") {
  const PilotPlan plan = build_pilot_plan(4, 5, 1, 200);
  CHECK(plan.pilot_length == 5);
  CHECK(plan.reuse_factor == 1);
  for (int l = 0; l < 4; ++l) {
    CHECK(plan.copilot(l) == std::vector<int>{0, 1, 2, 3});
  }
}

TEST_CASE("pilot plan: reuse 2 splits cells into parity classes") {
  const PilotPlan plan = build_pilot_plan(4, 5, 2, 200);
  CHECK(plan.pilot_length == 10);
  CHECK(plan.copilot(0) == std::vector<int>{0, 2});
  CHECK(plan.copilot(1) == std::vector<int>{1, 3});
  CHECK(plan.copilot(2) == std::vector<int>{0, 2});
  CHECK(plan.copilot(3) == std::vector<int>{1, 3});
}

TEST_CASE("pilot plan: full orthogonality leaves each cell alone") {
  const PilotPlan plan = build_pilot_plan(4, 5, 4, 200);
  CHECK(plan.pilot_length == 20);
  for (int l = 0; l < 4; ++l) {
    CHECK(plan.copilot(l) == std::vector<int>{l});
  }
}

TEST_CASE("pilot plan rejects infeasible parameters") {
  CHECK_THROWS_AS(build_pilot_plan(4, 60, 4, 200), ConfigError);  // 240 > 200
  CHECK_THROWS_AS(build_pilot_plan(4, 5, 0, 200), ConfigError);
  CHECK_THROWS_AS(build_pilot_plan(4, 5, 5, 200), ConfigError);
  CHECK_NOTHROW(build_pilot_plan(4, 50, 4, 200));  // exactly tau_c
}

TEST_CASE("noise-free despreading applies the sqrt(p) tau_p weights") {
  const int antennas = 3;
  ChannelTensor tensor(2, 2, antennas);
  for (auto& block : tensor.to_bs) block.setZero();
  // h_{0,1}^0 and h_{1,1}^0 chosen by hand.
  tensor.to_bs[0].col(tensor.column(0, 1)) =
      Eigen::VectorXcd::Constant(antennas, std::complex<double>(1.0, 2.0));
  tensor.to_bs[0].col(tensor.column(1, 1)) =
      Eigen::VectorXcd::Constant(antennas, std::complex<double>(-3.0, 0.5));

  const PilotPlan plan = build_pilot_plan(2, 2, 1, 100);
  PowerGrid powers(2, 2);
  powers << 4.0, 9.0, 1.0, 16.0;

  const Eigen::VectorXcd y = despread_pilot_sum(tensor, plan, powers, 0, 1);
  const std::complex<double> expected =
      std::sqrt(9.0) * 2.0 * std::complex<double>(1.0, 2.0) +
      std::sqrt(16.0) * 2.0 * std::complex<double>(-3.0, 0.5);
  for (int m = 0; m < antennas; ++m) {
    CHECK(std::abs(y(m) - expected) < 1e-12);
  }

  // Zero noise power reduces the full despreader to the same sums.
  Rng rng(3);
  const DespreadPilots pilots = despread_pilots(rng, tensor, plan, powers, 0.0);
  CHECK((pilots.per_bs[0].col(1) - y).norm() < 1e-12);
  CHECK(pilots.per_bs[1].col(0).norm() == 0.0);
}

TEST_CASE("despread noise has covariance tau_p sigma^2 I") {
  const int antennas = 4;
  ChannelTensor tensor(1, 1, antennas);
  tensor.to_bs[0].setZero();
  const PilotPlan plan = build_pilot_plan(1, 1, 1, 100);
  const PowerGrid powers = PowerGrid::Constant(1, 1, 1.0);
  const double sigma2 = 0.37;

  Rng rng(1001);
  double energy = 0.0;
  Eigen::VectorXcd mean = Eigen::VectorXcd::Zero(antennas);
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const DespreadPilots pilots =
        despread_pilots(rng, tensor, plan, powers, sigma2);
    energy += pilots.per_bs[0].col(0).squaredNorm();
    mean += pilots.per_bs[0].col(0);
  }
  const double tau_p = plan.pilot_length;
  CHECK(energy / (n * antennas * tau_p * sigma2) ==
        doctest::Approx(1.0).epsilon(0.03));
  CHECK((mean / n).norm() < 0.02);
  CHECK_THROWS_AS(despread_pilots(rng, tensor, plan, powers, -1.0), DomainError);
}

TEST_CASE("LMMSE filter: single-cell Rayleigh closed form") {
  const int antennas = 5;
  const double beta = 0.8, p = 1.7, sigma2 = 0.3;
  const int tau_p = 6;
  const Eigen::MatrixXcd q =
      beta * Eigen::MatrixXcd::Identity(antennas, antennas);
  const LmmseFilter filter = lmmse_filter({&q}, {p}, 0, tau_p, sigma2);
  const double c = std::sqrt(p) * beta / (tau_p * p * beta + sigma2);
  CHECK((filter.gain - c * Eigen::MatrixXcd::Identity(antennas, antennas))
            .norm() < 1e-12);
}

TEST_CASE("LMMSE filter: contaminated two-cell closed form") {
  const int antennas = 4;
  const double beta1 = 0.9, beta2 = 0.4, p = 2.0, sigma2 = 0.25;
  const int tau_p = 5;
  const Eigen::MatrixXcd q1 = beta1 * Eigen::MatrixXcd::Identity(antennas, antennas);
  const Eigen::MatrixXcd q2 = beta2 * Eigen::MatrixXcd::Identity(antennas, antennas);
  const LmmseFilter filter = lmmse_filter({&q1, &q2}, {p, p}, 0, tau_p, sigma2);
  const double c = std::sqrt(p) * beta1 / (tau_p * p * (beta1 + beta2) + sigma2);
  CHECK((filter.gain - c * Eigen::MatrixXcd::Identity(antennas, antennas))
            .norm() < 1e-12);
}

TEST_CASE("LMMSE filter matches the explicit-inverse oracle") {
  Rng rng(424242);
  const int antennas = 5;
  Eigen::MatrixXcd x1(antennas, antennas), x2(antennas, antennas);
  fill_complex_normal(rng, x1);
  fill_complex_normal(rng, x2);
  Eigen::MatrixXcd q1 = x1 * x1.adjoint();
  Eigen::MatrixXcd q2 = x2 * x2.adjoint();
  q1 = 0.5 * (q1 + Eigen::MatrixXcd(q1.adjoint()));
  q2 = 0.5 * (q2 + Eigen::MatrixXcd(q2.adjoint()));
  const std::vector<double> powers = {1.2, 0.6};
  const int tau_p = 7;
  const double sigma2 = 0.45;

  const LmmseFilter filter =
      lmmse_filter({&q1, &q2}, powers, 1, tau_p, sigma2);
  const Eigen::MatrixXcd expected =
      oracle::lmmse_gain({q1, q2}, powers, 1, tau_p, sigma2);
  CHECK((filter.gain - expected).norm() / expected.norm() < 1e-10);
}

TEST_CASE("LMMSE filter rejects inconsistent inputs") {
  const Eigen::MatrixXcd q = Eigen::MatrixXcd::Identity(3, 3);
  const Eigen::MatrixXcd small = Eigen::MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(lmmse_filter({}, {}, 0, 4, 0.1), DomainError);
  CHECK_THROWS_AS(lmmse_filter({&q}, {1.0, 2.0}, 0, 4, 0.1), DomainError);
  CHECK_THROWS_AS(lmmse_filter({&q}, {1.0}, 1, 4, 0.1), DomainError);
  CHECK_THROWS_AS(lmmse_filter({&q, &small}, {1.0, 1.0}, 0, 4, 0.1),
                  DomainError);
  CHECK_THROWS_AS(lmmse_filter({&q}, {-1.0}, 0, 4, 0.1), DomainError);

  Eigen::MatrixXcd skew(3, 3);
  skew.setZero();
  skew(0, 1) = std::complex<double>(0.0, 1.0);
  CHECK_THROWS_AS(lmmse_filter({&skew}, {1.0}, 0, 4, 0.1), NumericalError);

  const Eigen::MatrixXcd negative = -Eigen::MatrixXcd::Identity(3, 3);
  CHECK_THROWS_AS(lmmse_filter({&negative}, {1.0}, 0, 4, 1e-6),
                  NumericalError);
}

TEST_CASE("zero moments with positive noise give the zero filter") {
  const Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(3, 3);
  const LmmseFilter filter = lmmse_filter({&q}, {1.0}, 0, 4, 0.5);
  CHECK(filter.gain.norm() == 0.0);
}

TEST_CASE("noiseless uncontaminated estimation recovers the channel") {
  const int antennas = 6;
  const double beta = 0.7, p = 1.3;
  const int cells = 1, users = 2;
  Rng rng(55);
  ChannelTensor tensor = random_tensor(rng, cells, users, antennas, beta);
  const PilotPlan plan = build_pilot_plan(cells, users, 1, 100);
  const PowerGrid powers = PowerGrid::Constant(cells, users, p);

  const Eigen::MatrixXcd q = beta * Eigen::MatrixXcd::Identity(antennas, antennas);
  std::vector<std::vector<LmmseFilter>> filters(1);
  filters[0].push_back(lmmse_filter({&q}, {p}, 0, plan.pilot_length, 0.0));
  filters[0].push_back(lmmse_filter({&q}, {p}, 0, plan.pilot_length, 0.0));

  Rng noise_rng(56);
  const DespreadPilots pilots =
      despread_pilots(noise_rng, tensor, plan, powers, 0.0);
  const ChannelEstimateSet estimates = estimate_channels(filters, pilots);
  CHECK((estimates.per_bs[0] - tensor.to_bs[0]).norm() /
            tensor.to_bs[0].norm() <
        1e-10);
}

TEST_CASE("estimate_channels validates dimensions") {
  DespreadPilots pilots;
  pilots.per_bs.push_back(Eigen::MatrixXcd::Zero(4, 2));
  std::vector<std::vector<LmmseFilter>> filters(2);
  CHECK_THROWS_AS(estimate_channels(filters, pilots), DomainError);

  filters.resize(1);
  filters[0].resize(2);
  filters[0][0].gain = Eigen::MatrixXcd::Identity(3, 3);
  filters[0][1].gain = Eigen::MatrixXcd::Identity(3, 3);
  CHECK_THROWS_AS(estimate_channels(filters, pilots), DomainError);
}

TEST_CASE("identity filters pass the despread observation through") {
  ChannelTensor tensor(1, 1, 3);
  tensor.to_bs[0].col(0) << std::complex<double>(1.0, 0.0),
      std::complex<double>(0.0, 1.0), std::complex<double>(2.0, -1.0);
  const PilotPlan plan = build_pilot_plan(1, 1, 1, 10);
  const PowerGrid powers = PowerGrid::Constant(1, 1, 1.0);
  Rng rng(77);
  const DespreadPilots pilots = despread_pilots(rng, tensor, plan, powers, 0.2);
  std::vector<std::vector<LmmseFilter>> filters(1);
  filters[0].push_back({Eigen::MatrixXcd::Identity(3, 3)});
  const ChannelEstimateSet estimates = estimate_channels(filters, pilots);
  CHECK((estimates.per_bs[0].col(0) - pilots.per_bs[0].col(0)).norm() < 1e-14);
}

TEST_CASE("orthogonality principle and contamination coupling hold in MC") {
  // Two co-pilot cells, one user each; BS 0 estimates its serving channel.
  const int antennas = 6;
  const double beta1 = 1.0, beta2 = 0.6, p = 1.3, sigma2 = 0.2;
  const int cells = 2, users = 1;
  const PilotPlan plan = build_pilot_plan(cells, users, 1, 100);
  const PowerGrid powers = PowerGrid::Constant(cells, users, p);
  const Eigen::MatrixXcd q1 = beta1 * Eigen::MatrixXcd::Identity(antennas, antennas);
  const Eigen::MatrixXcd q2 = beta2 * Eigen::MatrixXcd::Identity(antennas, antennas);
  const LmmseFilter filter =
      lmmse_filter({&q1, &q2}, {p, p}, 0, plan.pilot_length, sigma2);

  Rng rng(31337);
  Eigen::MatrixXcd err_cross = Eigen::MatrixXcd::Zero(antennas, antennas);
  Eigen::MatrixXcd est_outer = Eigen::MatrixXcd::Zero(antennas, antennas);
  Eigen::MatrixXcd contam_cross = Eigen::MatrixXcd::Zero(antennas, antennas);
  const int n = 100000;
  ChannelTensor tensor(cells, users, antennas);
  for (int i = 0; i < n; ++i) {
    fill_complex_normal(rng, tensor.to_bs[0]);
    tensor.to_bs[0].col(0) *= std::sqrt(beta1);
    tensor.to_bs[0].col(1) *= std::sqrt(beta2);
    fill_complex_normal(rng, tensor.to_bs[1]);
    const DespreadPilots pilots =
        despread_pilots(rng, tensor, plan, powers, sigma2);
    const Eigen::VectorXcd est = filter.gain * pilots.per_bs[0].col(0);
    const Eigen::VectorXcd h = tensor.to_bs[0].col(0);
    const Eigen::VectorXcd contam = tensor.to_bs[0].col(1);
    err_cross += est * (h - est).adjoint();
    est_outer += est * est.adjoint();
    contam_cross += est * contam.adjoint();
  }
  // E{est (h - est)^H} = 0 up to Monte-Carlo noise.
  CHECK(err_cross.norm() / est_outer.norm() < 0.03);
  // The estimate stays correlated with the co-pilot interferer:
  // E{est contam^H} / E{est est^H} = beta2 / beta1.
  CHECK(contam_cross.norm() / est_outer.norm() ==
        doctest::Approx(beta2 / beta1).epsilon(0.05));
}

TEST_CASE("estimation error shrinks with the noise level") {
  const int antennas = 4;
  const double beta = 1.0, p = 1.0;
  const PilotPlan plan = build_pilot_plan(1, 1, 1, 100);
  const PowerGrid powers = PowerGrid::Constant(1, 1, p);
  const Eigen::MatrixXcd q = beta * Eigen::MatrixXcd::Identity(antennas, antennas);

  const auto mse_at = [&](double sigma2, std::uint64_t seed) {
    const LmmseFilter filter =
        lmmse_filter({&q}, {p}, 0, plan.pilot_length, sigma2);
    Rng rng(seed);
    ChannelTensor tensor(1, 1, antennas);
    double acc = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
      fill_complex_normal(rng, tensor.to_bs[0]);
      const DespreadPilots pilots =
          despread_pilots(rng, tensor, plan, powers, sigma2);
      acc += (filter.gain * pilots.per_bs[0].col(0) - tensor.to_bs[0].col(0))
                 .squaredNorm();
    }
    return acc / n;
  };
  CHECK(mse_at(0.05, 88) < mse_at(0.5, 88));
}

TEST_CASE("despreading matches the materialized orthogonal-pilot model") {
  // Full pilot block: Y = sum_{i,k} sqrt(p_{i,k}) h_{i,k} phi_k^T + N.
  // Despreading with conj(phi_k) must equal the direct sum plus projected
  // noise, and the pilot book must satisfy Phi^H Phi = tau_p I.
  const int cells = 2, users = 3, antennas = 4;
  const PilotPlan plan = build_pilot_plan(cells, users, 1, 100);
  const int tau_p = plan.pilot_length;
  const Eigen::MatrixXcd phi = orthogonal_pilot_book(tau_p);
  CHECK((phi.adjoint() * phi -
         static_cast<double>(tau_p) *
             Eigen::MatrixXcd::Identity(tau_p, tau_p))
            .norm() < 1e-10);

  Rng rng(4096);
  ChannelTensor tensor = random_tensor(rng, cells, users, antennas);
  PowerGrid powers(cells, users);
  powers << 1.0, 2.0, 0.5, 1.5, 0.7, 3.0;

  Eigen::MatrixXcd noise(antennas, tau_p);
  fill_complex_normal(rng, noise);
  const double sigma2 = 0.3;
  noise *= std::sqrt(sigma2);

  const int bs = 0;
  Eigen::MatrixXcd rx = noise;
  for (int i = 0; i < cells; ++i) {
    for (int k = 0; k < users; ++k) {
      rx += std::sqrt(powers(i, k)) *
            tensor.to_bs[bs].col(tensor.column(i, k)) *
            phi.col(k).transpose();
    }
  }
  for (int k = 0; k < users; ++k) {
    const Eigen::VectorXcd despread = rx * phi.col(k).conjugate();
    const Eigen::VectorXcd expected =
        despread_pilot_sum(tensor, plan, powers, bs, k) +
        noise * phi.col(k).conjugate();
    CHECK((despread - expected).norm() <
          1e-10 * std::max(1.0, expected.norm()));
  }

  // Projected noise keeps the despread covariance tau_p sigma^2 I.
  Rng noise_rng(4097);
  double energy = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd block(antennas, tau_p);
    fill_complex_normal(noise_rng, block);
    block *= std::sqrt(sigma2);
    energy += (block * phi.col(1).conjugate()).squaredNorm();
  }
  CHECK(energy / (n * antennas * tau_p * sigma2) ==
        doctest::Approx(1.0).epsilon(0.03));
}
