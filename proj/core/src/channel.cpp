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

#include "mmimo/channel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "mmimo/errors.hpp"

namespace mmimo {
namespace {

constexpr double kPi = std::numbers::pi;
using namespace std::complex_literals;

}  // namespace

double DoubleScatteringParams::cluster_distance_wl() const {
  return cluster_distance_km * 1000.0 / wavelength_m;
}

void DoubleScatteringParams::validate() const {
  if (scatterer_count < 1) {
    throw ConfigError("scatterer_count must be >= 1, got " +
                      std::to_string(scatterer_count));
  }
  if (scatterer_count % 2 == 0) {
    throw ConfigError("scatterer_count must be odd, got " +
                      std::to_string(scatterer_count));
  }
  if (antenna_spacing_wl < 0.0) throw ConfigError("antenna_spacing_wl must be >= 0");
  if (scatterer_spacing_wl < 0.0) {
    throw ConfigError("scatterer_spacing_wl must be >= 0");
  }
  if (bs_angular_spread_rad < 0.0 || bs_angular_spread_rad > 2.0 * kPi) {
    throw ConfigError("bs_angular_spread_rad must lie in [0, 2 pi]");
  }
  if (!(cluster_distance_km > 0.0)) {
    throw ConfigError("cluster_distance_km must be > 0");
  }
  if (!(wavelength_m > 0.0)) throw ConfigError("wavelength_m must be > 0");
  if (!(beta_linear > 0.0)) throw ConfigError("beta_linear must be > 0");
}

ChannelModelSpec ChannelModelSpec::rayleigh(double beta_linear) {
  if (!(beta_linear > 0.0)) throw ConfigError("beta_linear must be > 0");
  ChannelModelSpec spec;
  spec.value_ = beta_linear;
  return spec;
}

ChannelModelSpec ChannelModelSpec::double_scattering(
    const DoubleScatteringParams& p) {
  p.validate();
  ChannelModelSpec spec;
  spec.value_ = p;
  return spec;
}

double ChannelModelSpec::beta_linear() const {
  if (is_rayleigh()) return std::get<double>(value_);
  return std::get<DoubleScatteringParams>(value_).beta_linear;
}

const DoubleScatteringParams& ChannelModelSpec::scattering() const {
  if (is_rayleigh()) {
    throw DomainError("ChannelModelSpec: no scattering parameters on Rayleigh");
  }
  return std::get<DoubleScatteringParams>(value_);
}

std::vector<double> scatterer_angles(int count, double spread_rad) {
  if (count < 1) throw DomainError("scatterer_angles: count must be >= 1");
  if (count == 1) return {0.0};
  std::vector<double> angles(static_cast<std::size_t>(count));
  const double step = spread_rad / (count - 1);
  const double first = -0.5 * (count - 1);
  for (int j = 0; j < count; ++j) {
    angles[static_cast<std::size_t>(j)] = (first + j) * step;
  }
  return angles;
}

double scatterer_angle_spread(double spacing_wl, int count,
                              double cluster_distance_wl) {
  if (!(cluster_distance_wl > 0.0)) {
    throw DomainError("scatterer_angle_spread: cluster distance must be > 0");
  }
  if (count < 1) throw DomainError("scatterer_angle_spread: count must be >= 1");
  if (count == 1 || spacing_wl == 0.0) return 0.0;
  return 2.0 * std::atan(spacing_wl * (count - 1) / (2.0 * cluster_distance_wl));
}

Eigen::MatrixXcd uniform_array_correlation(int size, double spacing_wl,
                                           double azimuth_rad,
                                           const std::vector<double>& angles) {
  if (size < 1) throw DomainError("uniform_array_correlation: size must be >= 1");
  if (angles.empty()) {
    throw DomainError("uniform_array_correlation: need at least one angle");
  }

  // Toeplitz: one value per antenna-index lag, averaged over the directions.
  Eigen::VectorXcd lag(size);
  lag.setZero();
  for (const double theta : angles) {
    const double c = std::cos(kPi / 2.0 + azimuth_rad + theta);
    for (int d = 0; d < size; ++d) {
      lag(d) += std::exp(-2.0 * kPi * 1i * (d * spacing_wl * c));
    }
  }
  lag /= static_cast<double>(angles.size());

  Eigen::MatrixXcd r(size, size);
  for (int m = 0; m < size; ++m) {
    for (int n = 0; n < size; ++n) {
      const int d = m - n;
      r(m, n) = d >= 0 ? lag(d) : std::conj(lag(-d));
    }
  }
  return r;
}

Eigen::MatrixXcd bs_correlation_matrix(int antennas,
                                       const DoubleScatteringParams& p) {
  p.validate();
  return uniform_array_correlation(
      antennas, p.antenna_spacing_wl, p.azimuth_rad,
      scatterer_angles(p.scatterer_count, p.bs_angular_spread_rad));
}

Eigen::MatrixXcd scatterer_correlation_matrix(const DoubleScatteringParams& p) {
  p.validate();
  const double spread = scatterer_angle_spread(
      p.scatterer_spacing_wl, p.scatterer_count, p.cluster_distance_wl());
  return uniform_array_correlation(p.scatterer_count, p.scatterer_spacing_wl,
                                   0.0, scatterer_angles(p.scatterer_count, spread));
}

Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw DomainError("matrix_sqrt_psd: matrix not square");
  const double scale = a.norm();
  if (scale == 0.0) return Eigen::MatrixXcd::Zero(a.rows(), a.cols());
  if ((a - a.adjoint()).norm() > 1e-10 * scale) {
    throw NumericalError("matrix_sqrt_psd: input is not Hermitian");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(a);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("matrix_sqrt_psd: eigendecomposition failed");
  }
  Eigen::VectorXd lambda = eig.eigenvalues();
  const double lmax = lambda.cwiseAbs().maxCoeff();
  const double band = 1e-10 * lmax;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) < -band) {
      throw NumericalError("matrix_sqrt_psd: eigenvalue " +
                           std::to_string(lambda(i)) +
                           " below the PSD tolerance");
    }
    // Clamp the +-band around zero to zero so that rank deficiency survives
    // the square root exactly instead of leaking amplified noise directions.
    lambda(i) = lambda(i) <= band ? 0.0 : lambda(i);
  }
  return eig.eigenvectors() * lambda.cwiseSqrt().asDiagonal() *
         eig.eigenvectors().adjoint();
}

Eigen::MatrixXcd channel_second_moment(const ChannelModelSpec& spec,
                                       int antennas) {
  if (antennas < 1) throw DomainError("channel_second_moment: antennas must be >= 1");
  if (spec.is_rayleigh()) {
    return spec.beta_linear() *
           Eigen::MatrixXcd::Identity(antennas, antennas);
  }
  return spec.beta_linear() * bs_correlation_matrix(antennas, spec.scattering());
}

ChannelSampler::ChannelSampler(const ChannelModelSpec& spec, int antennas)
    : spec_(spec), antennas_(antennas) {
  if (antennas < 1) throw DomainError("ChannelSampler: antennas must be >= 1");
  second_moment_ = channel_second_moment(spec, antennas);
  if (spec_.is_rayleigh()) {
    scale_ = std::sqrt(spec_.beta_linear());
    return;
  }
  const DoubleScatteringParams& p = spec_.scattering();
  scale_ = std::sqrt(p.beta_linear / p.scatterer_count);
  bs_root_ = matrix_sqrt_psd(bs_correlation_matrix(antennas, p));
  scatter_root_ = matrix_sqrt_psd(scatterer_correlation_matrix(p));
}

void ChannelSampler::sample(Rng& rng, Eigen::Ref<Eigen::VectorXcd> out) const {
  if (out.size() != antennas_) {
    throw DomainError("ChannelSampler::sample: output size mismatch");
  }
  if (spec_.is_rayleigh()) {
    for (Eigen::Index m = 0; m < out.size(); ++m) {
      out(m) = scale_ * complex_normal(rng);
    }
    return;
  }
  const int s = spec_.scattering().scatterer_count;
  Eigen::VectorXcd g(s);
  fill_complex_normal(rng, g);
  Eigen::MatrixXcd big_g(antennas_, s);
  fill_complex_normal(rng, big_g);
  out.noalias() = scale_ * (bs_root_ * (big_g * (scatter_root_ * g)));
}

Eigen::VectorXcd ChannelSampler::sample(Rng& rng) const {
  Eigen::VectorXcd h(antennas_);
  sample(rng, h);
  return h;
}

Eigen::VectorXcd sample_channel(Rng& rng, const ChannelModelSpec& spec,
                                int antennas) {
  return ChannelSampler(spec, antennas).sample(rng);
}

ChannelTensor::ChannelTensor(int cells_, int users_per_cell_, int antennas_)
    : cells(cells_), users_per_cell(users_per_cell_), antennas(antennas_) {
  if (cells < 1 || users_per_cell < 1 || antennas < 1) {
    throw DomainError("ChannelTensor: dimensions must be >= 1");
  }
  to_bs.assign(static_cast<std::size_t>(cells),
               Eigen::MatrixXcd(antennas, cells * users_per_cell));
}

Eigen::Index ChannelTensor::column(int user_cell, int user) const {
  return static_cast<Eigen::Index>(user_cell) * users_per_cell + user;
}

Eigen::VectorXcd ChannelTensor::channel(int user_cell, int user, int bs) const {
  return to_bs[static_cast<std::size_t>(bs)].col(column(user_cell, user));
}

EmpiricalCorrelation::EmpiricalCorrelation(int antennas, double beta_linear)
    : beta_(beta_linear) {
  if (antennas < 1) throw DomainError("EmpiricalCorrelation: antennas must be >= 1");
  if (!(beta_linear > 0.0)) {
    throw DomainError("EmpiricalCorrelation: beta must be > 0");
  }
  sum_ = Eigen::MatrixXcd::Zero(antennas, antennas);
}

void EmpiricalCorrelation::add(const Eigen::Ref<const Eigen::VectorXcd>& h) {
  if (h.size() != sum_.rows()) {
    throw DomainError("EmpiricalCorrelation::add: sample size mismatch");
  }
  sum_.selfadjointView<Eigen::Lower>().rankUpdate(h, 1.0);
  ++count_;
}

Eigen::MatrixXcd EmpiricalCorrelation::value() const {
  if (count_ == 0) throw DomainError("EmpiricalCorrelation: no samples");
  Eigen::MatrixXcd full = sum_.selfadjointView<Eigen::Lower>();
  return full / (beta_ * static_cast<double>(count_));
}

Eigen::MatrixXcd empirical_correlation(
    const std::vector<Eigen::VectorXcd>& samples, double beta_linear) {
  if (samples.empty()) throw DomainError("empirical_correlation: no samples");
  EmpiricalCorrelation acc(static_cast<int>(samples.front().size()), beta_linear);
  for (const auto& h : samples) acc.add(h);
  return acc.value();
}

double favorable_propagation_stat(Rng& rng, const ChannelModelSpec& spec_a,
                                  const ChannelModelSpec& spec_b, int antennas,
                                  long long pairs) {
  if (pairs < 1) throw DomainError("favorable_propagation_stat: pairs must be >= 1");
  const ChannelSampler sampler_a(spec_a, antennas);
  const ChannelSampler sampler_b(spec_b, antennas);
  Eigen::VectorXcd ha(antennas), hb(antennas);
  double acc = 0.0;
  for (long long n = 0; n < pairs; ++n) {
    sampler_a.sample(rng, ha);
    sampler_b.sample(rng, hb);
    acc += std::abs(ha.dot(hb));
  }
  const double norm = static_cast<double>(antennas) *
                      std::sqrt(spec_a.beta_linear() * spec_b.beta_linear());
  return acc / (static_cast<double>(pairs) * norm);
}

ChannelModelSpec ChannelModelTemplate::for_link(const LinkGeometry& link) const {
  if (kind == Kind::kRayleigh) {
    return ChannelModelSpec::rayleigh(link.beta_linear());
  }
  DoubleScatteringParams p;
  p.scatterer_count = scatterer_count;
  p.antenna_spacing_wl = antenna_spacing_wl;
  p.scatterer_spacing_wl = scatterer_spacing_wl;
  p.bs_angular_spread_rad = bs_angular_spread_rad;
  p.azimuth_rad = link.azimuth_rad;
  p.cluster_distance_km = link.cluster_distance_km;
  p.wavelength_m = wavelength_m;
  p.beta_linear = link.beta_linear();
  return ChannelModelSpec::double_scattering(p);
}

}  // namespace mmimo
