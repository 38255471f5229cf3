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

#ifndef MMIMO_CHANNEL_HPP_
#define MMIMO_CHANNEL_HPP_

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mmimo/geometry.hpp"
#include "mmimo/rng.hpp"

namespace mmimo {

inline constexpr double kSpeedOfLightMps = 299792458.0;
inline constexpr double kDefaultCarrierHz = 2.0e9;
inline double carrier_wavelength_m(double carrier_hz) {
  return kSpeedOfLightMps / carrier_hz;
}

// Parameters of the double-scattering model for one link: the channel is
// sqrt(beta/S) * R^{1/2} G Rt^{1/2} g with G an M x S iid CN(0,1) matrix and
// g an S-vector of iid CN(0,1).  Antenna and scatterer spacings are in
// wavelengths; the cluster distance is in km and converted through the
// carrier wavelength.
struct DoubleScatteringParams {
  int scatterer_count = 21;                  // S, must be odd
  double antenna_spacing_wl = 0.5;           // d_l
  double scatterer_spacing_wl = 10.0;        // d_S
  double bs_angular_spread_rad = 2.0943951023931953;  // theta = 2 pi / 3
  double azimuth_rad = 0.0;                  // alpha, user azimuth
  double cluster_distance_km = 0.495;        // r
  double wavelength_m = kSpeedOfLightMps / kDefaultCarrierHz;
  double beta_linear = 1.0;                  // large-scale fading

  double cluster_distance_wl() const;
  void validate() const;  // throws ConfigError / DomainError
};

// Tagged description of the fading model on one link: uncorrelated Rayleigh
// CN(0, beta I) or the double-scattering model above.
class ChannelModelSpec {
 public:
  static ChannelModelSpec rayleigh(double beta_linear);
  static ChannelModelSpec double_scattering(const DoubleScatteringParams& p);

  bool is_rayleigh() const { return std::holds_alternative<double>(value_); }
  double beta_linear() const;
  // Only valid for double-scattering specs.
  const DoubleScatteringParams& scattering() const;

 private:
  ChannelModelSpec() = default;
  std::variant<double, DoubleScatteringParams> value_;
};

// Nominal scatterer angles: count values evenly spaced on
// [-spread/2, spread/2], i.e. n * spread / (count - 1) for integer
// n = (1-count)/2 ... (count-1)/2.  count = 1 gives {0}.
std::vector<double> scatterer_angles(int count, double spread_rad);

// Angular spread of the scatterer array seen from distance r (wavelengths):
// 2 atan(d_S (S - 1) / (2 r)).
double scatterer_angle_spread(double spacing_wl, int count,
                              double cluster_distance_wl);

// Spatial correlation of a uniform linear array with spacing d (wavelengths)
// illuminated from `count` directions theta_n around azimuth alpha:
//   [R]_{m,m'} = (1/count) sum_n exp{-2 pi j (m - m') d cos(pi/2 + alpha + theta_n)}.
// Unit diagonal, Hermitian PSD Toeplitz, rank <= count.
Eigen::MatrixXcd uniform_array_correlation(int size, double spacing_wl,
                                           double azimuth_rad,
                                           const std::vector<double>& angles);

// BS-side correlation R (size M): spacing d_l, angles spread over
// bs_angular_spread_rad around the user azimuth.
Eigen::MatrixXcd bs_correlation_matrix(int antennas,
                                       const DoubleScatteringParams& p);

// Scatterer-side correlation Rt (size S): spacing d_S, angles spread over
// the geometric angle subtended at distance r, around azimuth 0.
Eigen::MatrixXcd scatterer_correlation_matrix(const DoubleScatteringParams& p);

// Hermitian PSD square root via eigendecomposition.  Eigenvalues within
// +-1e-10 * max|lambda| of zero are clamped to zero so that numerically
// rank-deficient inputs keep their exact rank; eigenvalues below the band
// raise NumericalError.  Satisfies sqrt * sqrt^H = A to 1e-8 relative
// Frobenius error.
Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& a);

// Closed-form second moment E{h h^H}: beta I for Rayleigh, beta R for
// double scattering.
Eigen::MatrixXcd channel_second_moment(const ChannelModelSpec& spec,
                                       int antennas);

// Draws channel vectors for one link.  Construction precomputes the two
// matrix square roots; sample() then costs one M x S Gaussian fill and two
// small mat-vecs.  sample() is const and usable from several threads with
// distinct generators.
class ChannelSampler {
 public:
  ChannelSampler(const ChannelModelSpec& spec, int antennas);

  void sample(Rng& rng, Eigen::Ref<Eigen::VectorXcd> out) const;
  Eigen::VectorXcd sample(Rng& rng) const;

  int antennas() const { return antennas_; }
  const ChannelModelSpec& spec() const { return spec_; }
  // Closed-form E{h h^H}, cached at construction.
  const Eigen::MatrixXcd& second_moment() const { return second_moment_; }

 private:
  ChannelModelSpec spec_;
  int antennas_ = 0;
  double scale_ = 1.0;             // sqrt(beta) or sqrt(beta / S)
  Eigen::MatrixXcd bs_root_;       // R^{1/2}, empty for Rayleigh
  Eigen::MatrixXcd scatter_root_;  // Rt^{1/2}, empty for Rayleigh
  Eigen::MatrixXcd second_moment_;
};

// One-call convenience wrapper around ChannelSampler.
Eigen::VectorXcd sample_channel(Rng& rng, const ChannelModelSpec& spec,
                                int antennas);

// All small-scale channels of one fading realization, stored per receiving
// BS: to_bs[l] is M x (L*K) with column cell*K + user holding h_{cell,user}^l.
struct ChannelTensor {
  int cells = 0;
  int users_per_cell = 0;
  int antennas = 0;
  std::vector<Eigen::MatrixXcd> to_bs;

  ChannelTensor() = default;
  ChannelTensor(int cells_, int users_per_cell_, int antennas_);

  Eigen::Index column(int user_cell, int user) const;
  Eigen::VectorXcd channel(int user_cell, int user, int bs) const;
};

// Streaming estimate of E{h h^H} / beta from channel draws.
class EmpiricalCorrelation {
 public:
  EmpiricalCorrelation(int antennas, double beta_linear);

  void add(const Eigen::Ref<const Eigen::VectorXcd>& h);
  long long count() const { return count_; }
  Eigen::MatrixXcd value() const;  // throws DomainError when count == 0

 private:
  double beta_ = 1.0;
  long long count_ = 0;
  Eigen::MatrixXcd sum_;
};

// Batch form of the accumulator above.
Eigen::MatrixXcd empirical_correlation(
    const std::vector<Eigen::VectorXcd>& samples, double beta_linear);

// Favorable-propagation statistic E{|h_a^H h_b|} / (M sqrt(beta_a beta_b))
// over `pairs` independent draws of two users' channels.  For iid Rayleigh
// it approaches sqrt(pi/4) / sqrt(M).
double favorable_propagation_stat(Rng& rng, const ChannelModelSpec& spec_a,
                                  const ChannelModelSpec& spec_b, int antennas,
                                  long long pairs);

// Description of a fading model with the per-link quantities (azimuth,
// cluster distance, large-scale fading) left open; for_link() binds them
// from drop geometry.
struct ChannelModelTemplate {
  enum class Kind { kRayleigh, kDoubleScattering };

  Kind kind = Kind::kRayleigh;
  int scatterer_count = 21;
  double antenna_spacing_wl = 0.5;
  double scatterer_spacing_wl = 10.0;
  double bs_angular_spread_rad = 2.0943951023931953;
  double wavelength_m = kSpeedOfLightMps / kDefaultCarrierHz;

  ChannelModelSpec for_link(const LinkGeometry& link) const;
};

}  // namespace mmimo

#endif  // MMIMO_CHANNEL_HPP_
