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

#ifndef MMIMO_RNG_HPP_
#define MMIMO_RNG_HPP_

#include <cmath>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace mmimo {

// splitmix64 step, used to expand seeds and to derive substream seeds.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256++ by Blackman and Vigna.  Fast, 256-bit state, passes BigCrush.
// Seeded through splitmix64 so that any 64-bit seed gives a well-mixed state.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed = 0) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

using Rng = Xoshiro256pp;

// Stream labels for substream seed derivation.  Every consumer of randomness
// owns a distinct label so that streams never overlap across purposes.
enum class StreamKind : std::uint64_t {
  kUserDrop = 1,    // user placement and shadow fading of one drop
  kFading = 2,      // small-scale fading of one (drop, realization) pair
  kDiagnostics = 3, // standalone correlation / favorable-propagation studies
  kData = 4,        // payload symbols and receiver noise
};

// Derives a substream seed from a master seed and up to three indices by
// chaining splitmix64 absorption steps.  Deterministic and collision-
// resistant for the index ranges used here.
inline std::uint64_t derive_stream_seed(std::uint64_t master, StreamKind kind,
                                        std::uint64_t index_a = 0,
                                        std::uint64_t index_b = 0) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64_next(s);
  s ^= static_cast<std::uint64_t>(kind) + 0x9e3779b97f4a7c15ULL;
  h ^= splitmix64_next(s);
  s ^= index_a + 0xbf58476d1ce4e5b9ULL;
  h ^= splitmix64_next(s);
  s ^= index_b + 0x94d049bb133111ebULL;
  h ^= splitmix64_next(s);
  return h;
}

// One standard normal via the Marsaglia polar method.  Generates a pair and
// discards the second value; use the fill routines in hot paths.
inline double standard_normal(Rng& rng) {
  for (;;) {
    const double x = 2.0 * rng.uniform01() - 1.0;
    const double y = 2.0 * rng.uniform01() - 1.0;
    const double q = x * x + y * y;
    if (q > 0.0 && q < 1.0) {
      return x * std::sqrt(-2.0 * std::log(q) / q);
    }
  }
}

// One circularly-symmetric complex normal CN(0, 1): real and imaginary parts
// are independent N(0, 1/2).  The polar method yields exactly the two
// normals needed, so nothing is wasted.
inline std::complex<double> complex_normal(Rng& rng) {
  for (;;) {
    const double x = 2.0 * rng.uniform01() - 1.0;
    const double y = 2.0 * rng.uniform01() - 1.0;
    const double q = x * x + y * y;
    if (q > 0.0 && q < 1.0) {
      const double f = std::sqrt(-std::log(q) / q);
      return {x * f, y * f};
    }
  }
}

// Fills a dense complex expression with iid CN(0, 1) entries in column-major
// order.  The traversal order is part of the reproducibility contract.
template <typename Derived>
void fill_complex_normal(Rng& rng, Eigen::MatrixBase<Derived> const& out) {
  auto& m = const_cast<Eigen::MatrixBase<Derived>&>(out);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      m(r, c) = complex_normal(rng);
    }
  }
}

}  // namespace mmimo

#endif  // MMIMO_RNG_HPP_
