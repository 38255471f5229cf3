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

#ifndef MMIMO_DETECTION_HPP_
#define MMIMO_DETECTION_HPP_

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "mmimo/errors.hpp"

namespace mmimo {

enum class DetectorKind { kMr, kZf, kMmse };

std::string_view detector_name(DetectorKind kind);
DetectorKind detector_from_name(std::string_view name);  // throws ConfigError

inline constexpr double kZfConditionLimit = 1e12;

// Receive combining matrix V (M x K) from the estimated serving channels
// Hhat (M x K):
//   MR    V = Hhat
//   ZF    V = Hhat (Hhat^H Hhat)^{-1}
//   MMSE  V = Hhat (Hhat^H Hhat + P^{-1})^{-1},  P = diag(powers)
// The MMSE form assumes powers expressed relative to the noise variance;
// callers with watt-scale powers divide by sigma^2 first.  ZF requires
// K <= M and raises DetectorSingularError when the Gram condition number
// exceeds kZfConditionLimit.
Eigen::MatrixXcd detector_matrix(const Eigen::MatrixXcd& estimates,
                                 const Eigen::VectorXd& powers,
                                 DetectorKind kind);

// Builds several detectors from the same estimates, computing the Gram
// matrix Hhat^H Hhat at most once.
class DetectorFactory {
 public:
  explicit DetectorFactory(const Eigen::MatrixXcd& estimates);

  Eigen::MatrixXcd make(DetectorKind kind, const Eigen::VectorXd& powers);

 private:
  const Eigen::MatrixXcd& estimates_;
  std::optional<Eigen::MatrixXcd> gram_;

  const Eigen::MatrixXcd& gram();
};

}  // namespace mmimo

#endif  // MMIMO_DETECTION_HPP_
