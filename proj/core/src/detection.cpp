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

#include "mmimo/detection.hpp"

#include <string>

namespace mmimo {
namespace {

Eigen::MatrixXcd zf_from_gram(const Eigen::MatrixXcd& estimates,
                              const Eigen::MatrixXcd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("zf detector: eigendecomposition of the Gram failed");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double lmax = lambda.maxCoeff();
  const double lmin = lambda.minCoeff();
  if (!(lmin > 0.0) || lmax / lmin > kZfConditionLimit) {
    throw DetectorSingularError(
        "zf detector: Gram condition number exceeds " +
        std::to_string(kZfConditionLimit));
  }
  const Eigen::MatrixXcd inv = eig.eigenvectors() *
                               lambda.cwiseInverse().asDiagonal() *
                               eig.eigenvectors().adjoint();
  return estimates * inv;
}

Eigen::MatrixXcd mmse_from_gram(const Eigen::MatrixXcd& estimates,
                                const Eigen::MatrixXcd& gram,
                                const Eigen::VectorXd& powers) {
  if (powers.size() != gram.rows()) {
    throw DomainError("mmse detector: power vector size mismatch");
  }
  if ((powers.array() <= 0.0).any()) {
    throw DomainError("mmse detector: powers must be positive");
  }
  Eigen::MatrixXcd regularized = gram;
  regularized.diagonal() += powers.cwiseInverse().cast<std::complex<double>>();
  Eigen::LLT<Eigen::MatrixXcd> llt(regularized);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("mmse detector: regularized Gram is not positive definite");
  }
  return llt.solve(estimates.adjoint()).adjoint();
}

}  // namespace

std::string_view detector_name(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::kMr:
      return "mr";
    case DetectorKind::kZf:
      return "zf";
    case DetectorKind::kMmse:
      return "mmse";
  }
  throw DomainError("detector_name: unknown detector kind");
}

DetectorKind detector_from_name(std::string_view name) {
  if (name == "mr") return DetectorKind::kMr;
  if (name == "zf") return DetectorKind::kZf;
  if (name == "mmse") return DetectorKind::kMmse;
  throw ConfigError("unknown detector '" + std::string(name) +
                    "', expected mr, zf or mmse");
}

Eigen::MatrixXcd detector_matrix(const Eigen::MatrixXcd& estimates,
                                 const Eigen::VectorXd& powers,
                                 DetectorKind kind) {
  DetectorFactory factory(estimates);
  return factory.make(kind, powers);
}

DetectorFactory::DetectorFactory(const Eigen::MatrixXcd& estimates)
    : estimates_(estimates) {}

const Eigen::MatrixXcd& DetectorFactory::gram() {
  if (!gram_) {
    gram_.emplace(estimates_.cols(), estimates_.cols());
    gram_->noalias() = estimates_.adjoint() * estimates_;
  }
  return *gram_;
}

Eigen::MatrixXcd DetectorFactory::make(DetectorKind kind,
                                       const Eigen::VectorXd& powers) {
  switch (kind) {
    case DetectorKind::kMr:
      return estimates_;
    case DetectorKind::kZf:
      if (estimates_.cols() > estimates_.rows()) {
        throw DomainError("zf detector: more users than antennas");
      }
      return zf_from_gram(estimates_, gram());
    case DetectorKind::kMmse:
      return mmse_from_gram(estimates_, gram(), powers);
  }
  throw DomainError("DetectorFactory::make: unknown detector kind");
}

}  // namespace mmimo
