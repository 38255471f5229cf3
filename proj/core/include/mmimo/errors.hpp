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

#ifndef MMIMO_ERRORS_HPP_
#define MMIMO_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mmimo {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent user-facing configuration (bad key, bad value,
// incompatible parameter combination).  CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Numerical failure at runtime: non-PSD inputs, failed factorizations,
// inconsistent Monte-Carlo moments.  CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Precondition violation on a function argument (out-of-domain scalar,
// dimension mismatch).  Reported through the CLI like a numerical error.
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// An estimated-channel Gram matrix too ill-conditioned to invert.  The
// simulation engine catches this and excludes the fading realization.
class DetectorSingularError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Filesystem failure while writing artifacts.  CLI exit code 4.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmimo

#endif  // MMIMO_ERRORS_HPP_
