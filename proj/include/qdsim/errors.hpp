// Copyright 2026 The qdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qdsim {

/// Base class for all library errors.
class SimError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Mode subset is out of range, duplicated, or otherwise malformed.
class InvalidSubsetError : public SimError {
  public:
    using SimError::SimError;
};

/// Covariance matrix is not symmetric or not positive definite.
class InvalidCovarianceError : public SimError {
  public:
    using SimError::SimError;
};

/// A symplectic eigenvalue lies below the physical bound 1/2 beyond tolerance.
class UnphysicalStateError : public SimError {
  public:
    using SimError::SimError;
};

/// Operation received a state or matrix of the wrong dimension.
class WrongArityError : public SimError {
  public:
    using SimError::SimError;
};

/// A matrix that must be invertible for the requested quantity is singular.
class NumericalDegeneracyError : public SimError {
  public:
    using SimError::SimError;
};

/// Coupled potential matrix is not positive definite; carries the offending
/// eigenvalue.
class InstabilityError : public SimError {
  public:
    InstabilityError(const std::string& what, double eigenvalue)
        : SimError(what), min_eigenvalue(eigenvalue) {}
    double min_eigenvalue;
};

/// Bath discretization requested with zero oscillators.
class EmptyBathError : public SimError {
  public:
    using SimError::SimError;
};

/// Fragment fraction outside (0, 1].
class InvalidFractionError : public SimError {
  public:
    using SimError::SimError;
};

/// Configuration rejected before any computation; message names the field.
/// CLI maps this family to exit code 2.
class ConfigError : public SimError {
  public:
    using SimError::SimError;
};

/// Internal numerical-consistency violation (CP check, oracle disagreement,
/// under-resolved grid). CLI maps this family to exit code 3.
class ConsistencyError : public SimError {
  public:
    using SimError::SimError;
};

}  // namespace qdsim
