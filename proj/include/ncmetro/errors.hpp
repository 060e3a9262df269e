// Copyright 2026 The ncmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncmetro {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input rejected before any computation: bad arguments, violated
/// preconditions, unknown presets. Maps to CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Operator-expression syntax error. `position()` is the 0-based character
/// offset of the offending token.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : ValidationError(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A normal-ordered product would exceed the configured degree limit.
class DegreeLimitError : public Error {
 public:
  using Error::Error;
};

/// The adjoint tower of a pair hit the cap without terminating or closing.
class UnclassifiedPairError : public Error {
 public:
  using Error::Error;
};

/// An internal identity that must hold (Hermiticity of a generator, a
/// spectral bound) was violated. Signals a bug rather than bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A finite-dimensional QFI exceeded N² times the squared spectral spread.
class BoundViolationError : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

/// The operation needs a Gaussian-simulable protocol (or a linear generator)
/// and was handed something of higher degree.
class NotGaussianError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Homodyne variance vanished, so the Fisher information is undefined.
class DegenerateMeasurementError : public Error {
 public:
  using Error::Error;
};

/// Numerical-trust failures. Map to CLI exit code 3.
class TrustError : public Error {
 public:
  using Error::Error;
};

/// Population reached the last Fock level of a truncated basis.
class LeakageError : public TrustError {
 public:
  using TrustError::TrustError;
};

/// A truncated-basis result changed under dimension doubling.
class TruncationError : public TrustError {
 public:
  using TrustError::TrustError;
};

/// Finite-difference passes disagree beyond the escalation threshold.
class ConvergenceError : public TrustError {
 public:
  using TrustError::TrustError;
};

}  // namespace ncmetro
