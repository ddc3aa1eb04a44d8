// Copyright 2026 The claimorder Authors.
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

#ifndef CLAIMORDER_ERROR_HPP_
#define CLAIMORDER_ERROR_HPP_

#include <cmath>
#include <stdexcept>
#include <string>

namespace claimorder {

/// Argument outside the mathematical domain of an operation (α ≤ 0, x < 0,
/// p ∉ (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Shape mismatch between vectors, matrices, portfolios or count supports.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A function evaluation produced a value that is not usable: non-finite
/// output, a baseline CDF outside [0,1], a grid that is too small.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A ratio whose denominator underflowed to zero (hazard where F̄ = 0,
/// reversed hazard where F = 0).
class SingularityError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

/// Structural requirement of a theorem audit not met (unequal n, different
/// families, unequal count distributions where equality is required, ...).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Instance file could not be parsed; the message carries the location or
/// the JSON pointer of the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw EvaluationError(std::string(what) + ": non-finite value");
  }
}

}  // namespace claimorder

#endif  // CLAIMORDER_ERROR_HPP_
