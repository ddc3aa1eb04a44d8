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

#ifndef CLAIMORDER_SPECIAL_FUNCTIONS_HPP_
#define CLAIMORDER_SPECIAL_FUNCTIONS_HPP_

#include <cmath>
#include <limits>

#include "claimorder/error.hpp"

namespace claimorder::special {

/// log P(a, x) and log Q(a, x) for the regularized incomplete gamma
/// function. Both are returned so callers can form F and F̄ without
/// cancellation.
struct LogIncompleteGamma {
  double log_p;
  double log_q;
};

namespace detail {

inline constexpr int kMaxIterations = 10000;
inline constexpr double kEpsilon = 1e-16;

// log of a^{-1} x^a e^{-x} / Γ(a), the common prefactor.
inline double log_prefactor(double a, double x) {
  return a * std::log(x) - x - std::lgamma(a);
}

// Series for P(a, x); converges quickly for x < a + 1.
inline double log_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEpsilon) {
      return std::log(sum) + log_prefactor(a, x);
    }
  }
  throw EvaluationError("incomplete gamma series did not converge");
}

// Modified Lentz continued fraction for Q(a, x); used for x >= a + 1.
inline double log_q_continued_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) {
      return std::log(h) + log_prefactor(a, x);
    }
  }
  throw EvaluationError("incomplete gamma continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete gamma in log space, a > 0, x >= 0.
inline LogIncompleteGamma log_incomplete_gamma(double a, double x) {
  if (!(a > 0.0)) throw DomainError("incomplete gamma: shape must be > 0");
  if (!(x >= 0.0)) throw DomainError("incomplete gamma: x must be >= 0");
  if (x == 0.0) {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  if (std::isinf(x)) {
    return {0.0, -std::numeric_limits<double>::infinity()};
  }
  if (x < a + 1.0) {
    const double log_p = detail::log_p_series(a, x);
    return {log_p, std::log1p(-std::exp(log_p))};
  }
  const double log_q = detail::log_q_continued_fraction(a, x);
  return {std::log1p(-std::exp(log_q)), log_q};
}

inline double gamma_p(double a, double x) {
  return std::exp(log_incomplete_gamma(a, x).log_p);
}

inline double gamma_q(double a, double x) {
  return std::exp(log_incomplete_gamma(a, x).log_q);
}

}  // namespace claimorder::special

#endif  // CLAIMORDER_SPECIAL_FUNCTIONS_HPP_
