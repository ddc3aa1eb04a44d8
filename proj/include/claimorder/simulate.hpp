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

// Seeded Monte Carlo simulation of T_{1:N} and T_{N:N} straight from the
// generative model, plus Kolmogorov–Smirnov comparison against analytic
// curves.

#ifndef CLAIMORDER_SIMULATE_HPP_
#define CLAIMORDER_SIMULATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "claimorder/error.hpp"
#include "claimorder/extremes.hpp"
#include "claimorder/parallel.hpp"
#include "claimorder/rng.hpp"

namespace claimorder {

struct SimulationConfig {
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
  /// Pairs replicates 2k and 2k+1 on one stream, the second using 1 - u.
  bool antithetic = false;
};

/// Empirical distribution of an extreme: positive values sorted, the atom at
/// zero counted separately.
class EmpiricalCurve {
 public:
  EmpiricalCurve() = default;
  EmpiricalCurve(std::size_t zero_count, std::vector<double> positive)
      : zero_count_(zero_count), positive_(std::move(positive)) {
    std::sort(positive_.begin(), positive_.end());
  }

  std::size_t size() const { return zero_count_ + positive_.size(); }
  std::size_t zero_count() const { return zero_count_; }
  const std::vector<double>& positive_values() const { return positive_; }

  /// Empirical mass at 0.
  double atom() const { return size() ? static_cast<double>(zero_count_) / size() : 0.0; }

  /// Right-continuous empirical CDF.
  double cdf(double x) const {
    if (size() == 0 || x < 0.0) return 0.0;
    const auto upto = std::upper_bound(positive_.begin(), positive_.end(), x) - positive_.begin();
    return static_cast<double>(zero_count_ + static_cast<std::size_t>(upto)) /
           static_cast<double>(size());
  }

  double survival(double x) const { return 1.0 - cdf(x); }

  bool operator==(const EmpiricalCurve& o) const {
    return zero_count_ == o.zero_count_ && positive_ == o.positive_;
  }

 private:
  std::size_t zero_count_ = 0;
  std::vector<double> positive_;
};

namespace detail {

// Uniform source that can mirror every draw.
struct StreamUniform {
  Xoshiro256StarStar* rng;
  bool mirrored;
  double operator()() const {
    const double u = rng->uniform();
    return mirrored ? 1.0 - u : u;
  }
};

inline std::size_t draw_count(const ClaimCountDistribution& counts, double u) {
  double acc = 0.0;
  for (std::size_t k = 0; k < counts.support().size(); ++k) {
    acc += counts.weights()[k];
    if (u < acc) return counts.support()[k];
  }
  return counts.support().back();
}

}  // namespace detail

/// One extreme per replicate: draw m from the counts, then J_i ~ Bernoulli(p_i)
/// and U_i for i = 1..m, and record min or max of J_i U_i. Replicate r uses
/// stream r (or stream r/2 mirrored for odd r under antithetic sampling),
/// so results do not depend on the thread count.
inline EmpiricalCurve sample_extreme(const Portfolio& pf, const ClaimCountDistribution& counts,
                                     ExtremeKind kind, const SimulationConfig& config) {
  if (config.samples < 1) throw DomainError("simulation needs at least one sample");
  counts.require_fits(pf);
  std::vector<double> values(config.samples);
  parallel_for_chunks(
      config.samples,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
          const std::uint64_t stream = config.antithetic ? r / 2 : r;
          Xoshiro256StarStar rng = Xoshiro256StarStar::for_stream(config.seed, stream);
          const detail::StreamUniform next{&rng, config.antithetic && (r % 2 == 1)};
          const std::size_t m = detail::draw_count(counts, next());
          double ext = kind == ExtremeKind::kMin ? std::numeric_limits<double>::infinity() : 0.0;
          for (std::size_t i = 0; i < m; ++i) {
            const Claim& c = pf.claims()[i];
            const bool occurs = next() < c.p;
            const double u = pf.family().sample(c.alpha, next);
            const double t = occurs ? u : 0.0;
            ext = kind == ExtremeKind::kMin ? std::min(ext, t) : std::max(ext, t);
          }
          values[r] = ext;
        }
      },
      8192);
  std::size_t zeros = 0;
  std::vector<double> positive;
  positive.reserve(values.size());
  for (double v : values) {
    if (v <= 0.0) {
      ++zeros;
    } else {
      positive.push_back(v);
    }
  }
  return EmpiricalCurve(zeros, std::move(positive));
}

/// sup |F_emp - F|: checked at the atom and, at every distinct positive
/// sample point x, between F_emp(x) and F(x) and between F_emp(x-) and F
/// just below x.
inline double ks_distance(const EmpiricalCurve& emp, const std::function<double(double)>& analytic_cdf) {
  if (emp.size() == 0) return 0.0;
  const double n = static_cast<double>(emp.size());
  const auto& xs = emp.positive_values();
  double sup = std::abs(emp.atom() - analytic_cdf(0.0));
  std::vector<std::size_t> ends;
  // Distinct sample points: the last index of each run of equal values.
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k + 1 == xs.size() || xs[k + 1] != xs[k]) ends.push_back(k);
  }
  std::vector<double> local(ends.size());
  parallel_for_chunks(
      ends.size(),
      [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) {
          const std::size_t k = ends[j];
          const std::size_t before = j == 0 ? 0 : ends[j - 1] + 1;
          const double z = static_cast<double>(emp.zero_count());
          const double f = analytic_cdf(xs[k]);
          const double f_below = analytic_cdf(std::nextafter(xs[k], 0.0));
          const double right = (z + static_cast<double>(k + 1)) / n;
          const double left = (z + static_cast<double>(before)) / n;
          local[j] = std::max(std::abs(right - f), std::abs(left - f_below));
        }
      },
      4096);
  for (double v : local) sup = std::max(sup, v);
  return sup;
}

/// Dvoretzky–Kiefer–Wolfowitz half-width: P(sup|F_n - F| > ε) <= δ.
inline double dkw_bound(std::size_t samples, double delta) {
  if (samples == 0) throw DomainError("DKW bound needs at least one sample");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("DKW level must lie in (0,1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(samples)));
}

}  // namespace claimorder

#endif  // CLAIMORDER_SIMULATE_HPP_
