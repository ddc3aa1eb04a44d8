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

// Exact distributions of the smallest and largest Bernoulli-thinned claim
// T_i = J_i U_i over the first m claims of a portfolio, for fixed m and for
// a random count N independent of the claims.

#ifndef CLAIMORDER_EXTREMES_HPP_
#define CLAIMORDER_EXTREMES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "claimorder/error.hpp"
#include "claimorder/majorization.hpp"
#include "claimorder/parallel.hpp"
#include "claimorder/severity.hpp"

namespace claimorder {

struct Claim {
  double p = 0.5;      // occurrence probability, in (0,1)
  double alpha = 1.0;  // severity parameter, > 0
};

/// Ordered claims sharing one severity family and one ψ transform. Order
/// matters: a count N = m selects the first m claims.
class Portfolio {
 public:
  Portfolio(SeverityFamily family, PsiTransform psi, std::vector<Claim> claims)
      : family_(std::move(family)), psi_(std::move(psi)), claims_(std::move(claims)) {
    if (claims_.empty()) throw ShapeError("portfolio must contain at least one claim");
    for (const Claim& c : claims_) {
      if (!(c.p > 0.0 && c.p < 1.0)) {
        throw DomainError("occurrence probability must lie in (0,1); got " +
                          detail::format_number(c.p));
      }
      if (!(c.alpha > 0.0) || !std::isfinite(c.alpha)) {
        throw DomainError("severity parameter must be > 0");
      }
    }
  }

  /// Builds claims from working-scale values v_i = ψ(p_i).
  static Portfolio from_psi_values(SeverityFamily family, PsiTransform psi,
                                   const std::vector<double>& v, const std::vector<double>& alpha) {
    if (v.size() != alpha.size()) throw ShapeError("psi values and alphas differ in length");
    std::vector<Claim> claims;
    for (std::size_t i = 0; i < v.size(); ++i) claims.push_back({psi.inverse(v[i]), alpha[i]});
    return Portfolio(std::move(family), std::move(psi), std::move(claims));
  }

  const SeverityFamily& family() const { return family_; }
  const PsiTransform& psi() const { return psi_; }
  const std::vector<Claim>& claims() const { return claims_; }
  std::size_t size() const { return claims_.size(); }

  std::vector<double> probabilities() const {
    std::vector<double> out;
    for (const Claim& c : claims_) out.push_back(c.p);
    return out;
  }
  std::vector<double> alphas() const {
    std::vector<double> out;
    for (const Claim& c : claims_) out.push_back(c.alpha);
    return out;
  }

  /// (ψ(p), α; n).
  ParamMatrix param_matrix() const {
    ParamMatrix m;
    for (const Claim& c : claims_) {
      m.row_psi.push_back(psi_(c.p));
      m.row_alpha.push_back(c.alpha);
    }
    return m;
  }

 private:
  SeverityFamily family_;
  PsiTransform psi_;
  std::vector<Claim> claims_;
};

/// Probability mass function of a positive claim count on a finite support.
class ClaimCountDistribution {
 public:
  /// e^{-λ} λ^m / m! on `support`, renormalized; the unnormalized values
  /// are kept in `raw_weights()`.
  static ClaimCountDistribution poisson(double lambda, std::vector<std::size_t> support) {
    detail::require_positive(lambda, "poisson lambda");
    if (support.empty()) throw DomainError("poisson counts need a non-empty support");
    std::vector<double> raw;
    for (std::size_t m : support) {
      const double md = static_cast<double>(m);
      raw.push_back(std::exp(-lambda + md * std::log(lambda) - std::lgamma(md + 1.0)));
    }
    const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
    if (!(total > 0.0)) throw EvaluationError("poisson weights underflow on the support");
    std::vector<double> w;
    for (double r : raw) w.push_back(r / total);
    ClaimCountDistribution d(std::move(support), std::move(w));
    d.raw_weights_ = std::move(raw);
    d.label_ = "poisson(lambda=" + detail::format_number(lambda) + ")";
    return d;
  }

  static ClaimCountDistribution degenerate(std::size_t m) {
    ClaimCountDistribution d({m}, {1.0});
    d.label_ = "degenerate(m=" + std::to_string(m) + ")";
    return d;
  }

  /// Explicit pmf. Weights must sum to 1 within 1e-9; they are then
  /// renormalized exactly.
  static ClaimCountDistribution from_weights(std::vector<std::size_t> support,
                                             std::vector<double> weights) {
    if (support.size() != weights.size()) throw ShapeError("count support and weights differ in length");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) {
      throw DomainError("count weights must sum to 1; got " + detail::format_number(total));
    }
    for (double& w : weights) w /= total;
    ClaimCountDistribution d(std::move(support), std::move(weights));
    d.label_ = "explicit";
    return d;
  }

  const std::vector<std::size_t>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& raw_weights() const { return raw_weights_; }
  std::size_t max_support() const { return support_.back(); }
  const std::string& label() const { return label_; }

  /// P(N > m).
  double tail(std::size_t m) const {
    double s = 0.0;
    for (std::size_t k = 0; k < support_.size(); ++k) {
      if (support_[k] > m) s += weights_[k];
    }
    return s;
  }

  bool same_as(const ClaimCountDistribution& other, double tol = 1e-12) const {
    if (support_ != other.support_) return false;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
      if (std::abs(weights_[k] - other.weights_[k]) > tol) return false;
    }
    return true;
  }

  void require_fits(const Portfolio& pf) const {
    if (max_support() > pf.size()) {
      throw ShapeError("count support reaches " + std::to_string(max_support()) +
                       " but the portfolio has " + std::to_string(pf.size()) + " claims");
    }
  }

 private:
  ClaimCountDistribution(std::vector<std::size_t> support, std::vector<double> weights)
      : support_(std::move(support)), weights_(std::move(weights)) {
    if (support_.empty()) throw DomainError("count distribution needs a non-empty support");
    for (std::size_t k = 0; k < support_.size(); ++k) {
      if (support_[k] == 0) throw DomainError("count support must be positive integers");
      if (k > 0 && support_[k] <= support_[k - 1]) {
        throw DomainError("count support must be strictly increasing");
      }
      if (!(weights_[k] >= 0.0)) throw DomainError("count weights must be non-negative");
    }
    raw_weights_ = weights_;
  }

  std::vector<std::size_t> support_;
  std::vector<double> weights_;
  std::vector<double> raw_weights_;
  std::string label_;
};

/// Poisson counts; see ClaimCountDistribution::poisson.
inline ClaimCountDistribution poisson_counts(double lambda, std::vector<std::size_t> support) {
  return ClaimCountDistribution::poisson(lambda, std::move(support));
}

/// N_1 <=_st N_2: P(N_1 > m) <= P(N_2 > m) for every m.
inline bool counts_st_leq(const ClaimCountDistribution& c1, const ClaimCountDistribution& c2,
                          double tol = 1e-12) {
  std::vector<std::size_t> pts{0};
  pts.insert(pts.end(), c1.support().begin(), c1.support().end());
  pts.insert(pts.end(), c2.support().begin(), c2.support().end());
  for (std::size_t m : pts) {
    if (c1.tail(m) > c2.tail(m) + tol) return false;
  }
  return true;
}

enum class ExtremeKind { kMin, kMax };

inline const char* to_string(ExtremeKind k) { return k == ExtremeKind::kMin ? "min" : "max"; }

/// Survival, CDF and density of one extreme at x, each formed without
/// cancellation (log-space products, expm1 for complements).
struct ExtremeValue {
  double survival = 1.0;
  double cdf = 0.0;
  double density = 0.0;
};

namespace detail {

inline void require_prefix(const Portfolio& pf, std::size_t m) {
  if (m < 1 || m > pf.size()) {
    throw ShapeError("claim count " + std::to_string(m) + " outside 1.." +
                     std::to_string(pf.size()));
  }
}

inline void require_x(double x) {
  if (!(x >= 0.0)) throw DomainError("extremes evaluated at negative or NaN x");
}

// Running log-space accumulators over the first i claims.
struct PrefixAccumulator {
  double log_min_survival = 0.0;  // Σ log(p_i F̄_i)
  double log_max_cdf = 0.0;       // Σ log(1 - p_i F̄_i)
  double hazard_sum = 0.0;        // Σ r_i
  double max_rh_sum = 0.0;        // Σ p_i f_i / (1 - p_i F̄_i)
  bool hazard_finite = true;

  void add(const SeverityFamily& fam, const Claim& c, double x, bool need_density) {
    const double log_sf = fam.log_survival(x, c.alpha);
    const double log_pf = std::log(c.p) + log_sf;
    log_min_survival += log_pf;
    const double one_minus = -std::expm1(log_pf);
    log_max_cdf += std::log1p(-std::exp(log_pf));
    if (!need_density) return;
    if (x == 0.0) {
      hazard_finite = false;
      return;
    }
    if (one_minus <= std::numeric_limits<double>::min()) {
      throw SingularityError("1 - p F̄ underflows");
    }
    const double log_f = fam.log_density(x, c.alpha);
    max_rh_sum += std::exp(std::log(c.p) + log_f) / one_minus;
    if (log_sf == kNegInf) {
      hazard_finite = false;
    } else {
      hazard_sum += std::exp(log_f - log_sf);
    }
  }

  ExtremeValue value(ExtremeKind kind, bool need_density) const {
    ExtremeValue v;
    if (kind == ExtremeKind::kMin) {
      v.survival = std::exp(log_min_survival);
      v.cdf = -std::expm1(log_min_survival);
      if (need_density) {
        if (!hazard_finite && v.survival > 0.0) {
          throw SingularityError("hazard of a claim is not finite at this x");
        }
        v.density = v.survival > 0.0 ? v.survival * hazard_sum : 0.0;
      }
    } else {
      v.cdf = std::exp(log_max_cdf);
      v.survival = -std::expm1(log_max_cdf);
      if (need_density) v.density = v.cdf * max_rh_sum;
    }
    return v;
  }
};

}  // namespace detail

/// Extreme of the first m claims at x. The density is the derivative of the
/// continuous part and needs x > 0.
inline ExtremeValue extreme_fixed(const Portfolio& pf, std::size_t m, ExtremeKind kind, double x,
                                  bool need_density = false) {
  detail::require_prefix(pf, m);
  detail::require_x(x);
  if (need_density && x == 0.0) throw DomainError("extreme density requires x > 0");
  detail::PrefixAccumulator acc;
  for (std::size_t i = 0; i < m; ++i) acc.add(pf.family(), pf.claims()[i], x, need_density);
  return acc.value(kind, need_density);
}

/// Mixture over the count distribution, computed in a single prefix pass.
inline ExtremeValue extreme_random(const Portfolio& pf, const ClaimCountDistribution& counts,
                                   ExtremeKind kind, double x, bool need_density = false) {
  counts.require_fits(pf);
  detail::require_x(x);
  if (need_density && x == 0.0) throw DomainError("extreme density requires x > 0");
  detail::PrefixAccumulator acc;
  ExtremeValue mix{0.0, 0.0, 0.0};
  std::size_t next = 0;
  for (std::size_t i = 0; i < counts.max_support(); ++i) {
    acc.add(pf.family(), pf.claims()[i], x, need_density);
    if (counts.support()[next] == i + 1) {
      const double w = counts.weights()[next];
      const ExtremeValue v = acc.value(kind, need_density);
      mix.survival += w * v.survival;
      mix.cdf += w * v.cdf;
      mix.density += w * v.density;
      ++next;
    }
  }
  return mix;
}

/// P(T_{1:m} > x) = ∏_{i<=m} p_i F̄(x; α_i).
inline double survival_min_fixed(const Portfolio& pf, std::size_t m, double x) {
  return extreme_fixed(pf, m, ExtremeKind::kMin, x).survival;
}

/// P(T_{m:m} <= x) = ∏_{i<=m} (1 - p_i F̄(x; α_i)).
inline double cdf_max_fixed(const Portfolio& pf, std::size_t m, double x) {
  return extreme_fixed(pf, m, ExtremeKind::kMax, x).cdf;
}

inline double density_min_fixed(const Portfolio& pf, std::size_t m, double x) {
  return extreme_fixed(pf, m, ExtremeKind::kMin, x, true).density;
}

inline double density_max_fixed(const Portfolio& pf, std::size_t m, double x) {
  return extreme_fixed(pf, m, ExtremeKind::kMax, x, true).density;
}

/// Σ_{i<=m} p_i F̄_i r_i / (1 - p_i F̄_i).
inline double reversed_hazard_max_fixed(const Portfolio& pf, std::size_t m, double x) {
  if (!(x > 0.0)) throw DomainError("reversed hazard requires x > 0");
  const ExtremeValue v = extreme_fixed(pf, m, ExtremeKind::kMax, x, true);
  if (!(v.cdf > 0.0)) throw SingularityError("CDF of the maximum underflows");
  return v.density / v.cdf;
}

/// F̄_{1:m}/F_{1:m} · Σ_{i<=m} r(x; α_i).
inline double reversed_hazard_min_fixed(const Portfolio& pf, std::size_t m, double x) {
  if (!(x > 0.0)) throw DomainError("reversed hazard requires x > 0");
  const ExtremeValue v = extreme_fixed(pf, m, ExtremeKind::kMin, x, true);
  if (!(v.cdf > 0.0)) throw SingularityError("CDF of the minimum underflows");
  return v.density / v.cdf;
}

inline double survival_min_random(const Portfolio& pf, const ClaimCountDistribution& counts,
                                  double x) {
  return extreme_random(pf, counts, ExtremeKind::kMin, x).survival;
}

inline double cdf_max_random(const Portfolio& pf, const ClaimCountDistribution& counts,
                             double x) {
  return extreme_random(pf, counts, ExtremeKind::kMax, x).cdf;
}

/// (d/dx mixture CDF) / mixture CDF, with the numerator summed term-wise
/// from the analytic fixed-m densities.
inline double reversed_hazard_random(const Portfolio& pf, const ClaimCountDistribution& counts,
                                     ExtremeKind kind, double x) {
  if (!(x > 0.0)) throw DomainError("reversed hazard requires x > 0");
  const ExtremeValue v = extreme_random(pf, counts, kind, x, true);
  if (!(v.cdf > 0.0)) throw SingularityError("mixture CDF underflows");
  return v.density / v.cdf;
}

/// Point mass of the extreme at 0: Σ w_m ∏(1-p_i) for the maximum and
/// Σ w_m (1 - ∏p_i) for the minimum.
inline double atom_at_zero(const Portfolio& pf, const ClaimCountDistribution& counts,
                           ExtremeKind kind) {
  return extreme_random(pf, counts, kind, 0.0).cdf;
}

// ---------------------------------------------------------------------------
// Grids.

inline constexpr std::size_t kDefaultGridPoints = 2000;
inline constexpr double kGridCdfTarget = 1.0 - 1e-6;

/// Sorted union of a geometric block on [x_min, x_max/10] (a quarter of the
/// points) and a linear block on [x_max/10, x_max].
inline std::vector<double> hybrid_grid(double x_min, double x_max,
                                       std::size_t points = kDefaultGridPoints) {
  if (!(x_min > 0.0) || !(x_max > x_min)) throw DomainError("grid needs 0 < x_min < x_max");
  if (points < 8) throw EvaluationError("grid needs at least 8 points");
  const double knee = std::max(x_min, x_max / 10.0);
  const std::size_t n_geo = points / 4;
  const std::size_t n_lin = points - n_geo;
  std::vector<double> g;
  g.reserve(points);
  if (knee > x_min) {
    const double ratio = std::log(knee / x_min) / static_cast<double>(n_geo);
    for (std::size_t k = 0; k < n_geo; ++k) g.push_back(x_min * std::exp(ratio * k));
  }
  for (std::size_t k = 0; k < n_lin; ++k) {
    g.push_back(knee + (x_max - knee) * static_cast<double>(k) / static_cast<double>(n_lin - 1));
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

/// Smallest power-of-two x at which every CDF reaches 1 - 1e-6.
inline double auto_upper_bound(const std::vector<std::function<double(double)>>& cdfs) {
  double x = 1.0 / 64.0;
  for (int k = 0; k < 200; ++k, x *= 2.0) {
    bool all = true;
    for (const auto& f : cdfs) all = all && f(x) >= kGridCdfTarget;
    if (all) return x;
  }
  throw EvaluationError("could not find an x where the CDFs reach 1 - 1e-6");
}

/// Evaluates `fn` on every grid point, in parallel, results by index.
inline std::vector<double> evaluate_on_grid(const std::vector<double>& grid,
                                            const std::function<double(double)>& fn) {
  std::vector<double> out(grid.size());
  parallel_for_chunks(
      grid.size(),
      [&](std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) {
          out[k] = fn(grid[k]);
          require_finite(out[k], "curve value");
        }
      },
      256);
  return out;
}

}  // namespace claimorder

#endif  // CLAIMORDER_EXTREMES_HPP_
