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

// Grid verifiers for the usual stochastic and reversed hazard rate orders,
// sign-change location, and a finite-difference Schur-convexity probe.

#ifndef CLAIMORDER_ORDERCHECK_HPP_
#define CLAIMORDER_ORDERCHECK_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "claimorder/error.hpp"
#include "claimorder/extremes.hpp"
#include "claimorder/majorization.hpp"
#include "claimorder/rng.hpp"

namespace claimorder {

inline constexpr double kOrderTolerance = 1e-9;
inline constexpr double kWitnessWidth = 1e-6;

using Curve = std::function<double(double)>;

struct Witness {
  double x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Result of an order check on a grid. For st, lhs/rhs are the survivals
/// of A and B at the witness. For rh, lhs is the CDF ratio at the witness
/// and rhs the ratio at the preceding grid point.
struct OrderVerdict {
  bool holds = true;
  std::optional<Witness> witness;
  double margin = std::numeric_limits<double>::infinity();
  std::string grid_spec;
  // st: bracket [lo, hi] of width <= 1e-6 around the boundary of the
  // violation region containing the witness.
  std::optional<std::pair<double, double>> crossing;
  // rh: maximal run of decreasing ratio steps containing the witness.
  std::optional<std::pair<double, double>> decreasing_interval;
  // rh: pointwise r̃_A >= r̃_B comparison (secondary evidence).
  bool pointwise_checked = false;
  std::size_t pointwise_violations = 0;
};

inline std::string describe_grid(const std::vector<double>& grid) {
  std::ostringstream os;
  os.precision(6);
  os << grid.size() << " points on [" << grid.front() << ", " << grid.back() << "]";
  return os.str();
}

namespace detail {

inline void require_grid_for_order(const std::vector<double>& grid) {
  if (grid.size() < 2) throw EvaluationError("order check needs at least two grid points");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw EvaluationError("order grid must be strictly increasing");
  }
}

// Shrinks [good, bad] (good satisfies pred, bad violates it) to width
// <= kWitnessWidth. Returns the bracket.
inline std::pair<double, double> bisect_boundary(const std::function<bool(double)>& violates,
                                                 double good, double bad) {
  for (int i = 0; i < 200 && std::abs(bad - good) > kWitnessWidth; ++i) {
    const double mid = 0.5 * (good + bad);
    (violates(mid) ? bad : good) = mid;
  }
  return {std::min(good, bad), std::max(good, bad)};
}

}  // namespace detail

/// Checks A >=_st B from survival curves: F̄_A(x) >= F̄_B(x) - tol on the
/// grid. A violation counts only when two consecutive grid points exceed
/// tol or a midpoint next to an isolated violating point confirms it; the
/// witness is then refined by bisection.
inline OrderVerdict verify_st(const Curve& survival_a, const Curve& survival_b,
                              const std::vector<double>& grid, double tol = kOrderTolerance) {
  detail::require_grid_for_order(grid);
  const auto sa = evaluate_on_grid(grid, survival_a);
  const auto sb = evaluate_on_grid(grid, survival_b);
  OrderVerdict v;
  v.grid_spec = describe_grid(grid);
  auto diff = [&](double x) { return survival_a(x) - survival_b(x); };
  auto violates = [&](double x) { return diff(x) < -tol; };

  std::optional<std::size_t> confirmed;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double d = sa[k] - sb[k];
    v.margin = std::min(v.margin, d);
    if (confirmed || d >= -tol) continue;
    const bool next_bad = k + 1 < grid.size() && sa[k + 1] - sb[k + 1] < -tol;
    bool ok = next_bad;
    if (!ok) {
      const bool left = k > 0 && violates(0.5 * (grid[k - 1] + grid[k]));
      const bool right = k + 1 < grid.size() && violates(0.5 * (grid[k] + grid[k + 1]));
      ok = left || right;
    }
    if (ok) confirmed = k;
  }
  if (!confirmed) return v;

  v.holds = false;
  const std::size_t k = *confirmed;
  double wx = grid[k];
  if (k > 0) {
    const auto bracket = detail::bisect_boundary(violates, grid[k - 1], grid[k]);
    v.crossing = bracket;
    wx = bracket.second;
    if (!violates(wx)) wx = grid[k];
  }
  v.witness = Witness{wx, survival_a(wx), survival_b(wx)};
  return v;
}

/// Checks A >=_rh B through monotonicity of F_A/F_B: every consecutive
/// step must be >= -tol. A decreasing step is confirmed by a neighbouring
/// decreasing step or by a midpoint evaluation. When reversed hazard
/// curves are supplied, the pointwise comparison r̃_A >= r̃_B is recorded as
/// secondary evidence.
inline OrderVerdict verify_rh(const Curve& cdf_a, const Curve& cdf_b,
                              const std::vector<double>& grid, double tol = kOrderTolerance,
                              const Curve& rh_a = {}, const Curve& rh_b = {}) {
  detail::require_grid_for_order(grid);
  const auto fa = evaluate_on_grid(grid, cdf_a);
  const auto fb = evaluate_on_grid(grid, cdf_b);
  std::vector<double> ratio(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(fb[k] > 0.0)) {
      throw SingularityError("CDF of B vanishes at x=" + detail::format_number(grid[k]));
    }
    ratio[k] = fa[k] / fb[k];
  }
  auto ratio_at = [&](double x) {
    const double b = cdf_b(x);
    if (!(b > 0.0)) throw SingularityError("CDF of B vanishes");
    return cdf_a(x) / b;
  };

  OrderVerdict v;
  v.grid_spec = describe_grid(grid);
  std::optional<std::size_t> confirmed;  // index of the step end
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double step = ratio[k] - ratio[k - 1];
    v.margin = std::min(v.margin, step);
    if (confirmed || step >= -tol) continue;
    bool ok = (k + 1 < grid.size() && ratio[k + 1] - ratio[k] < -tol) ||
              (k >= 2 && ratio[k - 1] - ratio[k - 2] < -tol);
    if (!ok) {
      const double mid = ratio_at(0.5 * (grid[k - 1] + grid[k]));
      ok = mid - ratio[k - 1] < -tol || ratio[k] - mid < -tol;
    }
    if (ok) confirmed = k;
  }
  if (confirmed) {
    v.holds = false;
    const std::size_t k = *confirmed;
    v.witness = Witness{grid[k], ratio[k], ratio[k - 1]};
    std::size_t lo = k - 1;
    std::size_t hi = k;
    while (lo > 0 && ratio[lo] - ratio[lo - 1] < -tol) --lo;
    while (hi + 1 < grid.size() && ratio[hi + 1] - ratio[hi] < -tol) ++hi;
    v.decreasing_interval = std::make_pair(grid[lo], grid[hi]);
  }
  if (rh_a && rh_b) {
    v.pointwise_checked = true;
    for (double x : grid) {
      if (!(x > 0.0)) continue;
      const double ra = rh_a(x);
      const double rb = rh_b(x);
      if (ra < rb - tol * (1.0 + std::abs(rb))) ++v.pointwise_violations;
    }
  }
  return v;
}

/// A located sign change of a difference curve: `left`/`right` bracket the
/// zero to width <= 1e-6; `from_sign` is the sign before it.
struct SignChange {
  double left = 0.0;
  double right = 0.0;
  int from_sign = 0;
  double x() const { return 0.5 * (left + right); }
};

/// Sign changes of `diff` between runs where |diff| > tol. Each bracket is
/// refined by bisection on the sign of `diff`.
inline std::vector<SignChange> find_sign_changes(const Curve& diff, const std::vector<double>& grid,
                                                 double tol = kOrderTolerance) {
  detail::require_grid_for_order(grid);
  const auto d = evaluate_on_grid(grid, diff);
  std::vector<SignChange> out;
  int last_sign = 0;
  std::size_t last_index = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const int s = d[k] > tol ? 1 : (d[k] < -tol ? -1 : 0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      // Run of opposite sign must persist for two points or be confirmed
      // at the midpoint to the next point.
      const bool persists =
          (k + 1 < grid.size() && (s > 0 ? d[k + 1] > tol : d[k + 1] < -tol)) ||
          (k + 1 < grid.size() &&
           (s > 0 ? diff(0.5 * (grid[k] + grid[k + 1])) > tol
                  : diff(0.5 * (grid[k] + grid[k + 1])) < -tol));
      if (!persists) continue;
      const int from = last_sign;
      auto on_from_side = [&](double x) {
        const double v = diff(x);
        return from > 0 ? v > 0.0 : v < 0.0;
      };
      double a = grid[last_index];
      double b = grid[k];
      for (int i = 0; i < 200 && b - a > kWitnessWidth; ++i) {
        const double mid = 0.5 * (a + b);
        (on_from_side(mid) ? a : b) = mid;
      }
      out.push_back({a, b, from});
    }
    last_sign = s;
    last_index = k;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Schur-convexity probe.

enum class SchurEvidence { kConvex, kConcave, kNeither, kConstant };

inline const char* to_string(SchurEvidence e) {
  switch (e) {
    case SchurEvidence::kConvex:
      return "schur_convex_evidence";
    case SchurEvidence::kConcave:
      return "schur_concave_evidence";
    case SchurEvidence::kNeither:
      return "neither";
    case SchurEvidence::kConstant:
      return "schur_constant";
  }
  return "unknown";
}

struct SchurTestResult {
  SchurEvidence evidence = SchurEvidence::kNeither;
  double min_value = std::numeric_limits<double>::infinity();   // min over pairs and cloud
  double max_value = -std::numeric_limits<double>::infinity();  // max over pairs and cloud
  double band = 0.0;                                            // zero band used
  bool convex_holds = true;
  bool concave_holds = true;
  std::size_t evaluations = 0;
};

struct SchurTestOptions {
  std::size_t cloud = 16;    // perturbed points besides the centre
  double spread = 0.05;      // relative perturbation of each coordinate
  double tol = 1e-7;         // zero band, relative to max |φ| (absolute if φ ≡ 0)
  std::uint64_t seed = 0x5C4u;
};

/// Evaluates (u_i - u_j)(∂φ/∂u_i - ∂φ/∂u_j) for all pairs with central
/// differences of step 1e-5·(1 + |u_i|), at `point` and at a cloud of
/// multiplicatively perturbed points. Values inside the band count as zero.
inline SchurTestResult schur_test(const std::function<double(const RealVector&)>& phi,
                                  const RealVector& point, const SchurTestOptions& opt = {}) {
  if (point.size() < 2) throw ShapeError("schur test needs at least two coordinates");
  SchurTestResult r;
  Xoshiro256StarStar rng(opt.seed);
  double phi_scale = 0.0;
  for (std::size_t c = 0; c <= opt.cloud; ++c) {
    RealVector u = point;
    if (c > 0) {
      for (double& ui : u) ui *= 1.0 + opt.spread * (2.0 * rng.uniform() - 1.0);
    }
    const double centre = phi(u);
    require_finite(centre, "schur test function value");
    phi_scale = std::max(phi_scale, std::abs(centre));
    RealVector grad(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double h = 1e-5 * (1.0 + std::abs(u[i]));
      RealVector up = u;
      RealVector dn = u;
      up[i] += h;
      dn[i] -= h;
      const double fu = phi(up);
      const double fd = phi(dn);
      require_finite(fu, "schur test function value");
      require_finite(fd, "schur test function value");
      grad[i] = (fu - fd) / (2.0 * h);
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t j = i + 1; j < u.size(); ++j) {
        const double e = (u[i] - u[j]) * (grad[i] - grad[j]);
        r.min_value = std::min(r.min_value, e);
        r.max_value = std::max(r.max_value, e);
        ++r.evaluations;
      }
    }
  }
  r.band = phi_scale > 0.0 ? opt.tol * phi_scale : opt.tol;
  r.convex_holds = r.min_value >= -r.band;
  r.concave_holds = r.max_value <= r.band;
  if (r.convex_holds && r.concave_holds) {
    r.evidence = SchurEvidence::kConstant;
  } else if (r.convex_holds) {
    r.evidence = SchurEvidence::kConvex;
  } else if (r.concave_holds) {
    r.evidence = SchurEvidence::kConcave;
  } else {
    r.evidence = SchurEvidence::kNeither;
  }
  return r;
}

}  // namespace claimorder

#endif  // CLAIMORDER_ORDERCHECK_HPP_
