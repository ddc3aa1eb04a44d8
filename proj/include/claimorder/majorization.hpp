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

// Vector and 2×n matrix majorization predicates, T-transforms, doubly
// stochastic feasibility and the similarly-ordered cone M_n.
//
// Direction convention. With x_(1) <= ... <= x_(n) the ascending order:
//   weakly_supermajorizes(a, b)  <=>  Σ_{i<=l} a_(i) <= Σ_{i<=l} b_(i), l = 1..n
//   majorizes(a, b)              <=>  the same for l = 1..n-1, equal totals
// so "a dominates b" means a is the more spread-out vector, matching the
// usage "α ⪰^w β" in the ordering results.

#ifndef CLAIMORDER_MAJORIZATION_HPP_
#define CLAIMORDER_MAJORIZATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "claimorder/error.hpp"
#include "claimorder/linear_feasibility.hpp"

namespace claimorder {

using RealVector = std::vector<double>;

inline constexpr double kPrefixTolerance = 1e-12;
inline constexpr double kChainTolerance = 1e-10;

/// Ascending sorts and prefix sums of two vectors, kept for reports.
struct PrefixTable {
  RealVector sorted_a;
  RealVector sorted_b;
  RealVector prefix_a;
  RealVector prefix_b;
};

/// Outcome of a prefix-sum comparison. `first_failure` is the 1-based l of
/// the first violated inequality (0 when none); `totals_equal` is only
/// meaningful for `majorizes`.
struct MajorizationDetail {
  bool holds = true;
  std::size_t first_failure = 0;
  bool totals_equal = true;
  PrefixTable table;
};

namespace detail {

inline void require_same_length(const RealVector& a, const RealVector& b) {
  if (a.size() != b.size()) {
    throw ShapeError("majorization: vectors have lengths " + std::to_string(a.size()) +
                     " and " + std::to_string(b.size()));
  }
  if (a.empty()) throw ShapeError("majorization: vectors must be non-empty");
  for (double v : a) require_finite(v, "majorization entry");
  for (double v : b) require_finite(v, "majorization entry");
}

inline PrefixTable make_prefix_table(const RealVector& a, const RealVector& b) {
  PrefixTable t{a, b, {}, {}};
  std::sort(t.sorted_a.begin(), t.sorted_a.end());
  std::sort(t.sorted_b.begin(), t.sorted_b.end());
  t.prefix_a.resize(a.size());
  t.prefix_b.resize(b.size());
  std::partial_sum(t.sorted_a.begin(), t.sorted_a.end(), t.prefix_a.begin());
  std::partial_sum(t.sorted_b.begin(), t.sorted_b.end(), t.prefix_b.begin());
  return t;
}

}  // namespace detail

inline PrefixTable prefix_table(const RealVector& a, const RealVector& b) {
  detail::require_same_length(a, b);
  return detail::make_prefix_table(a, b);
}

inline MajorizationDetail weak_supermajorization_detail(const RealVector& a, const RealVector& b) {
  detail::require_same_length(a, b);
  MajorizationDetail d;
  d.table = detail::make_prefix_table(a, b);
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (d.table.prefix_a[l] > d.table.prefix_b[l] + kPrefixTolerance) {
      d.holds = false;
      d.first_failure = l + 1;
      break;
    }
  }
  d.totals_equal = std::abs(d.table.prefix_a.back() - d.table.prefix_b.back()) <= kPrefixTolerance;
  return d;
}

inline MajorizationDetail majorization_detail(const RealVector& a, const RealVector& b) {
  detail::require_same_length(a, b);
  MajorizationDetail d;
  d.table = detail::make_prefix_table(a, b);
  const std::size_t n = a.size();
  for (std::size_t l = 0; l + 1 < n; ++l) {
    if (d.table.prefix_a[l] > d.table.prefix_b[l] + kPrefixTolerance) {
      d.holds = false;
      d.first_failure = l + 1;
      break;
    }
  }
  d.totals_equal = std::abs(d.table.prefix_a.back() - d.table.prefix_b.back()) <= kPrefixTolerance;
  if (!d.totals_equal) {
    if (d.holds) d.first_failure = n;
    d.holds = false;
  }
  return d;
}

/// a ⪰^m b.
inline bool majorizes(const RealVector& a, const RealVector& b) {
  return majorization_detail(a, b).holds;
}

/// a ⪰^w b.
inline bool weakly_supermajorizes(const RealVector& a, const RealVector& b) {
  return weak_supermajorization_detail(a, b).holds;
}

// ---------------------------------------------------------------------------

/// The 2×n matrix (ψ(p), α; n).
struct ParamMatrix {
  RealVector row_psi;
  RealVector row_alpha;

  std::size_t size() const { return row_psi.size(); }

  const RealVector& row(std::size_t r) const { return r == 0 ? row_psi : row_alpha; }
  RealVector& row(std::size_t r) { return r == 0 ? row_psi : row_alpha; }

  /// Throws unless both rows are equal-length, non-empty, finite and
  /// strictly positive.
  void validate() const {
    if (row_psi.size() != row_alpha.size()) {
      throw ShapeError("parameter matrix rows have different lengths");
    }
    if (row_psi.empty()) throw ShapeError("parameter matrix must have at least one column");
    for (std::size_t r = 0; r < 2; ++r) {
      for (double v : row(r)) {
        require_finite(v, "parameter matrix entry");
        if (!(v > 0.0)) throw DomainError("parameter matrix entries must be strictly positive");
      }
    }
  }
};

struct RowMajorizationReport {
  bool holds = true;
  MajorizationDetail psi_row;
  MajorizationDetail alpha_row;
};

namespace detail {

inline void require_same_columns(const ParamMatrix& a, const ParamMatrix& b) {
  if (a.row_psi.size() != a.row_alpha.size() || b.row_psi.size() != b.row_alpha.size()) {
    throw ShapeError("parameter matrix rows have different lengths");
  }
  if (a.size() != b.size()) {
    throw ShapeError("parameter matrices have " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()) + " columns");
  }
}

}  // namespace detail

/// A ≻^w B row by row.
inline RowMajorizationReport row_weakly_majorizes_detail(const ParamMatrix& a, const ParamMatrix& b) {
  detail::require_same_columns(a, b);
  RowMajorizationReport r;
  r.psi_row = weak_supermajorization_detail(a.row_psi, b.row_psi);
  r.alpha_row = weak_supermajorization_detail(a.row_alpha, b.row_alpha);
  r.holds = r.psi_row.holds && r.alpha_row.holds;
  return r;
}

/// A ≻^row B.
inline RowMajorizationReport row_majorizes_detail(const ParamMatrix& a, const ParamMatrix& b) {
  detail::require_same_columns(a, b);
  RowMajorizationReport r;
  r.psi_row = majorization_detail(a.row_psi, b.row_psi);
  r.alpha_row = majorization_detail(a.row_alpha, b.row_alpha);
  r.holds = r.psi_row.holds && r.alpha_row.holds;
  return r;
}

inline bool row_weakly_majorizes(const ParamMatrix& a, const ParamMatrix& b) {
  return row_weakly_majorizes_detail(a, b).holds;
}

inline bool row_majorizes(const ParamMatrix& a, const ParamMatrix& b) {
  return row_majorizes_detail(a, b).holds;
}

// ---------------------------------------------------------------------------

/// T = wI + (1-w)Π, with Π[permutation[j]][j] = 1 so that (xΠ)_j =
/// x_{permutation[j]}.
struct TTransform {
  double w = 1.0;
  std::vector<std::size_t> permutation;

  /// Averaging of columns i and j (0-based).
  static TTransform transposition(std::size_t n, std::size_t i, std::size_t j, double w) {
    if (i >= n || j >= n) throw ShapeError("transposition index out of range");
    TTransform t;
    t.w = w;
    t.permutation.resize(n);
    std::iota(t.permutation.begin(), t.permutation.end(), std::size_t{0});
    std::swap(t.permutation[i], t.permutation[j]);
    t.validate();
    return t;
  }

  void validate() const {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("T-transform weight must lie in [0,1]");
    std::vector<bool> seen(permutation.size(), false);
    for (std::size_t v : permutation) {
      if (v >= permutation.size() || seen[v]) {
        throw DomainError("T-transform permutation is not a bijection");
      }
      seen[v] = true;
    }
  }

  std::vector<std::vector<double>> matrix() const {
    validate();
    const std::size_t n = permutation.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
      m[j][j] += w;
      m[permutation[j]][j] += 1.0 - w;
    }
    return m;
  }
};

/// A·T, row by row.
inline ParamMatrix apply_t_transform(const ParamMatrix& a, const TTransform& t) {
  t.validate();
  if (t.permutation.size() != a.size() || a.row_psi.size() != a.row_alpha.size()) {
    throw ShapeError("T-transform dimension does not match the matrix");
  }
  ParamMatrix out = a;
  for (std::size_t r = 0; r < 2; ++r) {
    const RealVector& src = a.row(r);
    RealVector& dst = out.row(r);
    for (std::size_t j = 0; j < src.size(); ++j) {
      dst[j] = t.w * src[j] + (1.0 - t.w) * src[t.permutation[j]];
    }
  }
  return out;
}

/// True when B = A·T_1···T_k entrywise within 1e-10.
inline bool chain_majorizes_via_t(const ParamMatrix& a, const ParamMatrix& b,
                                  const std::vector<TTransform>& transforms) {
  detail::require_same_columns(a, b);
  ParamMatrix cur = a;
  for (const auto& t : transforms) cur = apply_t_transform(cur, t);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t j = 0; j < cur.size(); ++j) {
      if (std::abs(cur.row(r)[j] - b.row(r)[j]) > kChainTolerance) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

enum class ChainStatus { kFeasible, kInfeasible, kNotConverged };

struct DoublyStochasticResult {
  ChainStatus status = ChainStatus::kNotConverged;
  std::vector<std::vector<double>> witness;  // P with A·P = B when feasible
  bool feasible() const { return status == ChainStatus::kFeasible; }
  explicit operator bool() const { return feasible(); }
};

inline constexpr std::size_t kBirkhoffVertexLimit = 5;

namespace detail {

inline bool verify_doubly_stochastic_witness(const ParamMatrix& a, const ParamMatrix& b,
                                             const std::vector<std::vector<double>>& p) {
  const std::size_t n = a.size();
  double scale = 1.0;
  for (std::size_t r = 0; r < 2; ++r) {
    for (double v : a.row(r)) scale = std::max(scale, std::abs(v));
  }
  for (std::size_t k = 0; k < n; ++k) {
    double row_sum = 0.0;
    double col_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (p[k][j] < -1e-9) return false;
      row_sum += p[k][j];
      col_sum += p[j][k];
    }
    if (std::abs(row_sum - 1.0) > 1e-7 || std::abs(col_sum - 1.0) > 1e-7) return false;
  }
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k) v += a.row(r)[k] * p[k][j];
      if (std::abs(v - b.row(r)[j]) > 1e-7 * scale) return false;
    }
  }
  return true;
}

// LP over convex weights of the n! permutation matrices.
inline DoublyStochasticResult birkhoff_vertex_feasibility(const ParamMatrix& a,
                                                          const ParamMatrix& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  do {
    perms.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));

  // Rows: 2n entries of A·Π_σ (= A[r][σ(j)]) and Σλ = 1.
  std::vector<std::vector<double>> m(2 * n + 1, std::vector<double>(perms.size(), 0.0));
  std::vector<double> rhs(2 * n + 1, 0.0);
  for (std::size_t s = 0; s < perms.size(); ++s) {
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t j = 0; j < n; ++j) m[r * n + j][s] = a.row(r)[perms[s][j]];
    }
    m[2 * n][s] = 1.0;
  }
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t j = 0; j < n; ++j) rhs[r * n + j] = b.row(r)[j];
  }
  rhs[2 * n] = 1.0;

  const FeasibilityResult lp = solve_feasibility(m, rhs);
  DoublyStochasticResult out;
  if (lp.status == FeasibilityStatus::kInfeasible) {
    out.status = ChainStatus::kInfeasible;
    return out;
  }
  if (lp.status == FeasibilityStatus::kNotConverged) return out;
  out.witness.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < perms.size(); ++s) {
    for (std::size_t j = 0; j < n; ++j) out.witness[perms[s][j]][j] += lp.x[s];
  }
  out.status = ChainStatus::kFeasible;
  return out;
}

// LP over the n² entries of P directly.
inline DoublyStochasticResult entrywise_feasibility(const ParamMatrix& a, const ParamMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t vars = n * n;  // P[k][j] at k*n + j
  std::vector<std::vector<double>> m;
  std::vector<double> rhs;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> row(vars, 0.0);
      for (std::size_t k = 0; k < n; ++k) row[k * n + j] = a.row(r)[k];
      m.push_back(std::move(row));
      rhs.push_back(b.row(r)[j]);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> row_sum(vars, 0.0);
    std::vector<double> col_sum(vars, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      row_sum[k * n + j] = 1.0;
      col_sum[j * n + k] = 1.0;
    }
    m.push_back(std::move(row_sum));
    rhs.push_back(1.0);
    m.push_back(std::move(col_sum));
    rhs.push_back(1.0);
  }
  const FeasibilityResult lp = solve_feasibility(m, rhs);
  DoublyStochasticResult out;
  if (lp.status == FeasibilityStatus::kInfeasible) {
    out.status = ChainStatus::kInfeasible;
    return out;
  }
  if (lp.status == FeasibilityStatus::kNotConverged) return out;
  out.witness.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) out.witness[k][j] = lp.x[k * n + j];
  }
  out.status = ChainStatus::kFeasible;
  return out;
}

}  // namespace detail

/// Decides whether B = A·P for some doubly stochastic P. For n <= 5 the LP
/// runs over Birkhoff-vertex weights, otherwise over the entries of P. A
/// claimed witness that fails re-verification is reported as not converged.
inline DoublyStochasticResult chain_majorizes_doubly_stochastic(const ParamMatrix& a,
                                                                const ParamMatrix& b) {
  detail::require_same_columns(a, b);
  DoublyStochasticResult r = a.size() <= kBirkhoffVertexLimit
                                 ? detail::birkhoff_vertex_feasibility(a, b)
                                 : detail::entrywise_feasibility(a, b);
  if (r.feasible() && !detail::verify_doubly_stochastic_witness(a, b, r.witness)) {
    r.status = ChainStatus::kNotConverged;
  }
  return r;
}

// ---------------------------------------------------------------------------

struct MnReport {
  bool holds = true;
  bool positive = true;
  // First similarly-ordered violation (0-based columns) when !holds.
  std::size_t i = 0;
  std::size_t j = 0;
};

/// Membership in M_n: strictly positive rows with (ψ_i-ψ_j)(α_i-α_j) >= 0.
inline MnReport in_Mn_detail(const ParamMatrix& a) {
  if (a.row_psi.size() != a.row_alpha.size()) {
    throw ShapeError("parameter matrix rows have different lengths");
  }
  MnReport r;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a.row_psi[k] > 0.0) || !(a.row_alpha[k] > 0.0)) {
      r.holds = false;
      r.positive = false;
      r.i = r.j = k;
      return r;
    }
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if ((a.row_psi[i] - a.row_psi[j]) * (a.row_alpha[i] - a.row_alpha[j]) < 0.0) {
        r.holds = false;
        r.i = i;
        r.j = j;
        return r;
      }
    }
  }
  return r;
}

inline bool in_Mn(const ParamMatrix& a) { return in_Mn_detail(a).holds; }

}  // namespace claimorder

#endif  // CLAIMORDER_MAJORIZATION_HPP_
