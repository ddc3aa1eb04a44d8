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

// Dense phase-1 simplex for feasibility of {M x = b, x >= 0}.

#ifndef CLAIMORDER_LINEAR_FEASIBILITY_HPP_
#define CLAIMORDER_LINEAR_FEASIBILITY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "claimorder/error.hpp"

namespace claimorder {

enum class FeasibilityStatus { kFeasible, kInfeasible, kNotConverged };

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::kNotConverged;
  std::vector<double> x;     // a feasible point when status is kFeasible
  double residual = 0.0;     // phase-1 objective at termination
  std::size_t iterations = 0;
};

namespace detail {

// Phase-1 tableau: columns [structural | artificial | rhs], last row the
// cost (sum of artificials) in terms of nonbasic variables.
class Phase1Tableau {
 public:
  Phase1Tableau(const std::vector<std::vector<double>>& m, const std::vector<double>& b)
      : rows_(m.size()), cols_(m.front().size()), width_(cols_ + rows_ + 1) {
    // Rows are equilibrated to unit max-norm and signed so b >= 0.
    origin_.assign(rows_, std::vector<double>(width_, 0.0));
    for (std::size_t i = 0; i < rows_; ++i) {
      double norm = std::abs(b[i]);
      for (double v : m[i]) norm = std::max(norm, std::abs(v));
      const double f = (norm > 0.0 ? 1.0 / norm : 1.0) * (b[i] < 0.0 ? -1.0 : 1.0);
      for (std::size_t j = 0; j < cols_; ++j) origin_[i][j] = f * m[i][j];
      origin_[i][cols_ + i] = 1.0;
      origin_[i][width_ - 1] = f * b[i];
    }
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) basis_[i] = cols_ + i;
    refactor();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t width() const { return width_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  double at(std::size_t i, std::size_t j) const { return t_[i][j]; }
  double cost(std::size_t j) const { return t_[rows_][j]; }
  double objective() const { return -t_[rows_][width_ - 1]; }

  void pivot(std::size_t leave, std::size_t enter) {
    const double piv = t_[leave][enter];
    for (double& v : t_[leave]) v /= piv;
    t_[leave][enter] = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == leave) continue;
      const double factor = t_[i][enter];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) t_[i][j] -= factor * t_[leave][j];
      t_[i][enter] = 0.0;
    }
    basis_[leave] = enter;
  }

  // Rebuilds the tableau for the current basis from the original data by
  // Gauss-Jordan elimination with partial pivoting, discarding accumulated
  // rounding. Basic columns that turn out singular are replaced by their
  // row's artificial.
  void refactor() {
    t_ = origin_;
    t_.emplace_back(width_, 0.0);
    std::vector<std::size_t> wanted = basis_;
    std::vector<bool> row_done(rows_, false);
    std::vector<std::size_t> assigned(rows_, width_);
    for (std::size_t col : wanted) {
      std::size_t best = rows_;
      double best_abs = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!row_done[i] && std::abs(t_[i][col]) > best_abs) {
          best = i;
          best_abs = std::abs(t_[i][col]);
        }
      }
      if (best == rows_ || best_abs < 1e-11) continue;
      eliminate(best, col);
      row_done[best] = true;
      assigned[best] = col;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!row_done[i]) {
        // The artificial for row i is still a unit column only in row i
        // when no elimination touched it; eliminate to be safe.
        const std::size_t art = cols_ + i;
        std::size_t best = rows_;
        double best_abs = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
          if (!row_done[r] && std::abs(t_[r][art]) > best_abs) {
            best = r;
            best_abs = std::abs(t_[r][art]);
          }
        }
        if (best == rows_) continue;
        eliminate(best, art);
        row_done[best] = true;
        assigned[best] = art;
      }
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (assigned[i] == width_) assigned[i] = cols_ + i;
    }
    basis_ = assigned;
    // Cost row: sum of artificials, reduced against the basis.
    auto& c = t_[rows_];
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t j = cols_; j + 1 < width_; ++j) c[j] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double factor = c[basis_[i]];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) c[j] -= factor * t_[i][j];
      c[basis_[i]] = 0.0;
    }
  }

 private:
  void eliminate(std::size_t row, std::size_t col) {
    const double piv = t_[row][col];
    for (double& v : t_[row]) v /= piv;
    t_[row][col] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row) continue;
      const double factor = t_[i][col];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) t_[i][j] -= factor * t_[row][j];
      t_[i][col] = 0.0;
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  std::vector<std::vector<double>> origin_;
  std::vector<std::vector<double>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Decides whether {M x = b, x >= 0} has a solution. M is row-major with
/// `rows` rows. Rows are equilibrated; pivots follow Dantzig's rule with a
/// Harris ratio test, falling back to Bland's rule on degenerate stalls, and
/// the tableau is refactored from the original data periodically and before
/// any verdict. A feasible verdict requires |M x - b| <= tol * max(1, |b|)
/// entrywise for the returned x.
inline FeasibilityResult solve_feasibility(const std::vector<std::vector<double>>& m,
                                           const std::vector<double>& b,
                                           double tol = 1e-9,
                                           std::size_t max_iterations = 200000) {
  const std::size_t rows = m.size();
  if (rows != b.size()) throw ShapeError("feasibility: row count of M and b differ");
  if (rows == 0) return {FeasibilityStatus::kFeasible, {}, 0.0, 0};
  const std::size_t cols = m.front().size();
  for (const auto& r : m) {
    if (r.size() != cols) throw ShapeError("feasibility: ragged constraint matrix");
  }
  double scale = 1.0;
  for (double v : b) scale = std::max(scale, std::abs(v));

  detail::Phase1Tableau t(m, b);
  const std::size_t width = t.width();
  const double cost_eps = 1e-11;
  const double pivot_eps = 1e-9;
  const double harris = 1e-12;
  const std::size_t refactor_every = 64;
  const std::size_t stall_limit = 32;

  FeasibilityResult result;
  std::size_t degenerate_run = 0;
  std::size_t since_refactor = 0;
  bool fresh = true;  // tableau was just refactored
  for (std::size_t it = 0;; ++it) {
    result.iterations = it;
    if (it >= max_iterations) {
      result.status = FeasibilityStatus::kNotConverged;
      result.residual = t.objective();
      return result;
    }
    if (since_refactor >= refactor_every) {
      t.refactor();
      since_refactor = 0;
      fresh = true;
    }
    const bool bland = degenerate_run >= stall_limit;
    std::size_t enter = width;
    double most = -cost_eps;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (t.cost(j) < most) {
        enter = j;
        if (bland) break;
        most = t.cost(j);
      }
    }
    if (enter == width) {
      if (fresh) break;
      t.refactor();
      since_refactor = 0;
      fresh = true;
      continue;
    }
    // Harris: bound the step with slightly relaxed bounds, then take the
    // largest pivot among rows whose exact ratio fits under that bound.
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a > pivot_eps) bound = std::min(bound, (std::max(0.0, t.at(i, width - 1)) + harris) / a);
    }
    std::size_t leave = t.rows();
    double best_pivot = 0.0;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, enter);
      if (a <= pivot_eps) continue;
      const double ratio = std::max(0.0, t.at(i, width - 1)) / a;
      if (ratio > bound) continue;
      const bool better = bland ? (leave == t.rows() || t.basis()[i] < t.basis()[leave])
                                : a > best_pivot;
      if (better) {
        leave = i;
        best_pivot = a;
      }
    }
    if (leave == t.rows()) {
      // Phase-1 cost is bounded below, so only rounding can get here.
      if (fresh) {
        result.status = FeasibilityStatus::kNotConverged;
        result.residual = t.objective();
        return result;
      }
      t.refactor();
      since_refactor = 0;
      fresh = true;
      continue;
    }
    const double step = std::max(0.0, t.at(leave, width - 1)) / t.at(leave, enter);
    degenerate_run = step <= harris ? degenerate_run + 1 : 0;
    t.pivot(leave, enter);
    ++since_refactor;
    fresh = false;
  }

  result.residual = std::max(0.0, t.objective());
  result.x.assign(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    if (t.basis()[i] < cols) result.x[t.basis()[i]] = std::max(0.0, t.at(i, width - 1));
  }
  // Judge on the original data rather than the tableau.
  double worst = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    double acc = -b[i];
    for (std::size_t j = 0; j < cols; ++j) acc += m[i][j] * result.x[j];
    worst = std::max(worst, std::abs(acc));
  }
  if (worst <= tol * scale) {
    result.status = FeasibilityStatus::kFeasible;
    return result;
  }
  result.x.clear();
  result.status = result.residual > tol ? FeasibilityStatus::kInfeasible
                                        : FeasibilityStatus::kNotConverged;
  return result;
}

}  // namespace claimorder

#endif  // CLAIMORDER_LINEAR_FEASIBILITY_HPP_
