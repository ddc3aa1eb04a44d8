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

// Independent reference computations used by the tests: adaptive
// quadrature, brute-force prefix sums, NNLS over Birkhoff vertices and a
// few closed forms. None of these call into the library code under test.

#ifndef CLAIMORDER_TESTS_ORACLES_HPP_
#define CLAIMORDER_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

// Adaptive Simpson on [a, b] with Richardson correction.
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

// Gamma density with shape k and rate r, written out directly.
inline double gamma_rate_density(double k, double r, double x) {
  if (x <= 0.0) return 0.0;
  return std::exp(k * std::log(r) + (k - 1.0) * std::log(x) - r * x - std::lgamma(k));
}

// Ascending prefix sums in long double.
inline std::vector<long double> prefix_sums(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<long double> out;
  long double acc = 0.0L;
  for (double d : v) {
    acc += d;
    out.push_back(acc);
  }
  return out;
}

// a weakly supermajorizes b: sum of the l smallest of a <= that of b, all l.
inline bool weak_super(const std::vector<double>& a, const std::vector<double>& b,
                       long double tol = 1e-12L) {
  const auto pa = prefix_sums(a);
  const auto pb = prefix_sums(b);
  for (std::size_t l = 0; l < pa.size(); ++l) {
    if (pa[l] > pb[l] + tol) return false;
  }
  return true;
}

// a majorizes b: equal totals and a weakly supermajorizes b.
inline bool majorizes(const std::vector<double>& a, const std::vector<double>& b,
                      long double tol = 1e-12L) {
  const auto pa = prefix_sums(a);
  const auto pb = prefix_sums(b);
  if (std::fabs(pa.back() - pb.back()) > tol) return false;
  return weak_super(a, b, tol);
}

// Householder least squares min |M x - y| for a tall or square M (rows x k).
inline std::vector<double> least_squares(std::vector<std::vector<double>> m, std::vector<double> y) {
  const std::size_t rows = m.size();
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t j = 0; j < cols && j < rows; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < rows; ++i) norm += m[i][j] * m[i][j];
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = m[j][j] > 0 ? -norm : norm;
    std::vector<double> v(rows, 0.0);
    for (std::size_t i = j; i < rows; ++i) v[i] = m[i][j];
    v[j] -= alpha;
    double vv = 0.0;
    for (std::size_t i = j; i < rows; ++i) vv += v[i] * v[i];
    if (vv == 0.0) continue;
    for (std::size_t c = j; c < cols; ++c) {
      double s = 0.0;
      for (std::size_t i = j; i < rows; ++i) s += v[i] * m[i][c];
      for (std::size_t i = j; i < rows; ++i) m[i][c] -= 2.0 * s / vv * v[i];
    }
    double s = 0.0;
    for (std::size_t i = j; i < rows; ++i) s += v[i] * y[i];
    for (std::size_t i = j; i < rows; ++i) y[i] -= 2.0 * s / vv * v[i];
  }
  std::vector<double> x(cols, 0.0);
  for (std::size_t jj = std::min(cols, rows); jj-- > 0;) {
    double s = y[jj];
    for (std::size_t c = jj + 1; c < cols; ++c) s -= m[jj][c] * x[c];
    x[jj] = std::abs(m[jj][jj]) > 1e-14 ? s / m[jj][jj] : 0.0;
  }
  return x;
}

// Lawson-Hanson non-negative least squares; returns the residual norm.
inline double nnls_residual(const std::vector<std::vector<double>>& m, const std::vector<double>& y) {
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::vector<double> x(cols, 0.0);
  std::vector<bool> passive(cols, false);
  auto residual = [&](const std::vector<double>& z) {
    std::vector<double> r(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols; ++j) s += m[i][j] * z[j];
      r[i] = y[i] - s;
    }
    return r;
  };
  auto solve_passive = [&]() {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < cols; ++j) {
      if (passive[j]) idx.push_back(j);
    }
    std::vector<std::vector<double>> sub(rows, std::vector<double>(idx.size()));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t k = 0; k < idx.size(); ++k) sub[i][k] = m[i][idx[k]];
    }
    const auto zs = least_squares(sub, y);
    std::vector<double> z(cols, 0.0);
    for (std::size_t k = 0; k < idx.size(); ++k) z[idx[k]] = zs[k];
    return z;
  };
  for (int outer = 0; outer < 500; ++outer) {
    const auto r = residual(x);
    std::size_t best = cols;
    double best_w = 1e-12;
    for (std::size_t j = 0; j < cols; ++j) {
      if (passive[j]) continue;
      double w = 0.0;
      for (std::size_t i = 0; i < rows; ++i) w += m[i][j] * r[i];
      if (w > best_w) {
        best_w = w;
        best = j;
      }
    }
    if (best == cols) break;
    passive[best] = true;
    for (int inner = 0; inner < 500; ++inner) {
      auto z = solve_passive();
      bool all_pos = true;
      for (std::size_t j = 0; j < cols; ++j) {
        if (passive[j] && z[j] <= 0.0) all_pos = false;
      }
      if (all_pos) {
        x = z;
        break;
      }
      double step = 1.0;
      for (std::size_t j = 0; j < cols; ++j) {
        if (passive[j] && z[j] <= 0.0) step = std::min(step, x[j] / (x[j] - z[j]));
      }
      for (std::size_t j = 0; j < cols; ++j) {
        x[j] += step * (z[j] - x[j]);
        if (passive[j] && x[j] <= 1e-15) {
          passive[j] = false;
          x[j] = 0.0;
        }
      }
    }
  }
  const auto r = residual(x);
  double n2 = 0.0;
  for (double v : r) n2 += v * v;
  return std::sqrt(n2);
}

// B = A P with P doubly stochastic, decided over all n! permutation
// matrices: B is a convex combination of column permutations of A.
inline bool birkhoff_feasible(const std::vector<std::vector<double>>& a,
                              const std::vector<std::vector<double>>& b, double tol = 1e-7) {
  const std::size_t n = a[0].size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<double>> vertex_columns;
  do {
    std::vector<double> col;
    for (const auto& row : a) {
      for (std::size_t j = 0; j < n; ++j) col.push_back(row[perm[j]]);
    }
    col.push_back(1.0);  // weights sum to one
    vertex_columns.push_back(col);
  } while (std::next_permutation(perm.begin(), perm.end()));
  const std::size_t rows = vertex_columns[0].size();
  std::vector<std::vector<double>> m(rows, std::vector<double>(vertex_columns.size()));
  for (std::size_t k = 0; k < vertex_columns.size(); ++k) {
    for (std::size_t i = 0; i < rows; ++i) m[i][k] = vertex_columns[k][i];
  }
  std::vector<double> y;
  for (const auto& row : b) y.insert(y.end(), row.begin(), row.end());
  y.push_back(1.0);
  double scale = 1.0;
  for (double v : y) scale = std::max(scale, std::abs(v));
  return nnls_residual(m, y) <= tol * scale;
}

// Binomial three-sigma half width for an estimated probability.
inline double three_sigma(double p, std::size_t n) {
  return 3.0 * std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(n));
}

}  // namespace oracle

#endif  // CLAIMORDER_TESTS_ORACLES_HPP_
