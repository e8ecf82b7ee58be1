// Copyright 2026 The lipfree authors.
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

#include "lipfree/lp.hpp"

#include <cassert>

#include "lipfree/errors.hpp"

namespace lipfree {

namespace {

// Dense tableau: rows 0..m-1 hold [A | b] with basic columns reduced to the
// identity, row m holds the reduced cost row [c~ | -objective].
struct Tableau {
  std::size_t m, n;                 // constraint rows, structural+artificial columns
  Mat t;                            // (m+1) x (n+1)
  std::vector<std::size_t> basis;   // basis[i] = column basic in row i

  void pivot(std::size_t row, std::size_t col) {
    Rat p = t[row][col];
    for (Rat& x : t[row]) x /= p;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == row || t[i][col] == 0) continue;
      Rat f = t[i][col];
      for (std::size_t j = 0; j <= n; ++j) t[i][j] -= f * t[row][j];
    }
    basis[row] = col;
  }

  // Bland's rule: entering = lowest-index column with negative reduced cost,
  // leaving = min ratio with ties broken by lowest basic variable index.
  // Returns false when optimal, throws on unboundedness.
  bool step() {
    std::size_t enter = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (t[m][j] < 0) { enter = j; break; }
    }
    if (enter == n) return false;
    std::size_t leave = m;
    Rat best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > 0) {
        Rat ratio = t[i][n] / t[i][enter];
        if (leave == m || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave == m) throw LipfreeError(Err::Unbounded, "LP objective unbounded below");
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpResult solve_lp(const Mat& a, const Vec& b, const Vec& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  for (const Vec& row : a) {
    if (row.size() != n) throw LipfreeError(Err::DimensionMismatch, "LP row width mismatch");
  }
  if (b.size() != m) throw LipfreeError(Err::DimensionMismatch, "LP rhs length mismatch");

  // Phase 1 with one artificial variable per row; flip rows so b >= 0.
  Tableau tab;
  tab.m = m;
  tab.n = n + m;
  tab.t.assign(m + 1, Vec(tab.n + 1, Rat(0)));
  tab.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = flip ? Rat(-a[i][j]) : a[i][j];
    tab.t[i][tab.n] = flip ? Rat(-b[i]) : b[i];
    tab.t[i][n + i] = 1;
    tab.basis[i] = n + i;
  }
  // Phase-1 cost row: minimize sum of artificials; reduce against the basis.
  for (std::size_t j = 0; j < tab.n; ++j) tab.t[m][j] = (j >= n) ? Rat(1) : Rat(0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= tab.n; ++j) tab.t[m][j] -= tab.t[i][j];
  }
  while (tab.step()) {}
  if (tab.t[m][tab.n] != 0) {  // -objective != 0 means positive infeasibility
    return {LpStatus::Infeasible, Rat(0), {}};
  }
  // Drive any artificial still basic (at level zero) out of the basis, or drop
  // its row if it is entirely dependent.
  std::vector<bool> dropped(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (tab.t[i][j] != 0) { col = j; break; }
    }
    if (col == n) {
      dropped[i] = true;
    } else {
      tab.pivot(i, col);
    }
  }

  // Phase 2 on the structural columns only.
  Tableau t2;
  t2.m = 0;
  t2.n = n;
  t2.t.clear();
  t2.basis.clear();
  for (std::size_t i = 0; i < m; ++i) {
    if (dropped[i]) continue;
    Vec row(n + 1);
    for (std::size_t j = 0; j < n; ++j) row[j] = tab.t[i][j];
    row[n] = tab.t[i][tab.n];
    t2.t.push_back(std::move(row));
    t2.basis.push_back(tab.basis[i]);
    ++t2.m;
  }
  Vec cost(n + 1, Rat(0));
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  t2.t.push_back(std::move(cost));
  for (std::size_t i = 0; i < t2.m; ++i) {
    Rat f = t2.t[t2.m][t2.basis[i]];
    if (f != 0) {
      for (std::size_t j = 0; j <= n; ++j) t2.t[t2.m][j] -= f * t2.t[i][j];
    }
  }
  while (t2.step()) {}

  Vec x(n, Rat(0));
  for (std::size_t i = 0; i < t2.m; ++i) x[t2.basis[i]] = t2.t[i][n];
  Rat obj = 0;
  for (std::size_t j = 0; j < n; ++j) obj += c[j] * x[j];
  return {LpStatus::Optimal, obj, x};
}

bool in_convex_hull(const std::vector<Vec>& points, const Vec& target) {
  if (points.empty()) return false;
  const std::size_t dim = target.size();
  const std::size_t k = points.size();
  Mat a(dim + 1, Vec(k));
  Vec b(dim + 1);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = points[c][r];
    b[r] = target[r];
  }
  for (std::size_t c = 0; c < k; ++c) a[dim][c] = 1;
  b[dim] = 1;
  Vec cost(k, Rat(0));
  return solve_lp(a, b, cost).status == LpStatus::Optimal;
}

}  // namespace lipfree
