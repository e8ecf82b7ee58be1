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

#include "lipfree/linalg.hpp"

#include <cassert>

#include "lipfree/errors.hpp"

namespace lipfree {

Rat dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec scale(const Vec& a, const Rat& s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

Vec add(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec negate(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

bool is_zero(const Vec& a) {
  for (const Rat& x : a) {
    if (x != 0) return false;
  }
  return true;
}

int rank(Mat m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i != r && m[i][c] != 0) {
        Rat f = m[i][c] / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
      }
    }
    ++r;
  }
  return static_cast<int>(r);
}

Rat determinant(Mat m) {
  const std::size_t n = m.size();
  for (const Vec& row : m) {
    if (row.size() != n) throw LipfreeError(Err::DimensionMismatch, "determinant of non-square matrix");
  }
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) return Rat(0);
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] != 0) {
        Rat f = m[i][c] / m[c][c];
        for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
      }
    }
  }
  return det;
}

int affine_rank(const std::vector<Vec>& points) {
  if (points.size() <= 1) return 0;
  Mat diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
  return rank(std::move(diffs));
}

std::optional<Vec> solve_square(Mat a, Vec b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[c]);
    std::swap(b[pivot], b[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != c && a[i][c] != 0) {
        Rat f = a[i][c] / a[c][c];
        for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        b[i] -= f * b[c];
      }
    }
  }
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

std::optional<Vec> express_in_span(const std::vector<Vec>& basis, const Vec& target) {
  if (basis.empty()) return is_zero(target) ? std::optional<Vec>(Vec{}) : std::nullopt;
  const std::size_t dim = target.size();
  const std::size_t k = basis.size();
  // Augmented system [B^T | target], columns are basis vectors.
  Mat aug(dim, Vec(k + 1));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < k; ++c) aug[r][c] = basis[c][r];
    aug[r][k] = target[r];
  }
  std::vector<int> pivot_col_of_row(dim, -1);
  std::size_t row = 0;
  for (std::size_t c = 0; c < k && row < dim; ++c) {
    std::size_t pivot = row;
    while (pivot < dim && aug[pivot][c] == 0) ++pivot;
    if (pivot == dim) continue;
    std::swap(aug[pivot], aug[row]);
    for (std::size_t i = 0; i < dim; ++i) {
      if (i != row && aug[i][c] != 0) {
        Rat f = aug[i][c] / aug[row][c];
        for (std::size_t j = c; j <= k; ++j) aug[i][j] -= f * aug[row][j];
      }
    }
    pivot_col_of_row[row] = static_cast<int>(c);
    ++row;
  }
  // Inconsistent if a zero row has nonzero rhs.
  for (std::size_t i = row; i < dim; ++i) {
    if (aug[i][k] != 0) return std::nullopt;
  }
  Vec coeffs(k, Rat(0));
  for (std::size_t r = 0; r < row; ++r) {
    int c = pivot_col_of_row[r];
    coeffs[c] = aug[r][k] / aug[r][c];
  }
  return coeffs;
}

void make_primitive(Vec& v) {
  Int lcm_den = 1;
  for (const Rat& x : v) {
    Int l;
    mpz_lcm(l.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den().get_mpz_t());
    lcm_den = l;
  }
  Int gcd_num = 0;
  std::vector<Int> ints(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = v[i].get_num() * (lcm_den / v[i].get_den());
    Int g;
    mpz_gcd(g.get_mpz_t(), gcd_num.get_mpz_t(), ints[i].get_mpz_t());
    gcd_num = g;
  }
  if (gcd_num == 0) return;  // zero vector
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rat(ints[i] / gcd_num);
}

bool lex_less(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

}  // namespace lipfree
