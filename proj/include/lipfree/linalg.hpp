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

#ifndef LIPFREE_LINALG_HPP
#define LIPFREE_LINALG_HPP

#include <optional>
#include <vector>

#include "lipfree/rational.hpp"

namespace lipfree {

using Vec = std::vector<Rat>;
using Mat = std::vector<Vec>;

Rat dot(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rat& s);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec negate(const Vec& a);
bool is_zero(const Vec& a);

// Exact Gaussian elimination. All of these leave their arguments untouched.
int rank(Mat m);
Rat determinant(Mat m);

// Rank of {p - points[0] : p in points}; the dimension of the affine hull.
int affine_rank(const std::vector<Vec>& points);

// Unique solution of A x = b for square nonsingular A, if it exists.
std::optional<Vec> solve_square(Mat a, Vec b);

// Coefficients c with sum_k c[k] * basis[k] = target, when target lies in the
// span of a linearly independent family. nullopt if the system is inconsistent.
std::optional<Vec> express_in_span(const std::vector<Vec>& basis, const Vec& target);

// Scales a rational vector to a primitive integer vector (cleared denominators,
// gcd 1). Direction is preserved; the zero vector stays zero.
void make_primitive(Vec& v);

// Lexicographic comparison, used for all deterministic orderings.
bool lex_less(const Vec& a, const Vec& b);

}  // namespace lipfree

#endif  // LIPFREE_LINALG_HPP
