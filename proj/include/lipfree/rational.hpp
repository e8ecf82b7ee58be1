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

#ifndef LIPFREE_RATIONAL_HPP
#define LIPFREE_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace lipfree {

// Exact scalar used throughout the toolkit. mpq_class keeps values in lowest
// terms with a positive denominator, which is exactly the invariant we need.
using Rat = mpq_class;
using Int = mpz_class;

// Parses "p/q" or "p" (optionally signed). Decimal notation is rejected:
// exactness is part of the I/O contract.
Rat parse_rational(const std::string& text);

// Canonicalized construction. The two-argument mpq_class constructor does not
// reduce to lowest terms on its own; route fractions through here.
inline Rat make_rational(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// "p/q", or just "p" when the denominator is 1.
std::string rational_to_string(const Rat& value);

// Decimal rendering with 12 significant digits, for humans only.
std::string rational_to_decimal(const Rat& value);

double rational_to_double(const Rat& value);

Rat rat_abs(const Rat& value);
int rat_sign(const Rat& value);

Int factorial(int n);
Int binomial(int n, int k);

// 4^n / n!, the volume product of the n-dimensional cross-polytope (and cube).
Rat cross_polytope_volume_product(int n);

std::string format_vector(const std::vector<Rat>& v);

}  // namespace lipfree

#endif  // LIPFREE_RATIONAL_HPP
