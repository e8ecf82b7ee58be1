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

#ifndef LIPFREE_LP_HPP
#define LIPFREE_LP_HPP

#include <vector>

#include "lipfree/linalg.hpp"

namespace lipfree {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status;
  Rat objective;   // valid when Optimal
  Vec solution;    // valid when Optimal
};

// Exact two-phase simplex for min c.x subject to A x = b, x >= 0.
// Bland's rule, so it terminates on degenerate instances too.
LpResult solve_lp(const Mat& a, const Vec& b, const Vec& c);

// True iff `target` is a convex combination of `points`.
bool in_convex_hull(const std::vector<Vec>& points, const Vec& target);

}  // namespace lipfree

#endif  // LIPFREE_LP_HPP
