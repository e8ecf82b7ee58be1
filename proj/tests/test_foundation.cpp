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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lipfree/errors.hpp"
#include "lipfree/linalg.hpp"
#include "lipfree/lp.hpp"
#include "lipfree/rational.hpp"

using namespace lipfree;

TEST_CASE("rational parsing accepts p and p/q, rejects decimals") {
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK(parse_rational("-6/4") == Rat(-3, 2));
  CHECK(parse_rational("12") == Rat(12));
  CHECK(parse_rational(" 7 / 2 ") == Rat(7, 2));
  CHECK_THROWS_AS(parse_rational("1.5"), LipfreeError);
  CHECK_THROWS_AS(parse_rational("1e3"), LipfreeError);
  CHECK_THROWS_AS(parse_rational("1/0"), LipfreeError);
  CHECK_THROWS_AS(parse_rational(""), LipfreeError);
}

TEST_CASE("rational formatting round-trips") {
  for (const char* s : {"0", "5", "-5", "3/7", "-22/7", "123456789123456789/2"}) {
    CHECK(rational_to_string(parse_rational(s)) == s);
  }
  CHECK(rational_to_string(make_rational(4, 2)) == "2");
}

TEST_CASE("decimal rendering uses 12 significant digits") {
  CHECK(rational_to_decimal(Rat(1, 3)) == "0.333333333333");
  CHECK(rational_to_decimal(Rat(9)) == "9");
}

TEST_CASE("binomials and cross-polytope products") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(10, 5) == 252);
  CHECK(factorial(5) == 120);
  CHECK(cross_polytope_volume_product(1) == Rat(4));
  CHECK(cross_polytope_volume_product(2) == Rat(8));
  CHECK(cross_polytope_volume_product(3) == Rat(32, 3));
  CHECK(cross_polytope_volume_product(5) == make_rational(1024, 120));
}

TEST_CASE("rank, determinant, affine rank") {
  Mat m = {{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
  CHECK(rank(m) == 1);
  CHECK(determinant(m) == 0);
  Mat id3 = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
  CHECK(determinant(id3) == 1);
  Mat shear = {{Rat(1), Rat(5), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(7), Rat(1)}};
  CHECK(determinant(shear) == 1);
  std::vector<Vec> pts = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1, 2), Rat(1, 2)}};
  CHECK(affine_rank(pts) == 1);  // collinear
}

TEST_CASE("solve and span expression") {
  Mat a = {{Rat(2), Rat(1)}, {Rat(1), Rat(3)}};
  auto x = solve_square(a, {Rat(5), Rat(10)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(1));
  CHECK((*x)[1] == Rat(3));

  std::vector<Vec> basis = {{Rat(1), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(1)}};
  auto c = express_in_span(basis, {Rat(2), Rat(3), Rat(5)});
  REQUIRE(c.has_value());
  CHECK((*c)[0] == Rat(2));
  CHECK((*c)[1] == Rat(3));
  CHECK_FALSE(express_in_span(basis, {Rat(1), Rat(0), Rat(0)}).has_value());
}

TEST_CASE("make_primitive clears denominators and common factors") {
  Vec v = {Rat(1, 2), Rat(-3, 4), Rat(0)};
  make_primitive(v);
  CHECK(v == Vec{Rat(2), Rat(-3), Rat(0)});
  Vec z = {Rat(0), Rat(0)};
  make_primitive(z);
  CHECK(z == Vec{Rat(0), Rat(0)});
}

TEST_CASE("simplex solves a textbook LP") {
  // min -x - y  s.t.  x + y + s1 = 4, x + 3y + s2 = 6, all >= 0
  Mat a = {{Rat(1), Rat(1), Rat(1), Rat(0)}, {Rat(1), Rat(3), Rat(0), Rat(1)}};
  Vec b = {Rat(4), Rat(6)};
  Vec c = {Rat(-1), Rat(-1), Rat(0), Rat(0)};
  LpResult res = solve_lp(a, b, c);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.objective == Rat(-4));
}

TEST_CASE("simplex detects infeasibility") {
  // x = 1 and x = 2 simultaneously
  Mat a = {{Rat(1)}, {Rat(1)}};
  Vec b = {Rat(1), Rat(2)};
  Vec c = {Rat(0)};
  CHECK(solve_lp(a, b, c).status == LpStatus::Infeasible);
}

TEST_CASE("simplex handles negative rhs and redundant rows") {
  // -x1 = -3 (flips), plus duplicated row
  Mat a = {{Rat(-1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(1)}};
  Vec b = {Rat(-3), Rat(-3), Rat(2)};
  Vec c = {Rat(1), Rat(1)};
  LpResult res = solve_lp(a, b, c);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.solution[0] == Rat(3));
  CHECK(res.solution[1] == Rat(2));
}

TEST_CASE("convex hull membership") {
  std::vector<Vec> square = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}};
  CHECK(in_convex_hull(square, {Rat(1, 2), Rat(1, 2)}));
  CHECK(in_convex_hull(square, {Rat(1), Rat(1)}));
  CHECK_FALSE(in_convex_hull(square, {Rat(2), Rat(0)}));
  CHECK_FALSE(in_convex_hull(square, {Rat(1, 2), Rat(-1, 100)}));
}
