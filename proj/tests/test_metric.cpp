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

#include <random>

#include "lipfree/errors.hpp"
#include "lipfree/metric.hpp"
#include "support/spaces.hpp"

using namespace lipfree;
using namespace lipfree::testsupport;

TEST_CASE("validate accepts K3 and degenerate triangles") {
  CHECK_NOTHROW(complete_space(3));
  // d01 = d12 = 1, d02 = 2: equality is a valid metric
  std::vector<std::vector<Rat>> d = {{Rat(0), Rat(1), Rat(2), Rat(1)},
                                     {Rat(1), Rat(0), Rat(1), Rat(1)},
                                     {Rat(2), Rat(1), Rat(0), Rat(1)},
                                     {Rat(1), Rat(1), Rat(1), Rat(0)}};
  CHECK_NOTHROW(validate_metric({"a", "b", "c", "e"}, d));
}

TEST_CASE("validate reports the triangle witness") {
  std::vector<std::vector<Rat>> d = {{Rat(0), Rat(1), Rat(1)},
                                     {Rat(1), Rat(0), Rat(3)},
                                     {Rat(1), Rat(3), Rat(0)}};
  try {
    validate_metric({"0", "1", "2"}, d);
    FAIL("expected NotAMetricError");
  } catch (const NotAMetricError& e) {
    REQUIRE(e.violations().size() == 1);
    const MetricViolation& v = e.violations()[0];
    CHECK(v.kind == MetricViolation::Kind::Triangle);
    CHECK(v.i == 1);
    CHECK(v.j == 2);
    CHECK(v.k == 0);
  }
}

TEST_CASE("validate collects asymmetry, diagonal, positivity violations") {
  std::vector<std::vector<Rat>> d = {{Rat(1), Rat(2), Rat(0)},
                                     {Rat(1), Rat(0), Rat(1)},
                                     {Rat(0), Rat(1), Rat(0)}};
  try {
    validate_metric({"0", "1", "2"}, d);
    FAIL("expected NotAMetricError");
  } catch (const NotAMetricError& e) {
    bool saw_asym = false, saw_diag = false, saw_nonpos = false;
    for (const auto& v : e.violations()) {
      saw_asym |= v.kind == MetricViolation::Kind::Asymmetric;
      saw_diag |= v.kind == MetricViolation::Kind::NonzeroDiagonal;
      saw_nonpos |= v.kind == MetricViolation::Kind::NonPositive;
    }
    CHECK(saw_asym);
    CHECK(saw_diag);
    CHECK(saw_nonpos);
  }
}

TEST_CASE("canonical graph of K3, a path, and a four-cycle") {
  CHECK(canonical_graph(complete_space(3)).edges.size() == 3);

  MetricSpace path = path_space({Rat(1), Rat(1)});
  WeightedGraph g = canonical_graph(path);
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0].u == 0);
  CHECK(g.edges[0].v == 1);
  CHECK(g.edges[1].u == 1);
  CHECK(g.edges[1].v == 2);

  // pairwise distance 1 except d02 = d13 = 2: hand enumeration of the erasure
  // rule leaves exactly the 4-cycle 0-1-2-3-0
  std::vector<std::vector<Rat>> d = {{Rat(0), Rat(1), Rat(2), Rat(1)},
                                     {Rat(1), Rat(0), Rat(1), Rat(2)},
                                     {Rat(2), Rat(1), Rat(0), Rat(1)},
                                     {Rat(1), Rat(2), Rat(1), Rat(0)}};
  MetricSpace four = validate_metric({"0", "1", "2", "3"}, d);
  WeightedGraph g4 = canonical_graph(four);
  REQUIRE(g4.edges.size() == 4);
  CHECK(g4.edge_index(0, 1) >= 0);
  CHECK(g4.edge_index(1, 2) >= 0);
  CHECK(g4.edge_index(2, 3) >= 0);
  CHECK(g4.edge_index(0, 3) >= 0);
  CHECK(g4.edge_index(0, 2) < 0);
}

TEST_CASE("from_weighted_graph computes shortest paths") {
  MetricSpace path = path_space({Rat(1), Rat(1)});
  CHECK(path.d(0, 2) == Rat(2));

  MetricSpace c4 = cycle_space(4);
  CHECK(c4.d(0, 2) == Rat(2));
  CHECK(c4.d(1, 3) == Rat(2));

  WeightedGraph disconnected;
  disconnected.vertex_count = 3;
  disconnected.edges = {{0, 1, Rat(1)}};
  CHECK_THROWS_AS(from_weighted_graph(disconnected), LipfreeError);
}

TEST_CASE("a too-heavy triangle edge is erased by the round trip") {
  WeightedGraph g;
  g.vertex_count = 3;
  g.edges = {{0, 1, Rat(1)}, {0, 2, Rat(3)}, {1, 2, Rat(1)}};
  CHECK_FALSE(is_canonical(g));
  MetricSpace m = from_weighted_graph(g);
  CHECK(m.d(0, 2) == Rat(2));  // through the middle
  WeightedGraph back = canonical_graph(m);
  CHECK(back.edges.size() == 2);
  CHECK(back.edge_index(0, 2) < 0);
}

TEST_CASE("canonical graphs satisfy the strict-path condition and round-trip") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    MetricSpace m = random_metric_space(3 + static_cast<int>(rng() % 4), rng);
    WeightedGraph g = canonical_graph(m);
    CHECK(is_canonical(g));
    // the metric of the canonical graph is the original metric
    MetricSpace back = from_weighted_graph(g);
    CHECK(back.dist == m.dist);
  }
}

TEST_CASE("metric segments and midpoints") {
  MetricSpace k3 = complete_space(3);
  CHECK(metric_segment(k3, 0, 1) == std::set<int>{0, 1});
  CHECK(mid_set(k3, 0, 1).empty());

  MetricSpace path = path_space({Rat(1), Rat(1)});
  CHECK(metric_segment(path, 0, 2) == std::set<int>{0, 1, 2});
  CHECK(mid_set(path, 0, 2) == std::set<int>{1});

  MetricSpace web = spiderweb_space(3);  // hubs 0, 1
  CHECK(metric_segment(web, 0, 1) == std::set<int>{0, 1, 2, 3, 4});
  CHECK(mid_set(web, 0, 1) == std::set<int>{2, 3, 4});
}

TEST_CASE("segments are trivial exactly when the canonical graph is complete") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    MetricSpace m = random_metric_space(4 + static_cast<int>(rng() % 2), rng);
    bool all_trivial = true;
    for (int i = 0; i < m.point_count(); ++i) {
      for (int j = 0; j < m.point_count(); ++j) {
        if (i != j && metric_segment(m, i, j).size() != 2) all_trivial = false;
      }
    }
    bool complete = canonical_graph(m).edges.size() ==
                    static_cast<std::size_t>(m.point_count() * (m.point_count() - 1) / 2);
    CHECK(all_trivial == complete);
  }
}

TEST_CASE("dilate and rebase basics") {
  MetricSpace k3 = complete_space(3);
  MetricSpace big = dilate(k3, Rat(5));
  CHECK(big.d(0, 1) == Rat(5));
  CHECK(dilate(k3, Rat(1)).dist == k3.dist);
  CHECK_THROWS_AS(dilate(k3, Rat(0)), LipfreeError);

  MetricSpace reb = rebase(k3, 2);
  CHECK(reb.root == 2);
  CHECK(reb.dist == k3.dist);
  CHECK_THROWS_AS(rebase(k3, 5), LipfreeError);
}

TEST_CASE("dilate and rebase keep the canonical edge count") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    MetricSpace m = random_metric_space(5, rng);
    auto edges = canonical_graph(m).edges.size();
    CHECK(canonical_graph(dilate(m, Rat(3, 2))).edges.size() == edges);
    CHECK(canonical_graph(rebase(m, 2)).edges.size() == edges);
  }
}

TEST_CASE("diamond of two segments is a path") {
  MetricSpace seg1 = path_space({Rat(1)});
  MetricSpace seg2 = path_space({Rat(1)});
  MetricSpace glued = diamond(seg1, seg2);
  CHECK(glued.point_count() == 3);
  CHECK(glued.root == 0);
  // glued point is between the two free ends
  CHECK(glued.d(1, 2) == Rat(2));
  CHECK(canonical_graph(glued).edges.size() == 2);
}

TEST_CASE("diamond is associative up to relabeling") {
  std::mt19937_64 rng(31);
  MetricSpace a = random_metric_space(3, rng);
  MetricSpace b = random_metric_space(3, rng);
  MetricSpace c = random_metric_space(2, rng);
  MetricSpace left = diamond(diamond(a, b), c);
  MetricSpace right = diamond(a, diamond(b, c));
  REQUIRE(left.point_count() == right.point_count());
  // match points by label and compare distances
  for (int i = 0; i < left.point_count(); ++i) {
    for (int j = 0; j < left.point_count(); ++j) {
      int pi = -1, pj = -1;
      for (int k = 0; k < right.point_count(); ++k) {
        if (right.labels[k] == left.labels[i]) pi = k;
        if (right.labels[k] == left.labels[j]) pj = k;
      }
      REQUIRE(pi >= 0);
      REQUIRE(pj >= 0);
      CHECK(left.d(i, j) == right.d(pi, pj));
    }
  }
}

TEST_CASE("the glued point is a cut vertex of the canonical graph") {
  std::mt19937_64 rng(32);
  MetricSpace a = random_metric_space(3, rng);
  MetricSpace b = random_metric_space(4, rng);
  MetricSpace glued = diamond(a, b);
  WeightedGraph g = canonical_graph(glued);
  // removing the glued point (index 0) must disconnect the graph
  std::vector<std::vector<int>> adj(g.vertex_count);
  for (const GraphEdge& e : g.edges) {
    if (e.u != 0 && e.v != 0) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  }
  std::vector<bool> seen(g.vertex_count, false);
  std::vector<int> stack{1};
  seen[1] = true;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  bool all_reached = true;
  for (int v = 1; v < g.vertex_count; ++v) all_reached &= seen[v];
  CHECK_FALSE(all_reached);
}
