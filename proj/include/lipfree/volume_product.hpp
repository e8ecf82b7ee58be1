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

#ifndef LIPFREE_VOLUME_PRODUCT_HPP
#define LIPFREE_VOLUME_PRODUCT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lipfree/free_space.hpp"
#include "lipfree/metric.hpp"

namespace lipfree {

struct VolumeProductReport {
  int n = 0;
  Rat vol_free;      // |free ball|
  Rat vol_lip;       // |Lipschitz ball|
  Rat product;       // P(M) = vol_free * vol_lip
  Rat mahler_floor;  // 4^n / n!
  Rat gap;           // product - mahler_floor; reported signed, never clamped
  bool strict_triangles = false;  // necessary at a maximizer
  bool simplicial = false;        // necessary at a maximizer
  bool all_bridges = false;       // simplex-vertex bridge condition (minimizers)
};

struct MaximizerConditions {
  bool strict_triangles = false;
  bool simplicial = false;
};

struct MinimizerVertexReport {
  int i = 0, j = 0;                 // molecule label of the ball vertex
  bool all_facets_simplices = false;
  bool edge_is_bridge = false;
};

struct MinimizerConditions {
  std::vector<MinimizerVertexReport> vertices;
  // Every vertex whose facets are all simplices sits on a bridge edge.
  bool bridge_condition = true;
  // If the whole ball is simplicial, the space must be a tree.
  bool simplicial_implies_tree = true;
};

VolumeProductReport volume_product(const MetricSpace& m);
VolumeProductReport volume_product(const FreeBallModel& model);

// (n+1)/n! * binom(2n, n): closed-form product of the unweighted complete
// graph on n+1 points.
Rat complete_graph_product(int n);

// Left: P(diamond(m1, m2)); right: n1! n2! / n! * P(m1) * P(m2).
std::pair<Rat, Rat> diamond_product_identity(const MetricSpace& m1, const MetricSpace& m2);

MaximizerConditions maximizer_conditions(const MetricSpace& m);
MinimizerConditions minimizer_conditions(const MetricSpace& m);

enum class SearchObjective { Maximize, Minimize };
enum class SearchMode { Exact, Float };

struct SearchConfig {
  int point_count = 3;
  SearchObjective objective = SearchObjective::Maximize;
  int iterations = 500;
  Rat t0 = Rat(1, 4);      // initial step
  Rat decay = Rat(1, 2);   // step multiplier on stall
  std::uint64_t seed = 0;
  SearchMode mode = SearchMode::Float;  // float iteration, exact final check
  bool normalize = true;                // rescale max distance to 1 after accepts
};

struct SearchTraceEntry {
  int iteration = 0;
  int i = 0, j = 0;
  char move = '.';       // '<' shrink, '>' grow, '.' no improvement, 't' step decay
  double objective = 0;  // objective value after this iteration
  bool accepted = false;
};

struct SearchResult {
  MetricSpace best_metric;
  Rat best_product;  // exact, from the final re-verification
  std::vector<SearchTraceEntry> trace;
  double best_objective_float = 0;
};

// Multiplicative single-pair hill climbing over distance matrices; iterates
// stay valid metrics, the step shrinks on stalls, and the final candidate is
// always re-evaluated exactly. Deterministic for a fixed seed.
SearchResult extremal_search(const SearchConfig& cfg);

// Iteration objective used by the float mode: the volume product of the metric
// with distances rounded to denominators <= 2^16, evaluated exactly on the
// rounded input and returned as a double. Robust against the near-degenerate
// iterates that exact-arithmetic-with-doubles pipelines mishandle.
double approx_volume_product(const MetricSpace& m);

}  // namespace lipfree

#endif  // LIPFREE_VOLUME_PRODUCT_HPP
