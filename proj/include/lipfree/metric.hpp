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

#ifndef LIPFREE_METRIC_HPP
#define LIPFREE_METRIC_HPP

#include <set>
#include <string>
#include <vector>

#include "lipfree/rational.hpp"

namespace lipfree {

// Rooted finite metric space with an exact rational distance matrix.
struct MetricSpace {
  std::vector<std::string> labels;
  int root = 0;
  std::vector<std::vector<Rat>> dist;

  int point_count() const { return static_cast<int>(labels.size()); }
  // Dimension of the associated normed spaces: one less than the point count.
  int dim() const { return point_count() - 1; }
  const Rat& d(int i, int j) const { return dist[i][j]; }

  // Coordinate index of a non-root point (root is sent to the origin).
  int coord_of(int point) const { return point < root ? point : point - 1; }
  int point_of_coord(int coord) const { return coord < root ? coord : coord + 1; }
};

struct GraphEdge {
  int u;  // source, u < v; this fixed ordering is the edge orientation
  int v;  // target
  Rat w;
  bool operator==(const GraphEdge& o) const { return u == o.u && v == o.v && w == o.w; }
};

struct WeightedGraph {
  int vertex_count = 0;
  std::vector<GraphEdge> edges;  // sorted by (u, v)

  int edge_index(int u, int v) const;  // -1 if absent
};

// Checks all metric axioms; throws NotAMetricError carrying every violation.
MetricSpace validate_metric(const std::vector<std::string>& labels,
                            const std::vector<std::vector<Rat>>& dist, int root = 0);

// The canonical graph: the complete graph with every edge {i,j} erased for
// which some third point k satisfies d(i,j) = d(i,k) + d(k,j).
WeightedGraph canonical_graph(const MetricSpace& m);

// Shortest-path metric of a connected positively weighted graph. Labels are
// the vertex indices as strings; the root is vertex 0.
MetricSpace from_weighted_graph(const WeightedGraph& g);

// Whether the graph is the canonical graph of its own shortest-path metric:
// every edge must be strictly shorter than any other path between its ends.
bool is_canonical(const WeightedGraph& g);

// Metric segment [i,j] = {k : d(i,j) = d(i,k) + d(k,j)}; contains i and j.
std::set<int> metric_segment(const MetricSpace& m, int i, int j);

// Exact midpoints: {z : 2 d(x,z) = 2 d(z,y) = d(x,y)}.
std::set<int> mid_set(const MetricSpace& m, int x, int y);

MetricSpace dilate(const MetricSpace& m, const Rat& a);
MetricSpace rebase(const MetricSpace& m, int new_root);

// Glues the two spaces at their roots; cross distances pass through the glued
// point, which becomes the root of the result.
MetricSpace diamond(const MetricSpace& m1, const MetricSpace& m2);

}  // namespace lipfree

#endif  // LIPFREE_METRIC_HPP
