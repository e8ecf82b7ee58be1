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

#include "lipfree/metric.hpp"

#include <algorithm>

#include "lipfree/errors.hpp"

namespace lipfree {

int WeightedGraph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].u == u && edges[i].v == v) return static_cast<int>(i);
  }
  return -1;
}

MetricSpace validate_metric(const std::vector<std::string>& labels,
                            const std::vector<std::vector<Rat>>& dist, int root) {
  const int n = static_cast<int>(labels.size());
  std::vector<MetricViolation> bad;
  if (static_cast<int>(dist.size()) != n) {
    bad.push_back({MetricViolation::Kind::NotSquare, -1, -1, -1});
  } else {
    for (const auto& row : dist) {
      if (static_cast<int>(row.size()) != n) {
        bad.push_back({MetricViolation::Kind::NotSquare, -1, -1, -1});
        break;
      }
    }
  }
  if (!bad.empty()) throw NotAMetricError(bad, "distance matrix has wrong shape");
  if (n == 0) throw NotAMetricError({}, "empty point set");
  if (root < 0 || root >= n) throw LipfreeError(Err::InvalidConfig, "root index out of range");
  {
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (static_cast<int>(uniq.size()) != n) {
      throw LipfreeError(Err::InvalidConfig, "duplicate point labels");
    }
  }

  for (int i = 0; i < n; ++i) {
    if (dist[i][i] != 0) bad.push_back({MetricViolation::Kind::NonzeroDiagonal, i, i, -1});
    for (int j = i + 1; j < n; ++j) {
      if (dist[i][j] != dist[j][i]) bad.push_back({MetricViolation::Kind::Asymmetric, i, j, -1});
      if (dist[i][j] <= 0) bad.push_back({MetricViolation::Kind::NonPositive, i, j, -1});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (dist[i][j] > dist[i][k] + dist[k][j]) {
          bad.push_back({MetricViolation::Kind::Triangle, i, j, k});
        }
      }
    }
  }
  if (!bad.empty()) {
    std::string what = std::to_string(bad.size()) + " metric violation(s); first: " + bad[0].describe();
    throw NotAMetricError(bad, what);
  }
  return MetricSpace{labels, root, dist};
}

WeightedGraph canonical_graph(const MetricSpace& m) {
  const int n = m.point_count();
  WeightedGraph g;
  g.vertex_count = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool erased = false;
      for (int k = 0; k < n && !erased; ++k) {
        if (k != i && k != j && m.d(i, j) == m.d(i, k) + m.d(k, j)) erased = true;
      }
      if (!erased) g.edges.push_back({i, j, m.d(i, j)});
    }
  }
  return g;
}

MetricSpace from_weighted_graph(const WeightedGraph& g) {
  const int n = g.vertex_count;
  if (n <= 0) throw LipfreeError(Err::InvalidConfig, "graph has no vertices");
  const Rat none(-1);
  std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n, none));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (const GraphEdge& e : g.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n || e.u == e.v) {
      throw LipfreeError(Err::InvalidConfig, "edge endpoints out of range");
    }
    if (e.w <= 0) throw LipfreeError(Err::InvalidConfig, "non-positive edge weight");
    int u = std::min(e.u, e.v), v = std::max(e.u, e.v);
    if (d[u][v] == none || e.w < d[u][v]) d[u][v] = d[v][u] = e.w;
  }
  // Floyd-Warshall over exact rationals.
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (d[i][k] == none) continue;
      for (int j = 0; j < n; ++j) {
        if (d[k][j] == none) continue;
        Rat via = d[i][k] + d[k][j];
        if (d[i][j] == none || via < d[i][j]) d[i][j] = d[j][i] = via;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (d[i][j] == none) throw LipfreeError(Err::Disconnected, "graph is not connected");
    }
  }
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return MetricSpace{labels, 0, d};
}

bool is_canonical(const WeightedGraph& g) {
  MetricSpace m = from_weighted_graph(g);
  WeightedGraph back = canonical_graph(m);
  return back.edges == g.edges && back.vertex_count == g.vertex_count;
}

std::set<int> metric_segment(const MetricSpace& m, int i, int j) {
  std::set<int> seg;
  for (int k = 0; k < m.point_count(); ++k) {
    if (m.d(i, j) == m.d(i, k) + m.d(k, j)) seg.insert(k);
  }
  return seg;
}

std::set<int> mid_set(const MetricSpace& m, int x, int y) {
  std::set<int> mids;
  for (int z = 0; z < m.point_count(); ++z) {
    if (2 * m.d(x, z) == m.d(x, y) && 2 * m.d(z, y) == m.d(x, y)) mids.insert(z);
  }
  return mids;
}

MetricSpace dilate(const MetricSpace& m, const Rat& a) {
  if (a <= 0) throw LipfreeError(Err::InvalidConfig, "dilation factor must be positive");
  MetricSpace out = m;
  for (auto& row : out.dist) {
    for (Rat& x : row) x *= a;
  }
  return out;
}

MetricSpace rebase(const MetricSpace& m, int new_root) {
  if (new_root < 0 || new_root >= m.point_count()) {
    throw LipfreeError(Err::InvalidConfig, "root index out of range");
  }
  MetricSpace out = m;
  out.root = new_root;
  return out;
}

MetricSpace diamond(const MetricSpace& m1, const MetricSpace& m2) {
  const int n1 = m1.point_count();
  const int n2 = m2.point_count();
  // Result points: glued root, then the non-root points of each summand.
  std::vector<int> from1, from2;
  for (int i = 0; i < n1; ++i) {
    if (i != m1.root) from1.push_back(i);
  }
  for (int i = 0; i < n2; ++i) {
    if (i != m2.root) from2.push_back(i);
  }
  std::vector<std::string> labels;
  labels.push_back(m1.labels[m1.root]);
  std::set<std::string> used{labels[0]};
  auto push_label = [&](std::string name) {
    while (used.count(name)) name += "'";
    used.insert(name);
    labels.push_back(name);
  };
  for (int i : from1) push_label(m1.labels[i]);
  for (int i : from2) push_label(m2.labels[i]);

  const int n = 1 + static_cast<int>(from1.size() + from2.size());
  std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n, Rat(0)));
  auto d1 = [&](int a, int b) { return m1.d(a, b); };
  auto d2 = [&](int a, int b) { return m2.d(a, b); };
  const int off2 = 1 + static_cast<int>(from1.size());
  for (std::size_t a = 0; a < from1.size(); ++a) {
    d[0][1 + a] = d[1 + a][0] = d1(m1.root, from1[a]);
    for (std::size_t b = a + 1; b < from1.size(); ++b) {
      d[1 + a][1 + b] = d[1 + b][1 + a] = d1(from1[a], from1[b]);
    }
  }
  for (std::size_t a = 0; a < from2.size(); ++a) {
    d[0][off2 + a] = d[off2 + a][0] = d2(m2.root, from2[a]);
    for (std::size_t b = a + 1; b < from2.size(); ++b) {
      d[off2 + a][off2 + b] = d[off2 + b][off2 + a] = d2(from2[a], from2[b]);
    }
  }
  for (std::size_t a = 0; a < from1.size(); ++a) {
    for (std::size_t b = 0; b < from2.size(); ++b) {
      Rat cross = d1(from1[a], m1.root) + d2(m2.root, from2[b]);
      d[1 + a][off2 + b] = d[off2 + b][1 + a] = cross;
    }
  }
  return validate_metric(labels, d, 0);
}

}  // namespace lipfree
