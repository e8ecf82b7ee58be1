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

#include "lipfree/free_space.hpp"

#include <algorithm>
#include <numeric>

#include "lipfree/errors.hpp"
#include "lipfree/lp.hpp"

namespace lipfree {

Vec molecule_coords(const MetricSpace& m, int i, int j) {
  Vec coords(m.dim(), Rat(0));
  const Rat& d = m.d(i, j);
  if (i != m.root) coords[m.coord_of(i)] = Rat(1) / d;
  if (j != m.root) coords[m.coord_of(j)] = Rat(-1) / d;
  return coords;
}

std::vector<Molecule> molecules(const MetricSpace& m) {
  std::vector<Molecule> out;
  const int n = m.point_count();
  out.reserve(n * (n - 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) out.push_back({i, j, molecule_coords(m, i, j)});
    }
  }
  return out;
}

bool is_extreme(const MetricSpace& m, int i, int j) {
  for (int k = 0; k < m.point_count(); ++k) {
    if (k != i && k != j && m.d(i, j) == m.d(i, k) + m.d(k, j)) return false;
  }
  return true;
}

int face_dimension(const MetricSpace& m, int i, int j) {
  return static_cast<int>(metric_segment(m, i, j).size()) - 2;
}

std::set<std::pair<int, int>> face_of_molecule_vertices(const MetricSpace& m, int i, int j) {
  std::set<std::pair<int, int>> out;
  const int n = m.point_count();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && m.d(i, j) == m.d(i, u) + m.d(u, v) + m.d(v, j)) out.emplace(u, v);
    }
  }
  return out;
}

FreeBallModel free_ball(const MetricSpace& m, const FreeBallOptions& opts) {
  FreeBallModel model;
  model.metric = m;
  model.graph = canonical_graph(m);

  std::vector<std::pair<std::pair<int, int>, Vec>> labelled;
  if (opts.use_all_molecules) {
    std::vector<Vec> all;
    for (const Molecule& mol : molecules(m)) all.push_back(mol.coords);
    VPolytope hull = reduce_to_vertices(all);
    for (const Vec& v : hull.vertices) {
      // Recover the label by matching coordinates against the molecule list.
      for (const Molecule& mol : molecules(m)) {
        if (mol.coords == v) {
          labelled.push_back({{mol.i, mol.j}, v});
          break;
        }
      }
    }
  } else {
    for (const GraphEdge& e : model.graph.edges) {
      labelled.push_back({{e.v, e.u}, molecule_coords(m, e.v, e.u)});
      labelled.push_back({{e.u, e.v}, molecule_coords(m, e.u, e.v)});
    }
  }
  std::sort(labelled.begin(), labelled.end(),
            [](const auto& a, const auto& b) { return lex_less(a.second, b.second); });
  model.vrep.dim = m.dim();
  for (auto& [label, coords] : labelled) {
    model.vertex_labels.push_back(label);
    model.vrep.vertices.push_back(std::move(coords));
  }
  if (!opts.use_all_molecules &&
      model.vrep.vertices.size() != 2 * model.graph.edges.size()) {
    throw LipfreeError(Err::Internal, "vertex count != 2 |edges|");
  }

  model.hrep = polar(model.vrep);
  model.lip_vertices = vertex_enumeration(model.hrep);
  model.free_facets = polar(model.lip_vertices);

  if (opts.lattice_check) {
    bool integral = true;
    for (int i = 0; i < m.point_count() && integral; ++i) {
      for (int j = 0; j < m.point_count() && integral; ++j) {
        if (i != j && m.d(i, j).get_den() != 1) integral = false;
      }
    }
    if (integral) {
      for (const Vec& f : model.lip_vertices.vertices) {
        for (const Rat& x : f) {
          if (x.get_den() != 1) {
            throw LipfreeError(Err::Internal,
                               "integer distances must give lattice Lipschitz vertices");
          }
        }
      }
    }
  }
  return model;
}

namespace {

// Union-find for the spanning-tree computation.
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

BoundaryOperator boundary_operator(const MetricSpace& m) {
  BoundaryOperator op;
  op.graph = canonical_graph(m);
  const int n = m.dim();
  const int ecount = static_cast<int>(op.graph.edges.size());
  op.matrix.assign(n, Vec(ecount, Rat(0)));
  for (int e = 0; e < ecount; ++e) {
    Vec col = molecule_coords(m, op.graph.edges[e].v, op.graph.edges[e].u);
    for (int r = 0; r < n; ++r) op.matrix[r][e] = col[r];
  }

  // Edges are already sorted by (u, v), so greedy acyclic selection yields the
  // lexicographically smallest spanning tree edge set.
  DisjointSets ds(m.point_count());
  std::vector<bool> in_tree(ecount, false);
  std::vector<std::vector<std::pair<int, int>>> tree_adj(m.point_count());  // (neighbor, edge)
  for (int e = 0; e < ecount; ++e) {
    if (ds.merge(op.graph.edges[e].u, op.graph.edges[e].v)) {
      in_tree[e] = true;
      tree_adj[op.graph.edges[e].u].push_back({op.graph.edges[e].v, e});
      tree_adj[op.graph.edges[e].v].push_back({op.graph.edges[e].u, e});
    }
  }

  // Fundamental cycle of a non-tree edge e = (u, v): e plus the tree path from
  // v back to u; coefficients are +-d(edge), so each basis vector is killed by
  // the boundary operator.
  for (int e = 0; e < ecount; ++e) {
    if (in_tree[e]) continue;
    const int src = op.graph.edges[e].u, dst = op.graph.edges[e].v;
    std::vector<int> prev_vertex(m.point_count(), -1), prev_edge(m.point_count(), -1);
    std::vector<int> stack{src};
    prev_vertex[src] = src;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      if (x == dst) break;
      for (auto [y, te] : tree_adj[x]) {
        if (prev_vertex[y] == -1) {
          prev_vertex[y] = x;
          prev_edge[y] = te;
          stack.push_back(y);
        }
      }
    }
    Vec cyc(ecount, Rat(0));
    cyc[e] = op.graph.edges[e].w;  // traversed u -> v, along its orientation
    for (int x = dst; x != src; x = prev_vertex[x]) {
      int te = prev_edge[x];
      // Walking v -> u, the tree edge te is traversed from x to prev_vertex[x];
      // the sign is + iff that agrees with te's own orientation.
      int sign = (op.graph.edges[te].u == x) ? 1 : -1;
      cyc[te] = sign * op.graph.edges[te].w;
    }
    op.cycle_basis.push_back(std::move(cyc));
  }
  return op;
}

Rat free_norm(const MetricSpace& m, const Vec& phi) {
  if (static_cast<int>(phi.size()) != m.dim()) {
    throw LipfreeError(Err::DimensionMismatch, "vector has wrong dimension");
  }
  BoundaryOperator op = boundary_operator(m);
  const int n = m.dim();
  const int ecount = static_cast<int>(op.graph.edges.size());
  // min sum(t+ + t-) s.t. B (t+ - t-) = phi, t+- >= 0.
  Mat a(n, Vec(2 * ecount));
  for (int r = 0; r < n; ++r) {
    for (int e = 0; e < ecount; ++e) {
      a[r][e] = op.matrix[r][e];
      a[r][ecount + e] = -op.matrix[r][e];
    }
  }
  Vec c(2 * ecount, Rat(1));
  LpResult res = solve_lp(a, phi, c);
  if (res.status != LpStatus::Optimal) {
    throw LipfreeError(Err::Internal, "free norm LP must be feasible and bounded");
  }
  return res.objective;
}

VPolytope fundamental_polytope(const MetricSpace& m) {
  const int n = m.point_count();
  std::vector<Vec> projected;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // (e_i - e_j)/d in R^n with all point coordinates, root coordinate dropped.
      Vec full(n, Rat(0));
      full[i] = Rat(1) / m.d(i, j);
      full[j] = Rat(-1) / m.d(i, j);
      Vec proj;
      proj.reserve(n - 1);
      for (int c = 0; c < n; ++c) {
        if (c != m.root) proj.push_back(full[c]);
      }
      projected.push_back(std::move(proj));
    }
  }
  return reduce_to_vertices(projected);
}

}  // namespace lipfree
