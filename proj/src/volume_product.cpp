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

#include "lipfree/volume_product.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "lipfree/errors.hpp"
#include "lipfree/structure.hpp"

namespace lipfree {

namespace {

bool all_triangles_strict(const MetricSpace& m) {
  const int n = m.point_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (k != i && k != j && m.d(i, j) == m.d(i, k) + m.d(k, j)) return false;
      }
    }
  }
  return true;
}

std::vector<bool> bridge_flags(const WeightedGraph& g) {
  std::vector<bool> bridge(g.edges.size(), false);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    std::vector<int> parent(g.vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    int merges = 0;
    for (std::size_t f = 0; f < g.edges.size(); ++f) {
      if (f == e) continue;
      int a = find(g.edges[f].u), b = find(g.edges[f].v);
      if (a != b) {
        parent[a] = b;
        ++merges;
      }
    }
    bridge[e] = (merges < g.vertex_count - 1);
  }
  return bridge;
}

MinimizerConditions minimizer_conditions_from(const FreeBallModel& model) {
  MinimizerConditions out;
  const MetricSpace& m = model.metric;
  const int n = m.dim();
  auto incidence = facet_vertex_incidence(model.vrep, model.free_facets);
  std::vector<bool> bridges = bridge_flags(model.graph);
  for (std::size_t v = 0; v < model.vrep.vertices.size(); ++v) {
    MinimizerVertexReport rep;
    rep.i = model.vertex_labels[v].first;
    rep.j = model.vertex_labels[v].second;
    rep.all_facets_simplices = true;
    for (std::size_t f = 0; f < incidence.size(); ++f) {
      if (std::find(incidence[f].begin(), incidence[f].end(), static_cast<int>(v)) ==
          incidence[f].end()) {
        continue;
      }
      if (static_cast<int>(incidence[f].size()) != n) rep.all_facets_simplices = false;
    }
    int eidx = model.graph.edge_index(rep.i, rep.j);
    rep.edge_is_bridge = eidx >= 0 && bridges[eidx];
    if (rep.all_facets_simplices && !rep.edge_is_bridge) out.bridge_condition = false;
    out.vertices.push_back(rep);
  }
  bool simplicial = is_simplicial(model.vrep, model.free_facets);
  bool tree = static_cast<int>(model.graph.edges.size()) == n;
  out.simplicial_implies_tree = !simplicial || tree;
  return out;
}

}  // namespace

VolumeProductReport volume_product(const FreeBallModel& model) {
  VolumeProductReport rep;
  rep.n = model.metric.dim();
  rep.vol_free = volume(model.vrep, model.free_facets);
  rep.vol_lip = volume(model.lip_vertices, model.hrep);
  rep.product = rep.vol_free * rep.vol_lip;
  rep.mahler_floor = cross_polytope_volume_product(rep.n);
  rep.gap = rep.product - rep.mahler_floor;
  rep.strict_triangles = all_triangles_strict(model.metric);
  rep.simplicial = is_simplicial(model.vrep, model.free_facets);
  rep.all_bridges = minimizer_conditions_from(model).bridge_condition;
  return rep;
}

VolumeProductReport volume_product(const MetricSpace& m) {
  if (m.dim() == 0) {
    VolumeProductReport rep;
    rep.n = 0;
    rep.vol_free = rep.vol_lip = rep.product = rep.mahler_floor = 1;
    rep.gap = 0;
    rep.strict_triangles = true;
    rep.simplicial = true;
    rep.all_bridges = true;
    return rep;
  }
  return volume_product(free_ball(m));
}

Rat complete_graph_product(int n) {
  if (n < 1) throw LipfreeError(Err::InvalidConfig, "need n >= 1");
  Rat r(Int(n + 1) * binomial(2 * n, n), factorial(n));
  r.canonicalize();
  return r;
}

std::pair<Rat, Rat> diamond_product_identity(const MetricSpace& m1, const MetricSpace& m2) {
  const int n1 = m1.dim(), n2 = m2.dim();
  Rat lhs = volume_product(diamond(m1, m2)).product;
  Rat scale = make_rational(factorial(n1) * factorial(n2), factorial(n1 + n2));
  Rat rhs = scale * volume_product(m1).product * volume_product(m2).product;
  if (lhs != rhs) {
    throw LipfreeError(Err::Internal, "gluing identity violated: " + rational_to_string(lhs) +
                                          " != " + rational_to_string(rhs));
  }
  return {lhs, rhs};
}

MaximizerConditions maximizer_conditions(const MetricSpace& m) {
  FreeBallModel model = free_ball(m);
  MaximizerConditions out;
  out.strict_triangles = all_triangles_strict(m);
  out.simplicial = is_simplicial(model.vrep, model.free_facets);
  return out;
}

MinimizerConditions minimizer_conditions(const MetricSpace& m) {
  return minimizer_conditions_from(free_ball(m));
}

namespace {

// Largest continued-fraction convergent with denominator <= max_den.
Rat truncate_denominator(const Rat& x, unsigned long max_den) {
  if (x.get_den() <= max_den) return x;
  Int p_prev = 1, q_prev = 0;
  Int num = x.get_num(), den = x.get_den();
  Int p_cur, q_cur;
  bool have_cur = false;
  while (den != 0) {
    Int a = num / den;  // floor: all our inputs are positive
    Int r = num - a * den;
    Int p_next = have_cur ? Int(a * p_cur + p_prev) : a;
    Int q_next = have_cur ? Int(a * q_cur + q_prev) : Int(1);
    if (q_next > max_den) break;
    if (have_cur) {
      p_prev = p_cur;
      q_prev = q_cur;
    }
    p_cur = p_next;
    q_cur = q_next;
    have_cur = true;
    num = den;
    den = r;
  }
  Rat out(p_cur, q_cur);
  out.canonicalize();
  if (out == 0) out = make_rational(1, max_den);  // keep distances positive
  return out;
}

// Volume product of conv(+-molecules) for a distance matrix that is allowed to
// carry slightly broken triangle inequalities (rounded iterates). Redundant
// molecules are tolerated; facet filtering happens geometrically.
Rat raw_ball_product(const MetricSpace& m) {
  const int n = m.dim();
  std::vector<Vec> mols;
  for (int i = 0; i < m.point_count(); ++i) {
    for (int j = 0; j < m.point_count(); ++j) {
      if (i != j) mols.push_back(molecule_coords(m, i, j));
    }
  }
  HPolytope lip_h;
  lip_h.dim = n;
  {
    std::set<std::pair<Vec, Rat>> seen;
    for (const Vec& mol : mols) {
      Vec joint = mol;
      joint.push_back(Rat(1));
      make_primitive(joint);
      Rat off = joint.back();
      joint.pop_back();
      if (seen.insert({joint, off}).second) lip_h.halfspaces.push_back({joint, off});
    }
  }
  VPolytope lip_v = vertex_enumeration(lip_h);
  // Keep only facet-supporting halfspaces before measuring.
  HPolytope lip_facets;
  lip_facets.dim = n;
  auto incidence = facet_vertex_incidence(lip_v, lip_h);
  for (std::size_t f = 0; f < lip_h.halfspaces.size(); ++f) {
    std::vector<Vec> coords;
    for (int v : incidence[f]) coords.push_back(lip_v.vertices[v]);
    if (!coords.empty() && affine_rank(coords) == n - 1) {
      lip_facets.halfspaces.push_back(lip_h.halfspaces[f]);
    }
  }
  Rat vol_lip = volume(lip_v, lip_facets);
  // Free ball: vertices are the facet normals of the Lipschitz ball, facets
  // its vertices (bipolarity; both bodies have the origin inside).
  VPolytope free_v;
  free_v.dim = n;
  for (const Halfspace& hs : lip_facets.halfspaces) {
    Vec v(n);
    for (int c = 0; c < n; ++c) v[c] = hs.normal[c] / hs.offset;
    free_v.vertices.push_back(std::move(v));
  }
  std::sort(free_v.vertices.begin(), free_v.vertices.end(), lex_less);
  HPolytope free_h;
  free_h.dim = n;
  for (const Vec& f : lip_v.vertices) {
    Halfspace hs{f, Rat(1)};
    Vec joint = hs.normal;
    joint.push_back(hs.offset);
    make_primitive(joint);
    hs.offset = joint.back();
    joint.pop_back();
    hs.normal = std::move(joint);
    free_h.halfspaces.push_back(std::move(hs));
  }
  Rat vol_free = volume(free_v, free_h);
  return vol_free * vol_lip;
}

MetricSpace rounded_metric(const MetricSpace& m, unsigned long max_den) {
  MetricSpace out = m;
  for (int i = 0; i < m.point_count(); ++i) {
    for (int j = i + 1; j < m.point_count(); ++j) {
      Rat t = truncate_denominator(m.d(i, j), max_den);
      out.dist[i][j] = out.dist[j][i] = t;
    }
  }
  return out;
}

constexpr unsigned long kApproxDen = 1ul << 16;

Rat search_objective(const MetricSpace& m, SearchMode mode) {
  if (mode == SearchMode::Exact) return volume_product(m).product;
  return raw_ball_product(rounded_metric(m, kApproxDen));
}

bool triangles_ok(const std::vector<std::vector<Rat>>& d) {
  const int n = static_cast<int>(d.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (d[i][j] <= 0) return false;
      for (int k = 0; k < n; ++k) {
        if (k != i && k != j && d[i][j] > d[i][k] + d[k][j]) return false;
      }
    }
  }
  return true;
}

void normalize_max_distance(MetricSpace& m) {
  Rat mx = 0;
  for (int i = 0; i < m.point_count(); ++i) {
    for (int j = i + 1; j < m.point_count(); ++j) mx = std::max(mx, m.d(i, j));
  }
  if (mx == 0 || mx == 1) return;
  for (auto& row : m.dist) {
    for (Rat& x : row) x /= mx;
  }
}

}  // namespace

double approx_volume_product(const MetricSpace& m) {
  return rational_to_double(raw_ball_product(rounded_metric(m, kApproxDen)));
}

SearchResult extremal_search(const SearchConfig& cfg) {
  if (cfg.point_count < 3) throw LipfreeError(Err::InvalidConfig, "need at least 3 points");
  if (cfg.iterations < 0) throw LipfreeError(Err::InvalidConfig, "negative iteration count");
  if (cfg.t0 <= 0 || cfg.decay <= 0 || cfg.decay >= 1) {
    throw LipfreeError(Err::InvalidConfig, "need t0 > 0 and 0 < decay < 1");
  }
  const int pts = cfg.point_count;
  std::mt19937_64 rng(cfg.seed);

  // Seeded start in [1/2, 1]: every triangle inequality holds automatically.
  std::vector<std::vector<Rat>> d(pts, std::vector<Rat>(pts, Rat(0)));
  for (int i = 0; i < pts; ++i) {
    for (int j = i + 1; j < pts; ++j) {
      Rat val(4 + static_cast<long>(rng() % 5), 8);
      val.canonicalize();
      d[i][j] = d[j][i] = val;
    }
  }
  std::vector<std::string> labels(pts);
  for (int i = 0; i < pts; ++i) labels[i] = std::to_string(i);
  MetricSpace current = validate_metric(labels, d, 0);
  if (cfg.normalize) normalize_max_distance(current);

  const bool maximize = cfg.objective == SearchObjective::Maximize;
  auto better = [&](const Rat& a, const Rat& b) { return maximize ? a > b : a < b; };

  Rat current_value = search_objective(current, cfg.mode);
  Rat t = cfg.t0;
  int stall = 0;
  const int stall_window = pts * (pts - 1);  // 2 * number of pairs

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < pts; ++i) {
    for (int j = i + 1; j < pts; ++j) pairs.emplace_back(i, j);
  }

  SearchResult result;
  result.trace.reserve(cfg.iterations);
  for (int iter = 1; iter <= cfg.iterations; ++iter) {
    auto [i, j] = pairs[rng() % pairs.size()];
    SearchTraceEntry entry;
    entry.iteration = iter;
    entry.i = i;
    entry.j = j;

    Rat shrink = current.d(i, j) / (1 + t);
    Rat grow = current.d(i, j) * (1 + t);
    char which = '.';
    MetricSpace best_candidate;
    Rat best_value;
    bool have = false;
    for (char dir : {'<', '>'}) {
      MetricSpace cand = current;
      cand.dist[i][j] = cand.dist[j][i] = (dir == '<') ? shrink : grow;
      if (!triangles_ok(cand.dist)) continue;
      if (cfg.normalize) normalize_max_distance(cand);
      Rat value = search_objective(cand, cfg.mode);
      if (!have || better(value, best_value)) {
        best_candidate = std::move(cand);
        best_value = value;
        which = dir;
        have = true;
      }
    }
    if (have && better(best_value, current_value)) {
      current = std::move(best_candidate);
      current_value = best_value;
      entry.move = which;
      entry.accepted = true;
      stall = 0;
    } else {
      ++stall;
      if (stall >= stall_window) {
        t *= cfg.decay;
        stall = 0;
        entry.move = 't';
      }
    }
    entry.objective = rational_to_double(current_value);
    result.trace.push_back(entry);
  }

  result.best_metric = current;
  result.best_product = volume_product(current).product;
  result.best_objective_float = rational_to_double(current_value);
  return result;
}

}  // namespace lipfree
