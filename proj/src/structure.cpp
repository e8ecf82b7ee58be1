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

#include "lipfree/structure.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>

#include "lipfree/errors.hpp"
#include "lipfree/lp.hpp"

namespace lipfree {

namespace {

// Biconnected components as edge-index sets (single edges are their own
// blocks), via the low-link traversal with an edge stack.
std::vector<std::vector<int>> biconnected_edge_components(const WeightedGraph& g) {
  const int n = g.vertex_count;
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, edge index)
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    adj[g.edges[e].u].push_back({g.edges[e].v, static_cast<int>(e)});
    adj[g.edges[e].v].push_back({g.edges[e].u, static_cast<int>(e)});
  }
  std::vector<int> disc(n, 0), low(n, 0);
  std::vector<int> edge_stack;
  std::vector<std::vector<int>> comps;
  int timer = 0;

  std::function<void(int, int)> dfs = [&](int u, int parent_edge) {
    disc[u] = low[u] = ++timer;
    for (auto [v, e] : adj[u]) {
      if (e == parent_edge) continue;
      if (disc[v] == 0) {
        edge_stack.push_back(e);
        dfs(v, e);
        low[u] = std::min(low[u], low[v]);
        if (low[v] >= disc[u]) {
          std::vector<int> comp;
          while (true) {
            int top = edge_stack.back();
            edge_stack.pop_back();
            comp.push_back(top);
            if (top == e) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
      } else if (disc[v] < disc[u]) {
        edge_stack.push_back(e);
        low[u] = std::min(low[u], disc[v]);
      }
    }
  };
  for (int s = 0; s < n; ++s) {
    if (disc[s] == 0) dfs(s, -1);
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

std::vector<int> component_vertices(const WeightedGraph& g, const std::vector<int>& comp) {
  std::set<int> vs;
  for (int e : comp) {
    vs.insert(g.edges[e].u);
    vs.insert(g.edges[e].v);
  }
  return std::vector<int>(vs.begin(), vs.end());
}

}  // namespace

Decomposition decompose(const MetricSpace& m) {
  WeightedGraph g = canonical_graph(m);
  Decomposition out;
  if (m.point_count() == 1) {
    out.components.push_back(m);
    out.attach_labels.push_back(m.labels[m.root]);
    return out;
  }
  auto comps = biconnected_edge_components(g);
  std::vector<std::vector<int>> comp_vertices;
  comp_vertices.reserve(comps.size());
  for (const auto& c : comps) comp_vertices.push_back(component_vertices(g, c));

  auto make_component_space = [&](const std::vector<int>& verts, int attach_vertex) {
    std::vector<std::string> labels;
    std::vector<std::vector<Rat>> d(verts.size(), std::vector<Rat>(verts.size()));
    int root_pos = 0;
    for (std::size_t a = 0; a < verts.size(); ++a) {
      labels.push_back(m.labels[verts[a]]);
      if (verts[a] == attach_vertex) root_pos = static_cast<int>(a);
      for (std::size_t b = 0; b < verts.size(); ++b) d[a][b] = m.d(verts[a], verts[b]);
    }
    return validate_metric(labels, d, root_pos);
  };

  std::vector<bool> used(comps.size(), false);
  std::set<int> built{m.root};
  out.attach_labels.push_back(m.labels[m.root]);
  for (std::size_t round = 0; round < comps.size(); ++round) {
    bool advanced = false;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (used[c]) continue;
      int attach = -1;
      for (int v : comp_vertices[c]) {
        if (built.count(v)) {
          attach = v;
          break;
        }
      }
      if (attach == -1) continue;
      used[c] = true;
      out.components.push_back(make_component_space(comp_vertices[c], attach));
      if (out.components.size() > 1) out.attach_labels.push_back(m.labels[attach]);
      for (int v : comp_vertices[c]) built.insert(v);
      advanced = true;
      break;
    }
    if (!advanced) throw LipfreeError(Err::Internal, "block-cut traversal stalled");
  }
  return out;
}

MetricSpace Decomposition::reassemble() const {
  if (components.empty()) throw LipfreeError(Err::EmptyInput, "no components");
  MetricSpace acc = components[0];
  for (std::size_t k = 1; k < components.size(); ++k) {
    const std::string& at = attach_labels[k];
    int pos = -1;
    for (int i = 0; i < acc.point_count(); ++i) {
      if (acc.labels[i] == at) pos = i;
    }
    if (pos < 0) throw LipfreeError(Err::Internal, "attach label missing during reassembly");
    acc = diamond(rebase(acc, pos), components[k]);
  }
  int root_pos = -1;
  for (int i = 0; i < acc.point_count(); ++i) {
    if (acc.labels[i] == attach_labels[0]) root_pos = i;
  }
  if (root_pos < 0) throw LipfreeError(Err::Internal, "root label missing after reassembly");
  return rebase(acc, root_pos);
}

bool is_tree(const MetricSpace& m) {
  return static_cast<int>(canonical_graph(m).edges.size()) == m.dim();
}

bool is_spiderweb(const MetricSpace& m) {
  const int n = m.dim();
  if (n == 1) return true;
  if (n < 1) return false;
  WeightedGraph g = canonical_graph(m);
  if (static_cast<int>(g.edges.size()) != 2 * (n - 1)) return false;
  const int pts = m.point_count();
  std::vector<std::vector<bool>> adjacent(pts, std::vector<bool>(pts, false));
  for (const GraphEdge& e : g.edges) adjacent[e.u][e.v] = adjacent[e.v][e.u] = true;
  const Rat& w = g.edges[0].w;
  for (const GraphEdge& e : g.edges) {
    if (e.w != w) return false;
  }
  for (int x = 0; x < pts; ++x) {
    for (int y = x + 1; y < pts; ++y) {
      if (adjacent[x][y]) continue;
      bool ok = true;
      for (int z = 0; z < pts && ok; ++z) {
        if (z == x || z == y) continue;
        if (!adjacent[x][z] || !adjacent[y][z]) ok = false;
      }
      // All edges touch {x, y} iff edge count matches 2(n-1), already checked,
      // and every z is adjacent to both hubs. Spoke-spoke edges would push the
      // count above 2(n-1).
      if (ok) {
        int spoke_edges = 0;
        for (const GraphEdge& e : g.edges) {
          if (e.u == x || e.v == x || e.u == y || e.v == y) ++spoke_edges;
        }
        if (spoke_edges == static_cast<int>(g.edges.size())) return true;
      }
    }
  }
  return false;
}

bool is_hanner(const MetricSpace& m) {
  for (const MetricSpace& comp : decompose(m).components) {
    if (!is_spiderweb(comp)) return false;
  }
  return true;
}

bool free_ball_is_zonotope(const MetricSpace& m) {
  const int n = m.dim();
  if (n <= 2) return true;
  if (n != 3) return false;
  WeightedGraph g = canonical_graph(m);
  if (g.edges.size() != 4) return false;
  std::vector<int> deg(m.point_count(), 0);
  const Rat& w = g.edges[0].w;
  for (const GraphEdge& e : g.edges) {
    ++deg[e.u];
    ++deg[e.v];
    if (e.w != w) return false;
  }
  for (int d : deg) {
    if (d != 2) return false;
  }
  return true;
}

bool satisfies_four_point_condition(const MetricSpace& m) {
  const int n = m.point_count();
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      for (int u = y + 1; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          Rat s1 = m.d(x, y) + m.d(u, v);
          Rat s2 = m.d(x, u) + m.d(y, v);
          Rat s3 = m.d(x, v) + m.d(y, u);
          Rat lo = std::min({s1, s2, s3});
          Rat hi = std::max({s1, s2, s3});
          Rat mid = s1 + s2 + s3 - lo - hi;
          if (mid != hi) return false;
        }
      }
    }
  }
  return true;
}

bool linfty_decomposable(const MetricSpace& m) {
  if (m.dim() < 3) {
    throw LipfreeError(Err::DimensionTooSmall, "decomposability test requires dim >= 3");
  }
  return is_spiderweb(m);
}

ClassificationReport classify(const MetricSpace& m) {
  ClassificationReport r;
  r.dim = m.dim();
  r.is_tree = is_tree(m);
  r.is_spiderweb = is_spiderweb(m);
  r.is_hanner = is_hanner(m);
  r.free_ball_is_zonotope = free_ball_is_zonotope(m);
  r.lip_ball_zonoid_4pt = satisfies_four_point_condition(m);
  if (r.dim >= 3) {
    r.linfty_decomposable = r.is_spiderweb;
  } else if (r.dim == 2) {
    r.linfty_decomposable = r.is_tree;  // parallelogram = square, up to a linear map
  } else {
    r.linfty_decomposable = false;
  }
  r.component_count = static_cast<int>(decompose(m).components.size());
  return r;
}

namespace {

bool match_template_a(const FreeBallModel& model, const std::vector<int>& face, SymmetricFace& out) {
  if (face.size() != 4) return false;
  std::vector<std::pair<int, int>> labels;
  for (int idx : face) labels.push_back(model.vertex_labels[idx]);
  auto [x, y] = labels[0];
  const MetricSpace& m = model.metric;
  for (int p = 1; p < 4; ++p) {
    auto [u, v] = labels[p];
    if (u == x || u == y || v == x || v == y) continue;
    std::set<std::pair<int, int>> rest;
    for (int q = 1; q < 4; ++q) {
      if (q != p) rest.insert(labels[q]);
    }
    if (rest == std::set<std::pair<int, int>>{{x, v}, {u, y}} &&
        m.d(x, y) == m.d(u, v) && m.d(x, y) == m.d(x, v) && m.d(x, y) == m.d(u, y)) {
      out.type = 'a';
      out.x = x;
      out.y = y;
      out.u = u;
      out.v = v;
      return true;
    }
  }
  return false;
}

bool match_template_b(const FreeBallModel& model, const std::vector<int>& face, SymmetricFace& out) {
  const MetricSpace& m = model.metric;
  std::vector<Vec> face_coords;
  for (int idx : face) face_coords.push_back(model.vrep.vertices[idx]);
  Vec center(m.dim(), Rat(0));
  for (const Vec& v : face_coords) center = add(center, v);
  for (Rat& c : center) c /= static_cast<int>(face_coords.size());

  for (int x = 0; x < m.point_count(); ++x) {
    for (int y = 0; y < m.point_count(); ++y) {
      if (x == y || molecule_coords(m, x, y) != center) continue;
      std::set<int> mid = mid_set(m, x, y);
      if (mid.size() < 2) continue;
      std::set<Vec> templ;
      for (int z : mid) {
        templ.insert(molecule_coords(m, x, z));
        templ.insert(molecule_coords(m, z, y));
      }
      bool vertices_in_template = true;
      for (const Vec& v : face_coords) {
        if (!templ.count(v)) vertices_in_template = false;
      }
      if (!vertices_in_template) continue;
      bool template_in_face = true;
      for (const Vec& t : templ) {
        if (!in_convex_hull(face_coords, t)) template_in_face = false;
      }
      if (!template_in_face) continue;
      out.type = 'b';
      out.x = x;
      out.y = y;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<SymmetricFace> symmetric_faces(const FreeBallModel& model) {
  if (model.metric.dim() > 6) {
    throw LipfreeError(Err::InvalidConfig, "face scan supports dimension <= 6");
  }
  std::vector<SymmetricFace> out;
  std::set<Vec> vertex_set(model.vrep.vertices.begin(), model.vrep.vertices.end());
  for (const std::vector<int>& face : enumerate_faces(model.vrep, model.free_facets)) {
    if (face.size() < 4 || face.size() % 2 != 0) continue;
    std::vector<Vec> coords;
    for (int idx : face) coords.push_back(model.vrep.vertices[idx]);
    Vec center(model.metric.dim(), Rat(0));
    for (const Vec& v : coords) center = add(center, v);
    for (Rat& c : center) c /= static_cast<int>(coords.size());
    std::set<Vec> face_set(coords.begin(), coords.end());
    bool symmetric = true;
    for (const Vec& v : coords) {
      Vec mirrored = sub(scale(center, Rat(2)), v);
      if (!face_set.count(mirrored)) {
        symmetric = false;
        break;
      }
    }
    if (!symmetric) continue;
    if (affine_rank(coords) < 2) continue;
    SymmetricFace sf;
    sf.vertex_indices = face;
    sf.dimension = affine_rank(coords);
    if (!match_template_a(model, face, sf) && !match_template_b(model, face, sf)) {
      throw LipfreeError(Err::Internal, "centrally symmetric face matches no template");
    }
    out.push_back(std::move(sf));
  }
  std::sort(out.begin(), out.end(), [](const SymmetricFace& a, const SymmetricFace& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.vertex_indices < b.vertex_indices;
  });
  return out;
}

std::vector<SymmetricFace> symmetric_faces(const MetricSpace& m) {
  return symmetric_faces(free_ball(m));
}

namespace {

// ----- isometry decision ---------------------------------------------------

struct ComponentInfo {
  std::vector<int> edges;     // indices into the graph's edge list, sorted
  std::vector<int> vertices;  // sorted global vertex ids
  int betti = 0;
};

std::vector<ComponentInfo> analyze_components(const WeightedGraph& g) {
  std::vector<ComponentInfo> out;
  for (auto& comp : biconnected_edge_components(g)) {
    ComponentInfo info;
    info.edges = comp;
    info.vertices = component_vertices(g, comp);
    info.betti = static_cast<int>(comp.size()) - static_cast<int>(info.vertices.size()) + 1;
    out.push_back(std::move(info));
  }
  return out;
}

int subset_rank(const WeightedGraph& g, const std::vector<int>& edge_subset, int nvertices) {
  std::vector<int> parent(nvertices);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int merges = 0;
  for (int e : edge_subset) {
    int a = find(g.edges[e].u), b = find(g.edges[e].v);
    if (a != b) {
      parent[a] = b;
      ++merges;
    }
  }
  return merges;
}

// GF(2) cycle space of one component, edges numbered by position in comp.edges.
struct Gf2CycleSpace {
  std::vector<std::uint64_t> echelon;  // reduced basis, each with a distinct pivot

  static std::uint64_t reduce(std::uint64_t v, const std::vector<std::uint64_t>& basis) {
    for (std::uint64_t b : basis) {
      std::uint64_t pivot = b & ~(b - 1);  // lowest set bit
      if (v & pivot) v ^= b;
    }
    return v;
  }

  void insert(std::uint64_t v) {
    v = reduce(v, echelon);
    if (v) echelon.push_back(v);
  }

  bool contains(std::uint64_t v) const { return reduce(v, echelon) == 0; }
};

struct FundamentalCycles {
  std::vector<std::uint64_t> cycles;  // one per non-tree edge, bits over local edges
  std::vector<int> tree_local;        // local indices of tree edges
};

FundamentalCycles fundamental_cycles_gf2(const WeightedGraph& g, const std::vector<int>& comp) {
  FundamentalCycles out;
  std::map<int, int> vid;  // global vertex -> local
  for (int e : comp) {
    vid.emplace(g.edges[e].u, static_cast<int>(vid.size()));
    vid.emplace(g.edges[e].v, static_cast<int>(vid.size()));
  }
  const int nv = static_cast<int>(vid.size());
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<std::vector<std::pair<int, int>>> tree_adj(nv);
  std::vector<int> non_tree;
  for (std::size_t li = 0; li < comp.size(); ++li) {
    int u = vid[g.edges[comp[li]].u], v = vid[g.edges[comp[li]].v];
    int a = find(u), b = find(v);
    if (a != b) {
      parent[a] = b;
      out.tree_local.push_back(static_cast<int>(li));
      tree_adj[u].push_back({v, static_cast<int>(li)});
      tree_adj[v].push_back({u, static_cast<int>(li)});
    } else {
      non_tree.push_back(static_cast<int>(li));
    }
  }
  for (int li : non_tree) {
    int src = vid[g.edges[comp[li]].u], dst = vid[g.edges[comp[li]].v];
    std::vector<int> prevv(nv, -1), preve(nv, -1);
    std::vector<int> stack{src};
    prevv[src] = src;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (auto [y, te] : tree_adj[x]) {
        if (prevv[y] == -1) {
          prevv[y] = x;
          preve[y] = te;
          stack.push_back(y);
        }
      }
    }
    std::uint64_t mask = std::uint64_t{1} << li;
    for (int x = dst; x != src; x = prevv[x]) mask |= std::uint64_t{1} << preve[x];
    out.cycles.push_back(mask);
  }
  return out;
}

// Does this local edge set form a single simple cycle? Used to orient images.
bool walk_cycle_orientation(const WeightedGraph& g, const std::vector<int>& edges,
                            std::vector<int>& signs_out) {
  std::map<int, std::vector<std::pair<int, int>>> adj;  // vertex -> (other, pos)
  for (std::size_t p = 0; p < edges.size(); ++p) {
    adj[g.edges[edges[p]].u].push_back({g.edges[edges[p]].v, static_cast<int>(p)});
    adj[g.edges[edges[p]].v].push_back({g.edges[edges[p]].u, static_cast<int>(p)});
  }
  for (auto& [v, nb] : adj) {
    if (nb.size() != 2) return false;
  }
  signs_out.assign(edges.size(), 0);
  int start = adj.begin()->first;
  int cur = start;
  int steps = 0;
  int incoming = -1;
  do {
    auto& nb = adj[cur];
    auto [nxt, pos] = (nb[0].second != incoming) ? nb[0] : nb[1];
    // traversed cur -> nxt; + iff that matches the stored (u -> v) orientation
    signs_out[pos] = (g.edges[edges[pos]].u == cur) ? 1 : -1;
    incoming = pos;
    cur = nxt;
    ++steps;
  } while (cur != start && steps <= static_cast<int>(edges.size()));
  return cur == start && steps == static_cast<int>(edges.size());
}

struct SignSystem {
  // Solve s_e = c * lambda_f over {+-1} by BFS 2-coloring on the constraint
  // graph; nodes are edges and cycles.
  int nedges;
  int ncycles;
  std::vector<std::vector<std::pair<int, int>>> adj;  // node -> (node, parity)
  SignSystem(int ne, int nc) : nedges(ne), ncycles(nc), adj(ne + nc) {}
  void add(int edge, int cycle, int parity) {
    adj[edge].push_back({nedges + cycle, parity});
    adj[nedges + cycle].push_back({edge, parity});
  }
  // Returns edge signs, or empty on contradiction.
  std::vector<int> solve() {
    std::vector<int> val(adj.size(), 0);
    for (std::size_t s = 0; s < adj.size(); ++s) {
      if (val[s] != 0) continue;
      val[s] = 1;
      std::vector<std::size_t> stack{s};
      while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        for (auto [y, parity] : adj[x]) {
          int want = val[x] * parity;
          if (val[y] == 0) {
            val[y] = want;
            stack.push_back(y);
          } else if (val[y] != want) {
            return {};
          }
        }
      }
    }
    return std::vector<int>(val.begin(), val.begin() + nedges);
  }
};

// Attempts to build a full witness from a candidate edge bijection.
std::optional<IsometryWitness> build_witness(const WeightedGraph& g1, const WeightedGraph& g2,
                                             const std::vector<int>& sigma,
                                             const std::vector<ComponentInfo>& comps1) {
  const int ne = static_cast<int>(g1.edges.size());
  // Global lexicographic spanning tree of g1 and the sign constraint system.
  std::vector<int> parent(g1.vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<int> tree_edges;
  std::vector<std::vector<std::pair<int, int>>> tree_adj(g1.vertex_count);
  std::vector<int> non_tree;
  for (int e = 0; e < ne; ++e) {
    int a = find(g1.edges[e].u), b = find(g1.edges[e].v);
    if (a != b) {
      parent[a] = b;
      tree_edges.push_back(e);
      tree_adj[g1.edges[e].u].push_back({g1.edges[e].v, e});
      tree_adj[g1.edges[e].v].push_back({g1.edges[e].u, e});
    } else {
      non_tree.push_back(e);
    }
  }

  SignSystem system(ne, static_cast<int>(non_tree.size()));
  for (std::size_t f = 0; f < non_tree.size(); ++f) {
    int e0 = non_tree[f];
    // signed fundamental cycle of e0 in g1
    std::vector<int> cyc_edges{e0};
    std::vector<int> cyc_signs{1};
    {
      int src = g1.edges[e0].u, dst = g1.edges[e0].v;
      std::vector<int> prevv(g1.vertex_count, -1), preve(g1.vertex_count, -1);
      std::vector<int> stack{src};
      prevv[src] = src;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (auto [y, te] : tree_adj[x]) {
          if (prevv[y] == -1) {
            prevv[y] = x;
            preve[y] = te;
            stack.push_back(y);
          }
        }
      }
      for (int x = dst; x != src; x = prevv[x]) {
        cyc_edges.push_back(preve[x]);
        cyc_signs.push_back(g1.edges[preve[x]].u == x ? 1 : -1);
      }
    }
    // image must be a simple cycle of g2; orient it
    std::vector<int> image(cyc_edges.size());
    for (std::size_t p = 0; p < cyc_edges.size(); ++p) image[p] = sigma[cyc_edges[p]];
    std::vector<int> image_signs;
    if (!walk_cycle_orientation(g2, image, image_signs)) return std::nullopt;
    for (std::size_t p = 0; p < cyc_edges.size(); ++p) {
      system.add(cyc_edges[p], static_cast<int>(f), image_signs[p] * cyc_signs[p]);
    }
  }
  std::vector<int> signs = system.solve();
  if (signs.empty() && ne > 0) return std::nullopt;

  IsometryWitness w;
  w.sigma = sigma;
  w.signs = signs;
  for (const ComponentInfo& c : comps1) {
    w.components.push_back(c.edges);
    Rat ratio = g2.edges[sigma[c.edges[0]]].w / g1.edges[c.edges[0]].w;
    for (int e : c.edges) {
      if (g2.edges[sigma[e]].w != ratio * g1.edges[e].w) return std::nullopt;
    }
    w.component_ratios.push_back(ratio);
  }
  return w;
}

}  // namespace

bool verify_isometry_witness(const MetricSpace& m1, const MetricSpace& m2,
                             const IsometryWitness& witness) {
  WeightedGraph g1 = canonical_graph(m1), g2 = canonical_graph(m2);
  if (witness.sigma.size() != g1.edges.size() || g1.edges.size() != g2.edges.size()) return false;
  // T is determined by its action on a spanning tree's molecules.
  std::vector<int> parent(g1.vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<int> tree;
  for (std::size_t e = 0; e < g1.edges.size(); ++e) {
    int a = find(g1.edges[e].u), b = find(g1.edges[e].v);
    if (a != b) {
      parent[a] = b;
      tree.push_back(static_cast<int>(e));
    }
  }
  std::vector<Vec> basis, images;
  for (int e : tree) {
    basis.push_back(molecule_coords(m1, g1.edges[e].v, g1.edges[e].u));
    Vec img = molecule_coords(m2, g2.edges[witness.sigma[e]].v, g2.edges[witness.sigma[e]].u);
    if (witness.signs[e] < 0) img = negate(img);
    images.push_back(img);
  }
  std::set<Vec> target_vertices;
  for (std::size_t e = 0; e < g2.edges.size(); ++e) {
    Vec mol = molecule_coords(m2, g2.edges[e].v, g2.edges[e].u);
    target_vertices.insert(mol);
    target_vertices.insert(negate(mol));
  }
  std::set<Vec> mapped;
  for (std::size_t e = 0; e < g1.edges.size(); ++e) {
    Vec mol = molecule_coords(m1, g1.edges[e].v, g1.edges[e].u);
    auto coeffs = express_in_span(basis, mol);
    if (!coeffs) return false;
    Vec img(m2.dim(), Rat(0));
    for (std::size_t b = 0; b < basis.size(); ++b) img = add(img, scale(images[b], (*coeffs)[b]));
    Vec expect = molecule_coords(m2, g2.edges[witness.sigma[e]].v, g2.edges[witness.sigma[e]].u);
    if (witness.signs[e] < 0) expect = negate(expect);
    if (img != expect) return false;
    mapped.insert(img);
    mapped.insert(negate(img));
  }
  return mapped == target_vertices;
}

IsometryResult isometry_check(const MetricSpace& m1, const MetricSpace& m2,
                              int budget_edges_per_component) {
  WeightedGraph g1 = canonical_graph(m1), g2 = canonical_graph(m2);
  if (g1.vertex_count != g2.vertex_count) {
    return NotIsometric{"vertex counts differ: " + std::to_string(g1.vertex_count) + " vs " +
                        std::to_string(g2.vertex_count)};
  }
  if (g1.edges.size() != g2.edges.size()) {
    return NotIsometric{"edge counts differ: " + std::to_string(g1.edges.size()) + " vs " +
                        std::to_string(g2.edges.size()) + " (ball vertex counts " +
                        std::to_string(2 * g1.edges.size()) + " vs " +
                        std::to_string(2 * g2.edges.size()) + ")"};
  }
  auto comps1 = analyze_components(g1);
  auto comps2 = analyze_components(g2);
  if (comps1.size() != comps2.size()) {
    return NotIsometric{"biconnected component counts differ"};
  }
  auto signature = [](const ComponentInfo& c) {
    return std::pair<int, int>(static_cast<int>(c.vertices.size()),
                               static_cast<int>(c.edges.size()));
  };
  {
    std::multiset<std::pair<int, int>> s1, s2;
    for (auto& c : comps1) s1.insert(signature(c));
    for (auto& c : comps2) s2.insert(signature(c));
    if (s1 != s2) return NotIsometric{"component signatures (vertices, edges) differ"};
  }
  for (auto& c : comps1) {
    if (static_cast<int>(c.edges.size()) > budget_edges_per_component) {
      throw LipfreeError(Err::SearchBudgetExceeded,
                         "component has " + std::to_string(c.edges.size()) +
                             " edges, budget is " + std::to_string(budget_edges_per_component));
    }
  }

  // Precompute GF(2) cycle spaces of the target components.
  std::vector<Gf2CycleSpace> space2(comps2.size());
  for (std::size_t c = 0; c < comps2.size(); ++c) {
    for (std::uint64_t cyc : fundamental_cycles_gf2(g2, comps2[c].edges).cycles) {
      space2[c].insert(cyc);
    }
  }

  std::vector<int> sigma(g1.edges.size(), -1);
  std::vector<bool> comp2_used(comps2.size(), false);

  // Per-component edge bijection with ratio and partial-rank pruning, then a
  // GF(2) cyclicity check at the leaf.
  std::function<bool(std::size_t, std::size_t, std::vector<int>&, const ComponentInfo&,
                     const ComponentInfo&, const Gf2CycleSpace&)>
      match_edges = [&](std::size_t depth, std::size_t c2_index, std::vector<int>& used_local,
                        const ComponentInfo& c1, const ComponentInfo& c2,
                        const Gf2CycleSpace& target) -> bool {
    (void)c2_index;
    if (depth == c1.edges.size()) {
      auto fc = fundamental_cycles_gf2(g1, c1.edges);
      for (std::uint64_t cyc : fc.cycles) {
        std::uint64_t image = 0;
        for (std::size_t li = 0; li < c1.edges.size(); ++li) {
          if (cyc & (std::uint64_t{1} << li)) {
            int tgt = sigma[c1.edges[li]];
            // local position of tgt within c2.edges
            auto pos = std::lower_bound(c2.edges.begin(), c2.edges.end(), tgt) - c2.edges.begin();
            image |= std::uint64_t{1} << pos;
          }
        }
        if (!target.contains(image)) return false;
      }
      return true;
    }
    int e1 = c1.edges[depth];
    for (std::size_t t = 0; t < c2.edges.size(); ++t) {
      if (used_local[t]) continue;
      int e2 = c2.edges[t];
      // constant ratio within the component
      if (depth > 0) {
        Rat ratio = g2.edges[sigma[c1.edges[0]]].w / g1.edges[c1.edges[0]].w;
        if (g2.edges[e2].w != ratio * g1.edges[e1].w) continue;
      }
      sigma[e1] = e2;
      used_local[t] = 1;
      std::vector<int> pre1(c1.edges.begin(), c1.edges.begin() + depth + 1);
      std::vector<int> pre2;
      for (int d = 0; d <= static_cast<int>(depth); ++d) pre2.push_back(sigma[c1.edges[d]]);
      if (subset_rank(g1, pre1, g1.vertex_count) == subset_rank(g2, pre2, g2.vertex_count) &&
          match_edges(depth + 1, c2_index, used_local, c1, c2, target)) {
        return true;
      }
      sigma[e1] = -1;
      used_local[t] = 0;
    }
    return false;
  };

  std::function<bool(std::size_t)> assign = [&](std::size_t ci) -> bool {
    if (ci == comps1.size()) return true;
    for (std::size_t cj = 0; cj < comps2.size(); ++cj) {
      if (comp2_used[cj] || signature(comps1[ci]) != signature(comps2[cj])) continue;
      comp2_used[cj] = true;
      std::vector<int> used_local(comps2[cj].edges.size(), 0);
      if (match_edges(0, cj, used_local, comps1[ci], comps2[cj], space2[cj]) && assign(ci + 1)) {
        return true;
      }
      for (int e : comps1[ci].edges) sigma[e] = -1;
      comp2_used[cj] = false;
    }
    return false;
  };

  if (!assign(0)) {
    return NotIsometric{"no cyclic edge bijection with component-constant ratios exists"};
  }
  auto witness = build_witness(g1, g2, sigma, comps1);
  if (!witness || !verify_isometry_witness(m1, m2, *witness)) {
    throw LipfreeError(Err::Internal, "isometry witness failed verification");
  }
  return *witness;
}

}  // namespace lipfree
