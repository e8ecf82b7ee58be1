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

#include "lipfree/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "lipfree/errors.hpp"
#include "lipfree/lp.hpp"

namespace lipfree {

namespace {

using Bits = std::vector<std::uint64_t>;

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }
void set_bit(Bits& b, std::size_t i) { b[i / 64] |= (std::uint64_t{1} << (i % 64)); }

Bits bits_and(const Bits& a, const Bits& b) {
  Bits r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}

bool bits_subset(const Bits& small, const Bits& big) {
  for (std::size_t i = 0; i < small.size(); ++i) {
    if (small[i] & ~big[i]) return false;
  }
  return true;
}

int bits_count(const Bits& b) {
  int c = 0;
  for (std::uint64_t w : b) c += __builtin_popcountll(w);
  return c;
}

struct Ray {
  Vec dir;
  Bits zero;  // constraints (by insertion-order index) tight on this ray
};

// Double description for a pointed cone {z : <h, z> <= 0 for all h}.
// Normals are canonicalized, deduplicated and inserted in lexicographic order,
// so the result is a deterministic function of the input set.
std::vector<Vec> extreme_rays(std::vector<Vec> normals) {
  if (normals.empty()) throw LipfreeError(Err::Internal, "extreme_rays: no constraints");
  const std::size_t dim = normals[0].size();
  for (Vec& h : normals) {
    if (h.size() != dim) throw LipfreeError(Err::DimensionMismatch, "constraint width mismatch");
    make_primitive(h);
  }
  std::sort(normals.begin(), normals.end(), lex_less);
  normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
  const std::size_t m = normals.size();

  // Greedy maximal independent subset, in order; the cone must be pointed.
  std::vector<std::size_t> basis;
  Mat echelon;
  for (std::size_t i = 0; i < m && basis.size() < dim; ++i) {
    Mat probe = echelon;
    probe.push_back(normals[i]);
    if (rank(probe) > static_cast<int>(basis.size())) {
      basis.push_back(i);
      echelon = std::move(probe);
    }
  }
  if (basis.size() < dim) {
    throw LipfreeError(Err::Internal, "extreme_rays: cone is not pointed");
  }

  // Simplicial start: rays are the columns of -B^{-1} for the basis rows B.
  std::vector<Ray> rays;
  {
    Mat b_rows(dim, Vec(dim));
    for (std::size_t i = 0; i < dim; ++i) b_rows[i] = normals[basis[i]];
    for (std::size_t j = 0; j < dim; ++j) {
      Vec rhs(dim, Rat(0));
      rhs[j] = -1;
      auto col = solve_square(b_rows, rhs);
      if (!col) throw LipfreeError(Err::Internal, "extreme_rays: singular basis");
      Ray r;
      r.dir = *col;
      make_primitive(r.dir);
      r.zero = make_bits(m);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i != j) set_bit(r.zero, basis[i]);
      }
      rays.push_back(std::move(r));
    }
  }

  std::vector<bool> in_basis(m, false);
  for (std::size_t i : basis) in_basis[i] = true;

  for (std::size_t ci = 0; ci < m; ++ci) {
    if (in_basis[ci]) continue;
    const Vec& h = normals[ci];
    std::vector<int> sgn_of(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      int s = rat_sign(dot(h, rays[r].dir));
      sgn_of[r] = s;
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
    }
    if (pos.empty()) {
      for (std::size_t r : zero) set_bit(rays[r].zero, ci);
      continue;
    }
    std::vector<Ray> created;
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        Bits common = bits_and(rays[p].zero, rays[q].zero);
        if (bits_count(common) + 2 < static_cast<int>(dim)) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (bits_subset(common, rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Rat sp = dot(h, rays[p].dir);  // > 0
        Rat sq = dot(h, rays[q].dir);  // < 0
        Vec dir = sub(scale(rays[q].dir, sp), scale(rays[p].dir, sq));
        make_primitive(dir);
        Ray nr;
        nr.dir = std::move(dir);
        nr.zero = common;
        set_bit(nr.zero, ci);
        created.push_back(std::move(nr));
      }
    }
    std::vector<Ray> next;
    next.reserve(neg.size() + zero.size() + created.size());
    for (std::size_t r : neg) next.push_back(std::move(rays[r]));
    for (std::size_t r : zero) {
      set_bit(rays[r].zero, ci);
      next.push_back(std::move(rays[r]));
    }
    for (Ray& nr : created) next.push_back(std::move(nr));
    rays = std::move(next);
  }

  std::vector<Vec> out;
  out.reserve(rays.size());
  for (Ray& r : rays) out.push_back(std::move(r.dir));
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void check_uniform_dim(const std::vector<Vec>& points) {
  for (const Vec& p : points) {
    if (p.size() != points[0].size()) {
      throw LipfreeError(Err::DimensionMismatch, "points of unequal dimension");
    }
  }
}

void canonicalize_halfspace(Halfspace& hs) {
  Vec joint = hs.normal;
  joint.push_back(hs.offset);
  make_primitive(joint);
  hs.offset = joint.back();
  joint.pop_back();
  hs.normal = std::move(joint);
}

bool halfspace_lex_less(const Halfspace& a, const Halfspace& b) {
  if (a.normal != b.normal) return lex_less(a.normal, b.normal);
  return a.offset < b.offset;
}

}  // namespace

VPolytope reduce_to_vertices(const std::vector<Vec>& points) {
  if (points.empty()) throw LipfreeError(Err::EmptyInput, "no points given");
  check_uniform_dim(points);
  std::vector<Vec> pts = points;
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  VPolytope out;
  out.dim = static_cast<int>(pts[0].size());
  if (pts.size() == 1) {
    out.vertices = pts;
    return out;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Vec> others;
    others.reserve(pts.size() - 1);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j != i) others.push_back(pts[j]);
    }
    if (!in_convex_hull(others, pts[i])) out.vertices.push_back(pts[i]);
  }
  return out;
}

HPolytope hull_to_hrep(const VPolytope& p) {
  if (p.vertices.empty()) throw LipfreeError(Err::EmptyInput, "polytope has no vertices");
  check_uniform_dim(p.vertices);
  const std::size_t n = p.vertices[0].size();
  // Homogenize: facets of P are the extreme rays of the cone polar to
  // cone{(1, v) : v vertex}.
  std::vector<Vec> gens;
  gens.reserve(p.vertices.size());
  for (const Vec& v : p.vertices) {
    Vec g(n + 1);
    g[0] = 1;
    for (std::size_t i = 0; i < n; ++i) g[i + 1] = v[i];
    gens.push_back(std::move(g));
  }
  if (rank(gens) < static_cast<int>(n) + 1) {
    throw LipfreeError(Err::NotFullDimensional, "convex hull is not full-dimensional");
  }
  std::vector<Vec> rays = extreme_rays(gens);
  HPolytope out;
  out.dim = static_cast<int>(n);
  for (const Vec& r : rays) {
    Halfspace hs;
    hs.offset = -r[0];
    hs.normal.assign(r.begin() + 1, r.end());
    if (is_zero(hs.normal)) throw LipfreeError(Err::Internal, "degenerate facet normal");
    out.halfspaces.push_back(std::move(hs));
  }
  for (const Halfspace& hs : out.halfspaces) {
    if (hs.offset <= 0) {
      throw LipfreeError(Err::OriginNotInterior, "origin is not interior to the hull");
    }
  }
  std::sort(out.halfspaces.begin(), out.halfspaces.end(), halfspace_lex_less);
  return out;
}

VPolytope vertex_enumeration(const HPolytope& h) {
  const std::size_t n = h.dim;
  if (n == 0 || h.halfspaces.empty()) {
    throw LipfreeError(Err::Unbounded, "empty constraint system");
  }
  Mat a;
  for (const Halfspace& hs : h.halfspaces) {
    if (hs.normal.size() != n) throw LipfreeError(Err::DimensionMismatch, "halfspace width mismatch");
    a.push_back(hs.normal);
  }
  if (rank(a) < static_cast<int>(n)) {
    throw LipfreeError(Err::Unbounded, "constraint normals do not span; polytope unbounded or empty");
  }
  // Homogenize into the cone {(x0, x) : <a_i, x> - b_i x0 <= 0, -x0 <= 0}.
  std::vector<Vec> normals;
  normals.reserve(h.halfspaces.size() + 1);
  for (const Halfspace& hs : h.halfspaces) {
    Vec g(n + 1);
    g[0] = -hs.offset;
    for (std::size_t i = 0; i < n; ++i) g[i + 1] = hs.normal[i];
    normals.push_back(std::move(g));
  }
  Vec top(n + 1, Rat(0));
  top[0] = -1;
  normals.push_back(std::move(top));

  std::vector<Vec> rays = extreme_rays(std::move(normals));
  VPolytope out;
  out.dim = static_cast<int>(n);
  for (const Vec& r : rays) {
    if (r[0] == 0) {
      throw LipfreeError(Err::Unbounded, "recession direction found; polytope unbounded");
    }
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = r[i + 1] / r[0];
    out.vertices.push_back(std::move(v));
  }
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  if (affine_rank(out.vertices) < static_cast<int>(n)) {
    throw LipfreeError(Err::NotFullDimensional, "vertex set is not full-dimensional");
  }
  return out;
}

HPolytope reduce_to_facets(const HPolytope& h) { return hull_to_hrep(vertex_enumeration(h)); }

bool origin_in_interior(const VPolytope& p) {
  if (p.vertices.empty()) return false;
  Mat rows = p.vertices;
  if (rank(rows) < p.dim) return false;
  // 0 is interior iff the polar cone {y : <v, y> <= 0 for all v} is trivial.
  std::vector<Vec> rays = extreme_rays(p.vertices);
  return rays.empty();
}

HPolytope polar(const VPolytope& p) {
  if (p.vertices.empty()) throw LipfreeError(Err::EmptyInput, "polytope has no vertices");
  check_uniform_dim(p.vertices);
  if (!origin_in_interior(p)) {
    throw LipfreeError(Err::OriginNotInterior, "polar requires the origin strictly inside");
  }
  HPolytope out;
  out.dim = p.dim;
  out.halfspaces.reserve(p.vertices.size());
  for (const Vec& v : p.vertices) {
    Halfspace hs{v, Rat(1)};
    canonicalize_halfspace(hs);
    out.halfspaces.push_back(std::move(hs));
  }
  return out;
}

std::vector<std::vector<int>> facet_vertex_incidence(const VPolytope& p, const HPolytope& h) {
  std::vector<std::vector<int>> incidence(h.halfspaces.size());
  for (std::size_t i = 0; i < h.halfspaces.size(); ++i) {
    for (std::size_t j = 0; j < p.vertices.size(); ++j) {
      Rat s = dot(h.halfspaces[i].normal, p.vertices[j]);
      if (s > h.halfspaces[i].offset) {
        throw LipfreeError(Err::DimensionMismatch,
                           "representations disagree: vertex violates a halfspace");
      }
      if (s == h.halfspaces[i].offset) incidence[i].push_back(static_cast<int>(j));
    }
  }
  return incidence;
}

namespace {

// Recursive fan triangulation of a face given by its vertex indices; the apex
// is the lexicographically smallest vertex, the opposite subfaces are cut out
// by the remaining halfspaces. Memoized across facets (subfaces are shared).
struct Triangulator {
  const VPolytope& p;
  const HPolytope& h;
  std::map<std::vector<int>, std::vector<std::vector<int>>> memo;

  const std::vector<std::vector<int>>& triangulate(const std::vector<int>& face, int k) {
    auto it = memo.find(face);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<int>> simplices;
    if (static_cast<int>(face.size()) == k + 1) {
      simplices.push_back(face);
    } else {
      int apex = face[0];
      for (int v : face) {
        if (lex_less(p.vertices[v], p.vertices[apex])) apex = v;
      }
      std::set<std::vector<int>> children;
      for (std::size_t j = 0; j < h.halfspaces.size(); ++j) {
        std::vector<int> sub;
        bool apex_in = false;
        for (int v : face) {
          if (dot(h.halfspaces[j].normal, p.vertices[v]) == h.halfspaces[j].offset) {
            sub.push_back(v);
            if (v == apex) apex_in = true;
          }
        }
        if (apex_in || sub.empty() || sub.size() == face.size()) continue;
        std::vector<Vec> coords;
        coords.reserve(sub.size());
        for (int v : sub) coords.push_back(p.vertices[v]);
        if (affine_rank(coords) != k - 1) continue;
        children.insert(std::move(sub));
      }
      for (const std::vector<int>& child : children) {
        for (const std::vector<int>& s : triangulate(child, k - 1)) {
          std::vector<int> withApex;
          withApex.reserve(s.size() + 1);
          withApex.push_back(apex);
          withApex.insert(withApex.end(), s.begin(), s.end());
          simplices.push_back(std::move(withApex));
        }
      }
      if (simplices.empty()) {
        throw LipfreeError(Err::Internal, "face triangulation produced no simplices");
      }
    }
    return memo.emplace(face, std::move(simplices)).first->second;
  }
};

void check_same_polytope(const VPolytope& p, const HPolytope& h,
                         const std::vector<std::vector<int>>& incidence) {
  if (p.dim != h.dim) throw LipfreeError(Err::DimensionMismatch, "dimension mismatch between representations");
  const int n = p.dim;
  for (const Halfspace& hs : h.halfspaces) {
    if (hs.offset <= 0) throw LipfreeError(Err::OriginNotInterior, "origin not interior (offset <= 0)");
  }
  std::vector<int> tight_count(p.vertices.size(), 0);
  for (std::size_t i = 0; i < incidence.size(); ++i) {
    std::vector<Vec> coords;
    for (int v : incidence[i]) coords.push_back(p.vertices[v]);
    if (coords.empty() || affine_rank(coords) != n - 1) {
      throw LipfreeError(Err::DimensionMismatch, "halfspace does not support a facet");
    }
    for (int v : incidence[i]) ++tight_count[v];
  }
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    if (tight_count[v] < n) {
      throw LipfreeError(Err::DimensionMismatch, "listed point is not a vertex of the H-polytope");
    }
  }
}

}  // namespace

std::vector<Rat> facet_cone_volumes(const VPolytope& p, const HPolytope& h) {
  auto incidence = facet_vertex_incidence(p, h);
  check_same_polytope(p, h, incidence);
  const int n = p.dim;
  Triangulator tri{p, h, {}};
  Rat nfact(factorial(n));
  std::vector<Rat> cones;
  cones.reserve(h.halfspaces.size());
  for (std::size_t i = 0; i < h.halfspaces.size(); ++i) {
    Rat vol = 0;
    for (const std::vector<int>& s : tri.triangulate(incidence[i], n - 1)) {
      Mat rows;
      rows.reserve(n);
      for (int v : s) rows.push_back(p.vertices[v]);
      vol += rat_abs(determinant(std::move(rows)));
    }
    cones.push_back(vol / nfact);
  }
  return cones;
}

Rat volume(const VPolytope& p, const HPolytope& h) {
  Rat total = 0;
  for (const Rat& c : facet_cone_volumes(p, h)) total += c;
  return total;
}

Rat zonotope_volume(const std::vector<Vec>& generators) {
  if (generators.empty()) throw LipfreeError(Err::EmptyInput, "no generators");
  check_uniform_dim(generators);
  const std::size_t n = generators[0].size();
  const std::size_t m = generators.size();
  if (m < n) throw LipfreeError(Err::TooFewGenerators, "need at least dim generators");
  Rat total = 0;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    Mat rows;
    rows.reserve(n);
    for (std::size_t i : idx) rows.push_back(generators[i]);
    total += rat_abs(determinant(std::move(rows)));
    // next n-combination of {0..m-1}
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == m - n + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t i = k; i < n; ++i) idx[i] = idx[i - 1] + 1;
  }
  return total;
}

FaceQueryResult face_containing(const VPolytope& p, const HPolytope& h, const Vec& x) {
  if (static_cast<int>(x.size()) != p.dim) {
    throw LipfreeError(Err::DimensionMismatch, "query point has wrong dimension");
  }
  std::vector<int> tight;
  for (std::size_t i = 0; i < h.halfspaces.size(); ++i) {
    Rat s = dot(h.halfspaces[i].normal, x);
    if (s > h.halfspaces[i].offset) {
      throw LipfreeError(Err::PointNotOnBoundary, "point lies outside the polytope");
    }
    if (s == h.halfspaces[i].offset) tight.push_back(static_cast<int>(i));
  }
  if (tight.empty()) {
    throw LipfreeError(Err::PointNotOnBoundary, "point lies in the interior");
  }
  FaceQueryResult res;
  res.supporting_facets = tight;
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    bool on_all = true;
    for (int i : tight) {
      if (dot(h.halfspaces[i].normal, p.vertices[v]) != h.halfspaces[i].offset) {
        on_all = false;
        break;
      }
    }
    if (on_all) res.vertex_indices.push_back(static_cast<int>(v));
  }
  std::vector<Vec> coords;
  for (int v : res.vertex_indices) coords.push_back(p.vertices[v]);
  res.dimension = coords.empty() ? 0 : affine_rank(coords);
  return res;
}

bool is_simplicial(const VPolytope& p, const HPolytope& h) {
  for (const std::vector<int>& inc : facet_vertex_incidence(p, h)) {
    if (static_cast<int>(inc.size()) != p.dim) return false;
  }
  return true;
}

MonteCarloVolume monte_carlo_volume(const HPolytope& h, std::uint64_t samples, std::uint64_t seed) {
  VPolytope verts = vertex_enumeration(h);  // also certifies boundedness
  const int n = h.dim;
  std::vector<double> lo(n), hi(n);
  for (int c = 0; c < n; ++c) {
    Rat mn = verts.vertices[0][c], mx = verts.vertices[0][c];
    for (const Vec& v : verts.vertices) {
      if (v[c] < mn) mn = v[c];
      if (v[c] > mx) mx = v[c];
    }
    lo[c] = rational_to_double(mn);
    hi[c] = rational_to_double(mx);
  }
  double box_vol = 1.0;
  for (int c = 0; c < n; ++c) box_vol *= (hi[c] - lo[c]);

  std::vector<std::vector<double>> a(h.halfspaces.size(), std::vector<double>(n));
  std::vector<double> b(h.halfspaces.size());
  for (std::size_t i = 0; i < h.halfspaces.size(); ++i) {
    for (int c = 0; c < n; ++c) a[i][c] = rational_to_double(h.halfspaces[i].normal[c]);
    b[i] = rational_to_double(h.halfspaces[i].offset);
  }

  std::mt19937_64 rng(seed);
  auto unit = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };  // uniform in [0,1)
  std::uint64_t hits = 0;
  std::vector<double> x(n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int c = 0; c < n; ++c) x[c] = lo[c] + unit() * (hi[c] - lo[c]);
    bool inside = true;
    for (std::size_t i = 0; i < a.size() && inside; ++i) {
      double dotv = 0.0;
      for (int c = 0; c < n; ++c) dotv += a[i][c] * x[c];
      if (dotv > b[i]) inside = false;
    }
    if (inside) ++hits;
  }
  double p_hat = samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0;
  MonteCarloVolume out;
  out.estimate = box_vol * p_hat;
  out.std_error = box_vol * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
  out.samples = samples;
  out.seed = seed;
  return out;
}

std::vector<std::vector<int>> enumerate_faces(const VPolytope& p, const HPolytope& h) {
  auto incidence = facet_vertex_incidence(p, h);
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> queue;
  for (auto& inc : incidence) {
    if (!inc.empty() && inc.size() < p.vertices.size() && seen.insert(inc).second) {
      queue.push_back(inc);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::vector<int> cur = queue[head];
    for (const auto& inc : incidence) {
      std::vector<int> meet;
      std::set_intersection(cur.begin(), cur.end(), inc.begin(), inc.end(),
                            std::back_inserter(meet));
      if (!meet.empty() && seen.insert(meet).second) queue.push_back(meet);
    }
  }
  return queue;
}

}  // namespace lipfree
