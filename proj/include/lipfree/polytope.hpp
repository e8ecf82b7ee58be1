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

#ifndef LIPFREE_POLYTOPE_HPP
#define LIPFREE_POLYTOPE_HPP

#include <cstdint>
#include <vector>

#include "lipfree/linalg.hpp"

namespace lipfree {

// Halfspace <normal, x> <= offset. The toolkit canonicalizes (normal, offset)
// to a primitive integer vector, so offset > 0 encodes "origin strictly inside".
struct Halfspace {
  Vec normal;
  Rat offset;
};

// Polytope by its exact vertex list. After reduce_to_vertices the listed
// points are precisely the extreme points, in lexicographic order.
struct VPolytope {
  int dim = 0;
  std::vector<Vec> vertices;
};

// Polytope by irredundant facet halfspaces (after reduce_to_facets).
struct HPolytope {
  int dim = 0;
  std::vector<Halfspace> halfspaces;
};

struct FaceQueryResult {
  int dimension = 0;
  std::vector<int> vertex_indices;     // into the VPolytope vertex list
  std::vector<int> supporting_facets;  // into the HPolytope halfspace list
};

struct MonteCarloVolume {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Extreme points of conv(points), deduplicated and sorted lexicographically.
VPolytope reduce_to_vertices(const std::vector<Vec>& points);

// Facet enumeration by double description on the homogenization cone.
// Requires a full-dimensional hull with the origin strictly inside.
HPolytope hull_to_hrep(const VPolytope& p);

// Vertex enumeration (reverse double description). Requires a bounded,
// full-dimensional input; redundant halfspaces are tolerated.
VPolytope vertex_enumeration(const HPolytope& h);

// Keeps exactly the facet-supporting halfspaces (round trip through both
// conversions), canonically ordered.
HPolytope reduce_to_facets(const HPolytope& h);

// Polar body {y : <v, y> <= 1 for all vertices v}, one halfspace per vertex,
// in vertex order. Requires the origin strictly inside.
HPolytope polar(const VPolytope& p);

bool origin_in_interior(const VPolytope& p);

// Exact Lebesgue volume by central triangulation: every facet is fanned from
// its lexicographically smallest vertex and coned to the origin. Both
// representations must describe the same full-dimensional polytope with the
// origin inside.
Rat volume(const VPolytope& p, const HPolytope& h);

// Per-facet cone volumes, in halfspace order; volume() is their sum.
std::vector<Rat> facet_cone_volumes(const VPolytope& p, const HPolytope& h);

// Volume of sum_i [0, u_i] as a sum of |det| over all n-subsets of generators.
Rat zonotope_volume(const std::vector<Vec>& generators);

// The face whose relative interior contains the boundary point x: the
// intersection of all facets tight at x.
FaceQueryResult face_containing(const VPolytope& p, const HPolytope& h, const Vec& x);

// True iff every facet has exactly dim vertices.
bool is_simplicial(const VPolytope& p, const HPolytope& h);

// Hit-or-miss estimate over the bounding box, deterministic for a fixed seed.
MonteCarloVolume monte_carlo_volume(const HPolytope& h, std::uint64_t samples, std::uint64_t seed);

// incidence[i] = indices of vertices lying on halfspace i.
std::vector<std::vector<int>> facet_vertex_incidence(const VPolytope& p, const HPolytope& h);

// All proper nonempty faces, each as a sorted vertex index set (the closure of
// the facet incidences under intersection).
std::vector<std::vector<int>> enumerate_faces(const VPolytope& p, const HPolytope& h);

}  // namespace lipfree

#endif  // LIPFREE_POLYTOPE_HPP
