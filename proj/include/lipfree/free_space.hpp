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

#ifndef LIPFREE_FREE_SPACE_HPP
#define LIPFREE_FREE_SPACE_HPP

#include <set>
#include <utility>
#include <vector>

#include "lipfree/metric.hpp"
#include "lipfree/polytope.hpp"

namespace lipfree {

// The vector (e_i - e_j) / d(i,j), with the root sent to the origin.
struct Molecule {
  int i;
  int j;
  Vec coords;
};

// The free-space ball B(M) = conv of the edge molecules, together with the
// dual (Lipschitz) ball. vrep/hrep are mutually polar; lip_vertices and
// free_facets are the derived representations of the same pair.
struct FreeBallModel {
  MetricSpace metric;
  WeightedGraph graph;
  VPolytope vrep;                                 // free ball vertices
  HPolytope hrep;                                 // Lipschitz ball halfspaces = polar(vrep)
  VPolytope lip_vertices;                         // Lipschitz ball vertices
  HPolytope free_facets;                          // free ball facets
  std::vector<std::pair<int, int>> vertex_labels; // vrep vertex -> ordered pair (i, j)
};

struct FreeBallOptions {
  // Build the hull from all n(n+1) molecules via reduce_to_vertices instead of
  // trusting the canonical-edge description; oracle tests use this path.
  bool use_all_molecules = false;
  // With all-integer distances, assert that every Lipschitz-ball vertex is
  // integral (they always are; cheap cross-check).
  bool lattice_check = true;
};

// Weighted incidence matrix: column for the oriented edge e is the molecule
// m_e, so the kernel is the cycle space of the canonical graph.
struct BoundaryOperator {
  WeightedGraph graph;
  Mat matrix;              // dim x |E|
  std::vector<Vec> cycle_basis;  // kernel vectors, entries indexed by edges
};

// All n(n+1) ordered molecules, (i, j) in row-major order.
std::vector<Molecule> molecules(const MetricSpace& m);

FreeBallModel free_ball(const MetricSpace& m, const FreeBallOptions& opts = {});

// True iff no third point k splits d(i,j) = d(i,k) + d(k,j); equivalently,
// m_{i,j} is a vertex of the free ball.
bool is_extreme(const MetricSpace& m, int i, int j);

// Dimension of the face whose relative interior contains m_{i,j}:
// |[i,j]| - 2, the number of interior points of the metric segment.
int face_dimension(const MetricSpace& m, int i, int j);

// Ordered pairs (u, v) with d(i,j) = d(i,u) + d(u,v) + d(v,j); their molecules
// span the face containing m_{i,j}.
std::set<std::pair<int, int>> face_of_molecule_vertices(const MetricSpace& m, int i, int j);

// Boundary operator over the canonical edges, with the fundamental-cycle basis
// of the lexicographically smallest spanning tree.
BoundaryOperator boundary_operator(const MetricSpace& m);

// Quotient norm: min sum |t_e| over exact solutions of (boundary op) t = phi,
// solved as an exact LP on the split t = t+ - t-.
Rat free_norm(const MetricSpace& m, const Vec& phi);

// conv{(e_i - e_j)/d(i,j)} over all pairs in R^(n+1), projected along the root
// coordinate; coincides with the free ball.
VPolytope fundamental_polytope(const MetricSpace& m);

// Convenience: molecule coordinates for the ordered pair (i, j).
Vec molecule_coords(const MetricSpace& m, int i, int j);

}  // namespace lipfree

#endif  // LIPFREE_FREE_SPACE_HPP
