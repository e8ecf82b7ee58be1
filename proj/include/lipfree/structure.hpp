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

#ifndef LIPFREE_STRUCTURE_HPP
#define LIPFREE_STRUCTURE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lipfree/free_space.hpp"
#include "lipfree/metric.hpp"

namespace lipfree {

// Biconnected (block) decomposition. Component 0 contains the root; every
// later component is glued onto the space built so far at `attach_label`,
// which is also that component's root.
struct Decomposition {
  std::vector<MetricSpace> components;
  std::vector<std::string> attach_labels;  // per component; [0] is the global root label

  // Re-glues the components in recorded order; equals the original space up to
  // the deterministic relabeling of diamond().
  MetricSpace reassemble() const;
};

struct ClassificationReport {
  int dim = 0;
  bool is_tree = false;
  bool is_spiderweb = false;
  bool is_hanner = false;
  bool free_ball_is_zonotope = false;
  bool lip_ball_zonoid_4pt = false;
  bool linfty_decomposable = false;
  int component_count = 0;
};

// A centrally symmetric face of the free ball, dimension >= 2, matched against
// one of the two templates: (a) four molecules on four points with equal
// distances, or (b) the midpoint fan of a pair (x, y).
struct SymmetricFace {
  std::vector<int> vertex_indices;  // into the model's vrep
  int dimension = 0;
  char type = '?';                  // 'a' or 'b'
  int x = -1, y = -1;               // defining pair: (x,y) of template (a) or (b)
  int u = -1, v = -1;               // remaining pair of template (a)
};

struct IsometryWitness {
  // sigma[e] = index of the image edge in the other graph's edge list.
  std::vector<int> sigma;
  std::vector<int> signs;             // per edge, +-1: T(m_e) = sign * m'_{sigma(e)}
  std::vector<Rat> component_ratios;  // per biconnected component of the source
  std::vector<std::vector<int>> components;  // source edge indices per component
};

struct NotIsometric {
  std::string reason;
};

using IsometryResult = std::variant<IsometryWitness, NotIsometric>;

Decomposition decompose(const MetricSpace& m);

// n = 1, or the canonical graph is K_{2, n-1} with all weights equal.
bool is_spiderweb(const MetricSpace& m);

// Every biconnected component is a spiderweb (free ball is a Hanner polytope).
bool is_hanner(const MetricSpace& m);

bool is_tree(const MetricSpace& m);

// n <= 2, or n = 3 with an equal-weight 4-cycle as canonical graph.
bool free_ball_is_zonotope(const MetricSpace& m);

// Four-point condition: among the three pairing sums of every quadruple, the
// two largest coincide (exact tree embeddability; makes the dual ball a zonoid).
bool satisfies_four_point_condition(const MetricSpace& m);

// For n >= 3 this is equivalent to being a spiderweb.
bool linfty_decomposable(const MetricSpace& m);

ClassificationReport classify(const MetricSpace& m);

// All centrally symmetric faces of dimension >= 2 of the free ball.
std::vector<SymmetricFace> symmetric_faces(const FreeBallModel& model);
std::vector<SymmetricFace> symmetric_faces(const MetricSpace& m);

// Decides whether the free spaces are isometric: edge bijection carrying
// cycles to cycles with a constant weight ratio on each 2-connected component.
IsometryResult isometry_check(const MetricSpace& m1, const MetricSpace& m2,
                              int budget_edges_per_component = 12);

// Applies the witness map T (determined by a spanning tree) to every vertex of
// the first free ball and checks the image is exactly the second vertex set.
bool verify_isometry_witness(const MetricSpace& m1, const MetricSpace& m2,
                             const IsometryWitness& witness);

}  // namespace lipfree

#endif  // LIPFREE_STRUCTURE_HPP
