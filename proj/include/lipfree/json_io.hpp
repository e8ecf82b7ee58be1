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

#ifndef LIPFREE_JSON_IO_HPP
#define LIPFREE_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "lipfree/metric.hpp"
#include "lipfree/polytope.hpp"

namespace lipfree {

using Json = nlohmann::ordered_json;

// Rationals travel as "p/q" (or "p") strings; integer JSON numbers are also
// exact and accepted. Anything with a decimal point is rejected.
Rat rational_from_json(const Json& j);
Json rational_to_json(const Rat& r);

// Metric JSON: {"labels": [...], "root": 0, "distances": [["0","1",...],...]}.
MetricSpace metric_from_json(const Json& j);
Json metric_to_json(const MetricSpace& m);

// Graph JSON: {"n": 5, "edges": [{"u":0,"v":1,"w":"3/2"},...]}.
WeightedGraph graph_from_json(const Json& j);
Json graph_to_json(const WeightedGraph& g);

// Accepts either format; graphs are completed to their shortest-path metric.
MetricSpace metric_or_graph_from_json(const Json& j);

// Polytope JSON: {"dim": n, "vertices": [...]} or {"dim": n, "halfspaces":
// [{"a": [...], "b": "p/q"}, ...]}.
bool json_is_vpolytope(const Json& j);
VPolytope vpolytope_from_json(const Json& j);
HPolytope hpolytope_from_json(const Json& j);
Json vpolytope_to_json(const VPolytope& p);
Json hpolytope_to_json(const HPolytope& h);

Json load_json_file(const std::string& path);

}  // namespace lipfree

#endif  // LIPFREE_JSON_IO_HPP
