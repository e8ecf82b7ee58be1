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

#include "lipfree/json_io.hpp"

#include <fstream>

#include "lipfree/errors.hpp"

namespace lipfree {

Rat rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_float()) {
    throw LipfreeError(Err::ParseError, "decimal numbers are rejected; use \"p/q\" strings");
  }
  throw LipfreeError(Err::ParseError, "expected a rational as string or integer");
}

Json rational_to_json(const Rat& r) { return rational_to_string(r); }

MetricSpace metric_from_json(const Json& j) {
  if (!j.contains("labels") || !j.contains("distances")) {
    throw LipfreeError(Err::ParseError, "metric JSON needs \"labels\" and \"distances\"");
  }
  std::vector<std::string> labels;
  for (const Json& l : j.at("labels")) labels.push_back(l.get<std::string>());
  std::vector<std::vector<Rat>> dist;
  for (const Json& row : j.at("distances")) {
    std::vector<Rat> r;
    for (const Json& x : row) r.push_back(rational_from_json(x));
    dist.push_back(std::move(r));
  }
  int root = j.value("root", 0);
  return validate_metric(labels, dist, root);
}

Json metric_to_json(const MetricSpace& m) {
  Json j;
  j["labels"] = m.labels;
  j["root"] = m.root;
  Json rows = Json::array();
  for (const auto& row : m.dist) {
    Json r = Json::array();
    for (const Rat& x : row) r.push_back(rational_to_json(x));
    rows.push_back(std::move(r));
  }
  j["distances"] = std::move(rows);
  return j;
}

WeightedGraph graph_from_json(const Json& j) {
  if (!j.contains("n") || !j.contains("edges")) {
    throw LipfreeError(Err::ParseError, "graph JSON needs \"n\" and \"edges\"");
  }
  WeightedGraph g;
  g.vertex_count = j.at("n").get<int>();
  for (const Json& e : j.at("edges")) {
    GraphEdge edge;
    edge.u = e.at("u").get<int>();
    edge.v = e.at("v").get<int>();
    if (edge.u > edge.v) std::swap(edge.u, edge.v);
    edge.w = rational_from_json(e.at("w"));
    g.edges.push_back(std::move(edge));
  }
  std::sort(g.edges.begin(), g.edges.end(),
            [](const GraphEdge& a, const GraphEdge& b) {
              return std::pair(a.u, a.v) < std::pair(b.u, b.v);
            });
  return g;
}

Json graph_to_json(const WeightedGraph& g) {
  Json j;
  j["n"] = g.vertex_count;
  Json edges = Json::array();
  for (const GraphEdge& e : g.edges) {
    edges.push_back(Json{{"u", e.u}, {"v", e.v}, {"w", rational_to_json(e.w)}});
  }
  j["edges"] = std::move(edges);
  return j;
}

MetricSpace metric_or_graph_from_json(const Json& j) {
  if (j.contains("distances")) return metric_from_json(j);
  if (j.contains("edges")) return from_weighted_graph(graph_from_json(j));
  throw LipfreeError(Err::ParseError, "input is neither metric nor graph JSON");
}

bool json_is_vpolytope(const Json& j) { return j.contains("vertices"); }

VPolytope vpolytope_from_json(const Json& j) {
  VPolytope p;
  p.dim = j.at("dim").get<int>();
  for (const Json& row : j.at("vertices")) {
    Vec v;
    for (const Json& x : row) v.push_back(rational_from_json(x));
    if (static_cast<int>(v.size()) != p.dim) {
      throw LipfreeError(Err::ParseError, "vertex has wrong dimension");
    }
    p.vertices.push_back(std::move(v));
  }
  return p;
}

HPolytope hpolytope_from_json(const Json& j) {
  HPolytope h;
  h.dim = j.at("dim").get<int>();
  for (const Json& row : j.at("halfspaces")) {
    Halfspace hs;
    for (const Json& x : row.at("a")) hs.normal.push_back(rational_from_json(x));
    hs.offset = rational_from_json(row.at("b"));
    if (static_cast<int>(hs.normal.size()) != h.dim) {
      throw LipfreeError(Err::ParseError, "halfspace normal has wrong dimension");
    }
    h.halfspaces.push_back(std::move(hs));
  }
  return h;
}

Json vpolytope_to_json(const VPolytope& p) {
  Json j;
  j["dim"] = p.dim;
  Json verts = Json::array();
  for (const Vec& v : p.vertices) {
    Json row = Json::array();
    for (const Rat& x : v) row.push_back(rational_to_json(x));
    verts.push_back(std::move(row));
  }
  j["vertices"] = std::move(verts);
  return j;
}

Json hpolytope_to_json(const HPolytope& h) {
  Json j;
  j["dim"] = h.dim;
  Json rows = Json::array();
  for (const Halfspace& hs : h.halfspaces) {
    Json a = Json::array();
    for (const Rat& x : hs.normal) a.push_back(rational_to_json(x));
    rows.push_back(Json{{"a", std::move(a)}, {"b", rational_to_json(hs.offset)}});
  }
  j["halfspaces"] = std::move(rows);
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LipfreeError(Err::ParseError, "cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw LipfreeError(Err::ParseError, std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

}  // namespace lipfree
