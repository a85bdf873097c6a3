#pragma once

// Graph JSON and DOT serialization.
//
// JSON layout (compact, keys in this order, points sorted, each edge with
// sorted endpoints, edge list sorted):
//   {"points":["a","b","c"],"edges":[["a","b"],["b","c"]]}

#include <sstream>
#include <string>

#include "json.hpp"

#include "digisurf/errors.hpp"
#include "digisurf/graph.hpp"

namespace digisurf {

inline nlohmann::ordered_json graph_to_json(const DigitalGraph& g) {
  nlohmann::ordered_json j;
  j["points"] = g.points();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j;
}

inline std::string graph_to_json_string(const DigitalGraph& g) {
  return graph_to_json(g).dump();
}

template <typename Json>
DigitalGraph graph_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j.contains("edges")) {
    throw ParseError("graph JSON must be an object with 'points' and 'edges'");
  }
  const auto& jp = j.at("points");
  const auto& je = j.at("edges");
  if (!jp.is_array() || !je.is_array()) {
    throw ParseError("graph JSON 'points' and 'edges' must be arrays");
  }
  PointSet points;
  for (const auto& p : jp) {
    if (!p.is_string()) throw ParseError("point identifiers must be strings");
    points.push_back(p.template get<std::string>());
  }
  std::vector<Edge> edges;
  for (const auto& e : je) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
        !e[1].is_string()) {
      throw ParseError("each edge must be a pair of point identifiers");
    }
    edges.emplace_back(e[0].template get<std::string>(),
                       e[1].template get<std::string>());
  }
  try {
    return DigitalGraph(std::move(points), edges);
  } catch (const GraphError& err) {
    throw ParseError(std::string("invalid graph: ") + err.what());
  }
}

inline DigitalGraph graph_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(std::string("malformed JSON: ") + err.what());
  }
  return graph_from_json(j);
}

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace detail

/// Undirected DOT graph; nodes are named by their point identifiers and carry
/// no attributes.
inline std::string graph_to_dot(const DigitalGraph& g) {
  std::ostringstream out;
  out << "graph {\n";
  for (const auto& p : g.points()) out << "  " << detail::dot_quote(p) << ";\n";
  for (const auto& [u, v] : g.edges()) {
    out << "  " << detail::dot_quote(u) << " -- " << detail::dot_quote(v)
        << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace digisurf
