#pragma once

// Finite simple undirected graphs with named points, and the structural
// operations used by the rest of the library (rim, ball, join, ...).
//
// A DigitalGraph is an immutable value. Points are kept in lexicographic
// order and identified internally by their rank, so index-based loops and
// name-based lookups agree. Every operation returns a new graph.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "digisurf/errors.hpp"

namespace digisurf {

using PointId = std::string;
using PointSet = std::vector<PointId>;
using Edge = std::pair<PointId, PointId>;
using Index = std::uint32_t;

class DigitalGraph {
 public:
  DigitalGraph() = default;

  /// Builds a graph from point names and an edge list. Throws GraphError on
  /// duplicate names, self-loops, unknown endpoints or duplicate edges.
  DigitalGraph(PointSet points, const std::vector<Edge>& edges) {
    std::sort(points.begin(), points.end());
    if (auto dup = std::adjacent_find(points.begin(), points.end());
        dup != points.end()) {
      throw GraphError("duplicate point identifier '" + *dup + "'");
    }
    names_ = std::move(points);
    adj_.assign(names_.size(), {});
    for (const auto& [u, v] : edges) {
      if (u == v) throw GraphError("self-loop on point '" + u + "'");
      const Index a = require(u);
      const Index b = require(v);
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      auto& row = adj_[i];
      std::sort(row.begin(), row.end());
      if (auto dup = std::adjacent_find(row.begin(), row.end());
          dup != row.end()) {
        throw GraphError("duplicate edge {" + names_[i] + ", " +
                         names_[*dup] + "}");
      }
      edge_count_ += row.size();
    }
    edge_count_ /= 2;
  }

  /// Trusted constructor: `names` sorted and unique, `adj` symmetric with
  /// sorted rows and no self-loops.
  static DigitalGraph from_sorted(std::vector<PointId> names,
                                  std::vector<std::vector<Index>> adj) {
    assert(names.size() == adj.size());
    assert(std::is_sorted(names.begin(), names.end()));
    DigitalGraph g;
    g.names_ = std::move(names);
    g.adj_ = std::move(adj);
    for (const auto& row : g.adj_) g.edge_count_ += row.size();
    g.edge_count_ /= 2;
    return g;
  }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  std::size_t edge_count() const { return edge_count_; }

  const std::vector<PointId>& points() const { return names_; }
  const PointId& name(Index i) const { return names_[i]; }

  std::optional<Index> index_of(std::string_view id) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), id);
    if (it == names_.end() || *it != id) return std::nullopt;
    return static_cast<Index>(it - names_.begin());
  }

  bool contains(std::string_view id) const { return index_of(id).has_value(); }

  /// Index of `id`; throws GraphError naming the point if it is absent.
  Index require(std::string_view id) const {
    if (auto i = index_of(id)) return *i;
    throw GraphError("unknown point '" + std::string(id) + "'");
  }

  const std::vector<Index>& neighbors(Index i) const { return adj_[i]; }
  std::size_t degree(Index i) const { return adj_[i].size(); }

  bool adjacent(Index i, Index j) const {
    const auto& row = adj_[i];
    return std::binary_search(row.begin(), row.end(), j);
  }
  bool adjacent(std::string_view u, std::string_view v) const {
    return adjacent(require(u), require(v));
  }

  /// Edges with endpoints ordered, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Index i = 0; i < adj_.size(); ++i) {
      for (Index j : adj_[i]) {
        if (i < j) out.emplace_back(names_[i], names_[j]);
      }
    }
    return out;
  }

  const std::vector<std::vector<Index>>& adjacency() const { return adj_; }

  /// Labeled equality: same names and same edges.
  friend bool operator==(const DigitalGraph&, const DigitalGraph&) = default;

 private:
  std::vector<PointId> names_;
  std::vector<std::vector<Index>> adj_;
  std::size_t edge_count_ = 0;
};

/// Induced subgraph on a sorted, duplicate-free list of indices.
inline DigitalGraph induced_by_indices(const DigitalGraph& g,
                                       const std::vector<Index>& keep) {
  assert(std::is_sorted(keep.begin(), keep.end()));
  constexpr Index kAbsent = ~Index{0};
  std::vector<Index> remap(g.size(), kAbsent);
  for (Index k = 0; k < keep.size(); ++k) remap[keep[k]] = k;
  std::vector<PointId> names;
  names.reserve(keep.size());
  std::vector<std::vector<Index>> adj(keep.size());
  for (Index k = 0; k < keep.size(); ++k) {
    names.push_back(g.name(keep[k]));
    for (Index j : g.neighbors(keep[k])) {
      if (remap[j] != kAbsent) adj[k].push_back(remap[j]);
    }
  }
  return DigitalGraph::from_sorted(std::move(names), std::move(adj));
}

namespace detail {

inline std::vector<Index> indices_of(const DigitalGraph& g, const PointSet& s) {
  std::vector<Index> idx;
  idx.reserve(s.size());
  for (const auto& p : s) idx.push_back(g.require(p));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

}  // namespace detail

/// Induced subgraph on `s`. Throws GraphError if `s` names an unknown point.
inline DigitalGraph induced_subgraph(const DigitalGraph& g, const PointSet& s) {
  return induced_by_indices(g, detail::indices_of(g, s));
}

/// The rim O(v): induced subgraph on the neighbours of v, v excluded.
inline DigitalGraph rim(const DigitalGraph& g, std::string_view v) {
  return induced_by_indices(g, g.neighbors(g.require(v)));
}

/// The ball U(v) = v joined with its rim.
inline DigitalGraph ball(const DigitalGraph& g, std::string_view v) {
  const Index i = g.require(v);
  std::vector<Index> keep = g.neighbors(i);
  keep.insert(std::upper_bound(keep.begin(), keep.end(), i), i);
  return induced_by_indices(g, keep);
}

/// Common neighbours of two distinct points, sorted.
inline std::vector<Index> common_neighbors(const DigitalGraph& g, Index u,
                                           Index v) {
  std::vector<Index> out;
  std::set_intersection(g.neighbors(u).begin(), g.neighbors(u).end(),
                        g.neighbors(v).begin(), g.neighbors(v).end(),
                        std::back_inserter(out));
  return out;
}

/// The joint rim O(uv) = O(u) ∩ O(v).
inline DigitalGraph joint_rim(const DigitalGraph& g, std::string_view u,
                              std::string_view v) {
  const Index a = g.require(u);
  const Index b = g.require(v);
  if (a == b) throw GraphError("joint rim needs two distinct points");
  return induced_by_indices(g, common_neighbors(g, a, b));
}

/// G ⊕ H: disjoint union plus every edge between G and H.
inline DigitalGraph join(const DigitalGraph& g, const DigitalGraph& h) {
  std::vector<PointId> clash;
  std::set_intersection(g.points().begin(), g.points().end(),
                        h.points().begin(), h.points().end(),
                        std::back_inserter(clash));
  if (!clash.empty()) {
    std::string msg = "join operands share point identifiers:";
    for (const auto& c : clash) msg += " '" + c + "'";
    throw GraphError(msg);
  }
  PointSet points = g.points();
  points.insert(points.end(), h.points().begin(), h.points().end());
  std::vector<Edge> edges = g.edges();
  auto he = h.edges();
  edges.insert(edges.end(), he.begin(), he.end());
  for (const auto& a : g.points()) {
    for (const auto& b : h.points()) edges.emplace_back(a, b);
  }
  return DigitalGraph(std::move(points), edges);
}

/// G − S.
inline DigitalGraph delete_points(const DigitalGraph& g, const PointSet& s) {
  const auto drop = detail::indices_of(g, s);
  std::vector<Index> keep;
  keep.reserve(g.size() - drop.size());
  for (Index i = 0, d = 0; i < g.size(); ++i) {
    if (d < drop.size() && drop[d] == i) {
      ++d;
    } else {
      keep.push_back(i);
    }
  }
  return induced_by_indices(g, keep);
}

enum class EdgeEdit { add, remove };

/// Adds or removes the single edge {u, v}. Adding a present edge or removing
/// an absent one is an error.
inline DigitalGraph edit_edge(const DigitalGraph& g, std::string_view u,
                              std::string_view v, EdgeEdit mode) {
  const Index a = g.require(u);
  const Index b = g.require(v);
  if (a == b) throw GraphError("edge endpoints must differ");
  const bool present = g.adjacent(a, b);
  if (mode == EdgeEdit::add && present) {
    throw GraphError("edge {" + std::string(u) + ", " + std::string(v) +
                     "} already present");
  }
  if (mode == EdgeEdit::remove && !present) {
    throw GraphError("edge {" + std::string(u) + ", " + std::string(v) +
                     "} not present");
  }
  auto adj = g.adjacency();
  auto toggle = [&](Index x, Index y) {
    auto& row = adj[x];
    auto it = std::lower_bound(row.begin(), row.end(), y);
    if (mode == EdgeEdit::add) {
      row.insert(it, y);
    } else {
      row.erase(it);
    }
  };
  toggle(a, b);
  toggle(b, a);
  return DigitalGraph::from_sorted(g.points(), std::move(adj));
}

/// Connectivity. The empty graph counts as connected.
inline bool is_connected(const DigitalGraph& g) {
  if (g.size() <= 1) return true;
  std::vector<char> seen(g.size(), 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    for (Index w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == g.size();
}

// Small named graphs used throughout the tests and the surface zoo.

/// Complete graph on the given points.
inline DigitalGraph complete_graph(const PointSet& points) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      edges.emplace_back(points[i], points[j]);
    }
  }
  return DigitalGraph(points, edges);
}

/// Edgeless graph on the given points.
inline DigitalGraph discrete_graph(const PointSet& points) {
  return DigitalGraph(points, {});
}

/// Cycle through the points in the given order.
inline DigitalGraph cycle_graph(const PointSet& points) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < points.size(); ++i) {
    edges.emplace_back(points[i], points[(i + 1) % points.size()]);
  }
  return DigitalGraph(points, edges);
}

/// Path through the points in the given order.
inline DigitalGraph path_graph(const PointSet& points) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    edges.emplace_back(points[i], points[i + 1]);
  }
  return DigitalGraph(points, edges);
}

/// S⁰(a, b): two non-adjacent points.
inline DigitalGraph zero_sphere(const PointId& a, const PointId& b) {
  return discrete_graph({a, b});
}

}  // namespace digisurf
