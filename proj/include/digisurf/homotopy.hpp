#pragma once

// Contractible graphs and contractible transformations.
//
// A graph is contractible when some sequence of simple-point deletions takes
// it to K1; a point is simple when its rim is contractible. Recognition is a
// depth-first search over simple-point deletions, trying low-degree points
// first and memoizing verdicts by canonical key.

#include <algorithm>
#include <cstddef>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "digisurf/canonical.hpp"
#include "digisurf/cliques.hpp"
#include "digisurf/errors.hpp"
#include "digisurf/graph.hpp"

namespace digisurf {

/// Memo of contractibility verdicts keyed by canonical form. Inserts are
/// idempotent and internally locked, so one cache can serve several threads.
class ContractibilityCache {
 public:
  std::optional<bool> find(const CanonicalKey& key) const {
    std::lock_guard lock(mutex_);
    if (auto it = verdicts_.find(key); it != verdicts_.end()) return it->second;
    return std::nullopt;
  }

  void insert(const CanonicalKey& key, bool verdict) {
    std::lock_guard lock(mutex_);
    verdicts_.emplace(key, verdict);
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return verdicts_.size();
  }

 private:
  mutable std::mutex mutex_;
  std::unordered_map<CanonicalKey, bool, CanonicalKeyHash> verdicts_;
};

struct SearchOptions {
  /// Graphs with more points than this are refused with ResourceError.
  std::size_t max_points = 20;
  /// Shared memo; a private one is used per call when null.
  ContractibilityCache* cache = nullptr;
};

enum class Verdict { contractible, not_contractible };

struct ReductionStep {
  enum class Kind { point, edge };
  Kind kind = Kind::point;
  PointSet ids;  // one id for a point, two for an edge

  friend bool operator==(const ReductionStep&, const ReductionStep&) = default;
};

struct ReductionTrace {
  CanonicalKey start;
  Verdict verdict = Verdict::not_contractible;
  std::vector<ReductionStep> steps;
};

namespace detail {

class ContractibilitySearch {
 public:
  explicit ContractibilitySearch(const SearchOptions& opts)
      : max_points_(opts.max_points),
        cache_(opts.cache ? opts.cache : &local_) {}

  bool contractible(const DigitalGraph& g) { return solve(g, nullptr); }

  bool simple_point(const DigitalGraph& g, Index v) {
    return contractible(induced_by_indices(g, g.neighbors(v)));
  }

  // Fills `path` (point ids in deletion order) when the answer is true.
  bool solve(const DigitalGraph& g, std::vector<PointId>* path) {
    if (g.empty()) return false;
    if (g.size() == 1) return true;
    // Deleting a point never reconnects a graph, and K1 is connected.
    if (!is_connected(g)) return false;
    // Simple-point deletion changes χ by 1 − χ(rim) = 0, and χ(K1) = 1.
    if (euler_characteristic(g) != 1) return false;
    if (g.size() > max_points_) {
      throw ResourceError("contractibility search refused a graph with " +
                          std::to_string(g.size()) +
                          " points (cutoff " + std::to_string(max_points_) +
                          ")");
    }

    const CanonicalKey key = canonical_key(g);
    if (auto known = cache_->find(key)) {
      if (!*known || path == nullptr) return *known;
    }

    for (Index v : candidate_order(g)) {
      if (!simple_point(g, v)) continue;
      std::vector<Index> keep;
      keep.reserve(g.size() - 1);
      for (Index i = 0; i < g.size(); ++i) {
        if (i != v) keep.push_back(i);
      }
      const DigitalGraph rest = induced_by_indices(g, keep);
      if (path) path->push_back(g.name(v));
      if (solve(rest, path)) {
        cache_->insert(key, true);
        return true;
      }
      if (path) path->pop_back();
    }
    cache_->insert(key, false);
    return false;
  }

 private:
  // Lowest degree first, then by name.
  static std::vector<Index> candidate_order(const DigitalGraph& g) {
    std::vector<Index> order(g.size());
    for (Index i = 0; i < g.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      return g.degree(a) < g.degree(b);
    });
    return order;
  }

  std::size_t max_points_;
  ContractibilityCache local_;
  ContractibilityCache* cache_;
};

}  // namespace detail

/// True iff `g` reduces to K1 by simple-point deletions. The empty graph is
/// not contractible.
inline bool is_contractible(const DigitalGraph& g,
                            const SearchOptions& opts = {}) {
  return detail::ContractibilitySearch(opts).contractible(g);
}

inline bool is_simple_point(const DigitalGraph& g, std::string_view v,
                            const SearchOptions& opts = {}) {
  return is_contractible(rim(g, v), opts);
}

/// (u, v) must be an edge; it is simple when the joint rim is contractible.
inline bool is_simple_edge(const DigitalGraph& g, std::string_view u,
                           std::string_view v, const SearchOptions& opts = {}) {
  if (!g.adjacent(u, v)) {
    throw GraphError("{" + std::string(u) + ", " + std::string(v) +
                     "} is not an edge");
  }
  return is_contractible(joint_rim(g, u, v), opts);
}

/// A replayable witness of contractibility (simple-point deletions down to
/// K1), or a not-contractible verdict with no steps.
inline ReductionTrace reduction_trace(const DigitalGraph& g,
                                      const SearchOptions& opts = {}) {
  ReductionTrace trace;
  trace.start = canonical_key(g);
  std::vector<PointId> path;
  if (detail::ContractibilitySearch(opts).solve(g, &path)) {
    trace.verdict = Verdict::contractible;
    for (auto& id : path) {
      trace.steps.push_back({ReductionStep::Kind::point, {std::move(id)}});
    }
  }
  return trace;
}

/// Replays `trace` on `g`, checking that every deletion is simple at its
/// turn. Returns the final graph.
inline DigitalGraph replay_reduction(const DigitalGraph& g,
                                     const ReductionTrace& trace,
                                     const SearchOptions& opts = {}) {
  DigitalGraph cur = g;
  for (const auto& step : trace.steps) {
    if (step.kind == ReductionStep::Kind::point) {
      if (step.ids.size() != 1) throw GraphError("point step needs one id");
      if (!is_simple_point(cur, step.ids[0], opts)) {
        throw GraphError("point '" + step.ids[0] + "' is not simple");
      }
      cur = delete_points(cur, {step.ids[0]});
    } else {
      if (step.ids.size() != 2) throw GraphError("edge step needs two ids");
      if (!is_simple_edge(cur, step.ids[0], step.ids[1], opts)) {
        throw GraphError("edge {" + step.ids[0] + ", " + step.ids[1] +
                         "} is not simple");
      }
      cur = edit_edge(cur, step.ids[0], step.ids[1], EdgeEdit::remove);
    }
  }
  return cur;
}

/// Glues a new point adjacent exactly to `rim_set`, which must induce a
/// contractible subgraph.
inline DigitalGraph attach_simple_point(const DigitalGraph& g,
                                        const PointId& name,
                                        const PointSet& rim_set,
                                        const SearchOptions& opts = {}) {
  if (g.contains(name)) {
    throw GraphError("point '" + name + "' already exists");
  }
  if (!is_contractible(induced_subgraph(g, rim_set), opts)) {
    throw GraphError("rim set of '" + name +
                     "' is not contractible; attachment would not be a "
                     "contractible transformation");
  }
  PointSet points = g.points();
  points.push_back(name);
  auto edges = g.edges();
  for (const auto& r : rim_set) edges.emplace_back(name, r);
  return DigitalGraph(std::move(points), edges);
}

/// Adds the edge (u, v) between non-adjacent points with a contractible joint
/// rim.
inline DigitalGraph attach_simple_edge(const DigitalGraph& g, std::string_view u,
                                       std::string_view v,
                                       const SearchOptions& opts = {}) {
  if (g.adjacent(u, v)) {
    throw GraphError("{" + std::string(u) + ", " + std::string(v) +
                     "} is already an edge");
  }
  if (!is_contractible(joint_rim(g, u, v), opts)) {
    throw GraphError("joint rim of {" + std::string(u) + ", " +
                     std::string(v) + "} is not contractible");
  }
  return edit_edge(g, u, v, EdgeEdit::add);
}

inline nlohmann::ordered_json trace_to_json(const ReductionTrace& trace) {
  nlohmann::ordered_json j;
  j["verdict"] = trace.verdict == Verdict::contractible ? "contractible"
                                                        : "not-contractible";
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : trace.steps) {
    nlohmann::ordered_json js;
    if (s.kind == ReductionStep::Kind::point) {
      js["kind"] = "point";
      js["id"] = s.ids.at(0);
    } else {
      js["kind"] = "edge";
      js["ids"] = s.ids;
    }
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  return j;
}

}  // namespace digisurf
