#pragma once

// Digital 1- and 2-manifolds: recognition, simple pairs, contraction,
// compression and digital weight, plus a small zoo of canonical surfaces.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "digisurf/canonical.hpp"
#include "digisurf/cliques.hpp"
#include "digisurf/errors.hpp"
#include "digisurf/graph.hpp"

namespace digisurf {

/// S⁰: exactly two points and no edge.
inline bool is_digital_0_sphere(const DigitalGraph& g) {
  return g.size() == 2 && g.edge_count() == 0;
}

/// Connected, every point of degree two, at least four points.
inline bool is_chordless_cycle(const DigitalGraph& g) {
  if (g.size() < 4 || g.edge_count() != g.size()) return false;
  for (Index v = 0; v < g.size(); ++v) {
    if (g.degree(v) != 2) return false;
  }
  return is_connected(g);
}

namespace detail {

// Digital 1-manifold by definition: connected and every rim is S⁰.
inline bool rims_are_zero_spheres(const DigitalGraph& g) {
  if (g.empty() || !is_connected(g)) return false;
  for (Index v = 0; v < g.size(); ++v) {
    if (!is_digital_0_sphere(induced_by_indices(g, g.neighbors(v)))) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Finite digital 1-manifolds are 1-spheres. Checked both by the rim
/// definition and as a chordless cycle; the two must agree.
inline bool is_digital_1_sphere(const DigitalGraph& g) {
  const bool by_rims = detail::rims_are_zero_spheres(g);
  const bool by_cycle = is_chordless_cycle(g);
  if (by_rims != by_cycle) {
    throw std::logic_error("1-sphere characterizations disagree");
  }
  return by_rims;
}

enum class RimVerdict { zero_sphere, one_sphere, other };
enum class SphereVerdict { yes, no, unknown };

struct ManifoldReport {
  /// 0, 1 or 2; empty when the graph is not a digital manifold.
  std::optional<int> dimension;
  SphereVerdict is_sphere = SphereVerdict::no;
  std::vector<std::pair<PointId, RimVerdict>> witnesses;
};

inline std::string to_string(RimVerdict v) {
  switch (v) {
    case RimVerdict::zero_sphere: return "S0";
    case RimVerdict::one_sphere: return "1-sphere";
    case RimVerdict::other: return "other";
  }
  return "other";
}

inline std::string to_string(SphereVerdict v) {
  switch (v) {
    case SphereVerdict::yes: return "sphere";
    case SphereVerdict::no: return "not-sphere";
    case SphereVerdict::unknown: return "unknown";
  }
  return "unknown";
}

/// Dimension only (no compression): 1 if connected with every rim S⁰, 2 if
/// connected with every rim a digital 1-sphere, 0 for S⁰ itself.
inline std::optional<int> manifold_dimension(const DigitalGraph& g) {
  if (is_digital_0_sphere(g)) return 0;
  if (g.empty() || !is_connected(g)) return std::nullopt;
  bool all_zero = true;
  bool all_one = true;
  for (Index v = 0; v < g.size() && (all_zero || all_one); ++v) {
    const DigitalGraph r = induced_by_indices(g, g.neighbors(v));
    if (all_zero && !is_digital_0_sphere(r)) all_zero = false;
    if (all_one && !is_chordless_cycle(r)) all_one = false;
  }
  if (all_zero) return 1;
  if (all_one) return 2;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Simple pairs and contraction

namespace detail {

// Working copy for contraction sequences: alive flags over an index space
// that grows as replacement points are created.
class MutableManifold {
 public:
  explicit MutableManifold(const DigitalGraph& g) {
    names_ = g.points();
    adj_.resize(g.size());
    for (Index v = 0; v < g.size(); ++v) {
      adj_[v] = std::set<Index>(g.neighbors(v).begin(), g.neighbors(v).end());
    }
    alive_.assign(g.size(), 1);
    for (Index v = 0; v < g.size(); ++v) by_name_.emplace(names_[v], v);
    marker_.assign(g.size(), 0);
  }

  std::size_t size() const { return by_name_.size(); }
  const PointId& name(Index v) const { return names_[v]; }
  const std::set<Index>& neighbors(Index v) const { return adj_[v]; }
  bool has_name(const PointId& id) const { return by_name_.count(id) > 0; }
  std::optional<Index> find(const PointId& id) const {
    if (auto it = by_name_.find(id); it != by_name_.end()) return it->second;
    return std::nullopt;
  }

  // (U(x) ∪ U(y)) − {x, y} is a digital (n−1)-sphere.
  bool simple_pair(Index x, Index y, int n) {
    ++stamp_;
    std::vector<Index> ring;
    for (Index s : {x, y}) {
      for (Index w : adj_[s]) {
        if (w != x && w != y && marker_[w] != stamp_) {
          marker_[w] = stamp_;
          ring.push_back(w);
        }
      }
    }
    if (n == 1) {
      return ring.size() == 2 && !adj_[ring[0]].count(ring[1]);
    }
    if (ring.size() < 4) return false;
    for (Index w : ring) {
      std::size_t inside = 0;
      for (Index u : adj_[w]) {
        if (marker_[u] == stamp_ && u != x && u != y && ++inside > 2) break;
      }
      if (inside != 2) return false;
    }
    // Degree-2 everywhere: connected iff a walk visits the whole ring.
    std::size_t visited = 1;
    Index prev = ring[0];
    Index cur = ring[0];
    for (Index u : adj_[cur]) {
      if (marker_[u] == stamp_ && u != x && u != y) {
        cur = u;
        break;
      }
    }
    while (cur != ring[0]) {
      ++visited;
      Index next = cur;
      for (Index u : adj_[cur]) {
        if (marker_[u] == stamp_ && u != x && u != y && u != prev) {
          next = u;
          break;
        }
      }
      prev = cur;
      cur = next;
    }
    return visited == ring.size();
  }

  Index contract(Index x, Index y, const PointId& z) {
    const Index zi = static_cast<Index>(names_.size());
    names_.push_back(z);
    adj_.emplace_back();
    alive_.push_back(1);
    marker_.push_back(0);
    for (Index s : {x, y}) {
      for (Index w : adj_[s]) {
        if (w == x || w == y) continue;
        adj_[w].erase(s);
        adj_[w].insert(zi);
        adj_[zi].insert(w);
      }
      adj_[s].clear();
      alive_[s] = 0;
      by_name_.erase(names_[s]);
    }
    by_name_.emplace(z, zi);
    return zi;
  }

  DigitalGraph freeze() const {
    std::vector<PointId> names;
    std::vector<Index> old_of;
    for (const auto& [id, v] : by_name_) {
      names.push_back(id);
      old_of.push_back(v);
    }
    std::map<Index, Index> rank;
    for (Index k = 0; k < old_of.size(); ++k) rank.emplace(old_of[k], k);
    std::vector<std::vector<Index>> adj(names.size());
    for (Index k = 0; k < old_of.size(); ++k) {
      for (Index w : adj_[old_of[k]]) adj[k].push_back(rank.at(w));
      std::sort(adj[k].begin(), adj[k].end());
    }
    return DigitalGraph::from_sorted(std::move(names), std::move(adj));
  }

  std::vector<Index> alive_points() const {
    std::vector<Index> out;
    for (const auto& [id, v] : by_name_) out.push_back(v);
    return out;
  }

 private:
  std::vector<PointId> names_;
  std::vector<std::set<Index>> adj_;
  std::vector<char> alive_;
  std::map<PointId, Index> by_name_;
  std::vector<unsigned> marker_;
  unsigned stamp_ = 0;
};

inline int require_manifold(const DigitalGraph& m) {
  const auto dim = manifold_dimension(m);
  if (!dim || *dim == 0) {
    throw ManifoldError("input is not a digital 1- or 2-manifold");
  }
  return *dim;
}

}  // namespace detail

/// All simple pairs of the digital n-manifold `m`, each ordered (x < y), in
/// lexicographic order.
inline std::vector<Edge> find_simple_pairs(const DigitalGraph& m, int n) {
  if (n != 1 && n != 2) throw ManifoldError("dimension must be 1 or 2");
  if (manifold_dimension(m) != n) {
    throw ManifoldError("input is not a digital " + std::to_string(n) +
                        "-manifold");
  }
  detail::MutableManifold work(m);
  std::vector<Edge> out;
  for (Index x = 0; x < m.size(); ++x) {
    for (Index y : m.neighbors(x)) {
      if (x < y && work.simple_pair(x, y, n)) {
        out.emplace_back(m.name(x), m.name(y));
      }
    }
  }
  return out;
}

/// Replaces the simple pair {x, y} by a fresh point z adjacent to every
/// neighbour of x or y.
inline DigitalGraph contract_pair(const DigitalGraph& m, const PointId& x,
                                  const PointId& y, const PointId& z) {
  const int n = detail::require_manifold(m);
  const Index xi = m.require(x);
  const Index yi = m.require(y);
  if (m.contains(z)) {
    throw GraphError("replacement point '" + z + "' already exists");
  }
  if (xi == yi || !m.adjacent(xi, yi)) {
    throw ManifoldError("{" + x + ", " + y + "} is not an edge");
  }
  detail::MutableManifold work(m);
  if (!work.simple_pair(xi, yi, n)) {
    throw ManifoldError("{" + x + ", " + y + "} is not a simple pair");
  }
  work.contract(xi, yi, z);
  return work.freeze();
}

struct CompressionStep {
  PointId x, y, z;
  friend bool operator==(const CompressionStep&, const CompressionStep&) = default;
};

struct CompressionTrace {
  std::size_t initial_size = 0;
  std::size_t final_size = 0;
  std::vector<CompressionStep> steps;
};

struct CompressOptions {
  /// When set, each step picks a uniformly random simple pair using this
  /// seed; otherwise the lexicographically smallest pair.
  std::optional<std::uint64_t> seed;
};

struct Compression {
  DigitalGraph graph;
  CompressionTrace trace;
};

/// Contracts simple pairs until none remain. Replacement points are named
/// "z<k>" after the step index, suffixed "_<j>" on a name clash.
inline Compression compress(const DigitalGraph& m,
                            const CompressOptions& opts = {}) {
  const int n = detail::require_manifold(m);
  detail::MutableManifold work(m);
  Compression result;
  result.trace.initial_size = m.size();

  // Pairs ordered by names so the deterministic choice is the smallest.
  auto ordered = [&](Index a, Index b) {
    return work.name(a) < work.name(b) ? std::pair{a, b} : std::pair{b, a};
  };
  auto by_name = [&](const std::pair<Index, Index>& p,
                     const std::pair<Index, Index>& q) {
    const auto& pa = work.name(p.first);
    const auto& qa = work.name(q.first);
    if (pa != qa) return pa < qa;
    return work.name(p.second) < work.name(q.second);
  };
  std::set<std::pair<Index, Index>, decltype(by_name)> pairs(by_name);
  for (Index x : work.alive_points()) {
    for (Index y : work.neighbors(x)) {
      if (work.name(x) < work.name(y) && work.simple_pair(x, y, n)) {
        pairs.insert({x, y});
      }
    }
  }

  std::optional<std::mt19937_64> rng;
  if (opts.seed) rng.emplace(*opts.seed);

  for (std::size_t step = 0; !pairs.empty(); ++step) {
    auto it = pairs.begin();
    if (rng) std::advance(it, static_cast<std::ptrdiff_t>((*rng)() % pairs.size()));
    const auto [x, y] = *it;

    PointId z = "z" + std::to_string(step);
    for (int j = 1; work.has_name(z); ++j) {
      z = "z" + std::to_string(step) + "_" + std::to_string(j);
    }
    result.trace.steps.push_back({work.name(x), work.name(y), z});

    // Drop pairs touching x or y, then recheck every edge with an endpoint
    // in the closed neighbourhood of z: nothing else sees the change.
    for (auto p = pairs.begin(); p != pairs.end();) {
      if (p->first == x || p->second == x || p->first == y || p->second == y) {
        p = pairs.erase(p);
      } else {
        ++p;
      }
    }
    const Index zi = work.contract(x, y, z);
    std::vector<Index> near{zi};
    near.insert(near.end(), work.neighbors(zi).begin(), work.neighbors(zi).end());
    for (Index u : near) {
      for (Index w : work.neighbors(u)) {
        const auto key = ordered(u, w);
        pairs.erase(key);
        if (work.simple_pair(key.first, key.second, n)) pairs.insert(key);
      }
    }
  }

  result.graph = work.freeze();
  result.trace.final_size = result.graph.size();
  return result;
}

/// Replays a compression trace, checking every contraction.
inline DigitalGraph replay_compression(const DigitalGraph& m,
                                       const CompressionTrace& trace) {
  DigitalGraph cur = m;
  for (const auto& s : trace.steps) cur = contract_pair(cur, s.x, s.y, s.z);
  return cur;
}

/// Point count of the compressed form reached by the deterministic order.
inline std::size_t digital_weight(const DigitalGraph& m) {
  return compress(m).graph.size();
}

// ---------------------------------------------------------------------------
// Canonical surfaces

enum class SurfaceName {
  minimal_1_sphere,
  minimal_2_sphere,
  icosahedron,
  king_torus,
  hex_torus,
};

inline SurfaceName parse_surface_name(const std::string& s) {
  if (s == "minimal-1-sphere") return SurfaceName::minimal_1_sphere;
  if (s == "minimal-2-sphere") return SurfaceName::minimal_2_sphere;
  if (s == "icosahedron") return SurfaceName::icosahedron;
  if (s == "king-torus") return SurfaceName::king_torus;
  if (s == "hex-torus") return SurfaceName::hex_torus;
  throw GraphError("unknown surface name '" + s + "'");
}

namespace detail {

inline std::string grid_name(int r, int c) {
  return "r" + std::to_string(r) + "c" + std::to_string(c);
}

inline DigitalGraph torus_with_offsets(
    int rows, int cols, const std::vector<std::pair<int, int>>& offsets) {
  if (rows < 4 || cols < 4) {
    throw GraphError("torus needs rows >= 4 and cols >= 4");
  }
  PointSet points;
  std::set<Edge> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      points.push_back(grid_name(r, c));
      for (const auto& [dr, dc] : offsets) {
        auto a = grid_name(r, c);
        auto b = grid_name((r + dr + rows) % rows, (c + dc + cols) % cols);
        if (a > b) std::swap(a, b);
        edges.emplace(a, b);
      }
    }
  }
  return DigitalGraph(points, {edges.begin(), edges.end()});
}

}  // namespace detail

/// minimal-1-sphere = S⁰⊕S⁰, minimal-2-sphere = S⁰⊕S⁰⊕S⁰, the icosahedron
/// (rims C5), and the king-move / triangular-lattice tori on Z_rows × Z_cols.
/// The triangular lattice uses E, W, N, S, NE and SW neighbours.
inline DigitalGraph canonical_surface(SurfaceName name, int rows = 4,
                                      int cols = 4) {
  switch (name) {
    case SurfaceName::minimal_1_sphere:
      return join(zero_sphere("u1", "v1"), zero_sphere("u2", "v2"));
    case SurfaceName::minimal_2_sphere:
      return join(join(zero_sphere("u1", "v1"), zero_sphere("u2", "v2")),
                  zero_sphere("u3", "v3"));
    case SurfaceName::icosahedron: {
      // Apexes t, b; upper ring u0..u4; lower ring l0..l4.
      PointSet pts{"t", "b"};
      std::vector<Edge> e;
      auto u = [](int i) { return "u" + std::to_string((i + 5) % 5); };
      auto l = [](int i) { return "l" + std::to_string((i + 5) % 5); };
      for (int i = 0; i < 5; ++i) {
        pts.push_back(u(i));
        pts.push_back(l(i));
        e.emplace_back("t", u(i));
        e.emplace_back("b", l(i));
        e.emplace_back(u(i), u(i + 1));
        e.emplace_back(l(i), l(i + 1));
        e.emplace_back(u(i), l(i));
        e.emplace_back(u(i), l(i + 1));
      }
      return DigitalGraph(pts, e);
    }
    case SurfaceName::king_torus:
      return detail::torus_with_offsets(
          rows, cols, {{0, 1}, {1, 0}, {1, 1}, {1, -1}});
    case SurfaceName::hex_torus:
      return detail::torus_with_offsets(rows, cols, {{0, 1}, {1, 0}, {1, 1}});
  }
  throw GraphError("unknown surface");
}

/// True iff both digital 2-manifolds compress to isomorphic graphs.
inline bool same_compressed_class(const DigitalGraph& m, const DigitalGraph& n) {
  if (manifold_dimension(m) != 2 || manifold_dimension(n) != 2) {
    throw ManifoldError("both inputs must be digital 2-manifolds");
  }
  return isomorphic(compress(m).graph, compress(n).graph);
}

/// Dimension, rim witnesses and sphere verdict. For 2-manifolds the verdict
/// is "yes" when compression reaches the octahedron, "no" when χ ≠ 2 (a
/// 2-sphere has χ = 2 and contraction keeps χ), and "unknown" otherwise.
inline ManifoldReport classify_manifold(const DigitalGraph& g) {
  ManifoldReport report;
  for (Index v = 0; v < g.size(); ++v) {
    const DigitalGraph r = induced_by_indices(g, g.neighbors(v));
    RimVerdict verdict = RimVerdict::other;
    if (is_digital_0_sphere(r)) {
      verdict = RimVerdict::zero_sphere;
    } else if (is_digital_1_sphere(r)) {
      verdict = RimVerdict::one_sphere;
    }
    report.witnesses.emplace_back(g.name(v), verdict);
  }
  report.dimension = manifold_dimension(g);
  if (!report.dimension) {
    report.is_sphere = SphereVerdict::no;
  } else if (*report.dimension <= 1) {
    report.is_sphere = SphereVerdict::yes;
  } else {
    const auto compressed = compress(g).graph;
    if (isomorphic(compressed, canonical_surface(SurfaceName::minimal_2_sphere))) {
      report.is_sphere = SphereVerdict::yes;
    } else if (euler_characteristic(g) != 2) {
      report.is_sphere = SphereVerdict::no;
    } else {
      report.is_sphere = SphereVerdict::unknown;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::ordered_json compression_trace_to_json(const CompressionTrace& t) {
  nlohmann::ordered_json j;
  j["initial"] = t.initial_size;
  j["final"] = t.final_size;
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : t.steps) {
    nlohmann::ordered_json js;
    js["x"] = s.x;
    js["y"] = s.y;
    js["z"] = s.z;
    steps.push_back(std::move(js));
  }
  j["steps"] = std::move(steps);
  return j;
}

template <typename Json>
CompressionTrace compression_trace_from_json(const Json& j) {
  CompressionTrace t;
  try {
    t.initial_size = j.at("initial").template get<std::size_t>();
    t.final_size = j.at("final").template get<std::size_t>();
    for (const auto& s : j.at("steps")) {
      t.steps.push_back({s.at("x").template get<std::string>(),
                         s.at("y").template get<std::string>(),
                         s.at("z").template get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed compression trace: ") + e.what());
  }
  return t;
}

}  // namespace digisurf
