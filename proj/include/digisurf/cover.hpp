#pragma once

// Covers of closed surfaces by polygonal 2-cells, the LCL conditions on them,
// and their intersection graphs (nerves).
//
// A surface is a square [0,n]×[0,m] with its sides glued by a four-letter
// word. A cell is one or more polygon pieces in the square whose union in
// the quotient is the 2-cell; pieces of one cell may sit on both sides of a
// glued seam. All geometry is exact rational arithmetic.
//
// Every piece edge is split at every vertex, at every crossing with another
// edge, and at the seam images of every boundary point. The resulting
// elementary segments and points are identified across seams, which turns
// intersections of closed cells in the quotient into set intersections of
// segment and vertex ids.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "digisurf/errors.hpp"
#include "digisurf/graph.hpp"
#include "digisurf/rational.hpp"

namespace digisurf {

// ---------------------------------------------------------------------------
// Fundamental polygon words and the gluing map

/// Words read along bottom, right, top, left of the square:
///   sphere A B B⁻¹ A⁻¹, torus A B A⁻¹ B⁻¹, klein A B A B⁻¹, projective A B A B.
enum class PolygonWord { sphere, torus, klein, projective };

inline PolygonWord parse_word(const std::string& s) {
  if (s == "sphere") return PolygonWord::sphere;
  if (s == "torus") return PolygonWord::torus;
  if (s == "klein") return PolygonWord::klein;
  if (s == "projective") return PolygonWord::projective;
  throw CoverError("unsupported polygon word '" + s +
                   "' (expected sphere, torus, klein or projective)");
}

inline std::string to_string(PolygonWord w) {
  switch (w) {
    case PolygonWord::sphere: return "sphere";
    case PolygonWord::torus: return "torus";
    case PolygonWord::klein: return "klein";
    case PolygonWord::projective: return "projective";
  }
  return "torus";
}

namespace detail {

enum class Side { bottom, right, top, left };

// Side `a` at parameter t is glued to side `b` at t, or at 1 − t if flipped.
// Parameters run left to right on bottom/top and bottom to top on left/right.
struct SidePairing {
  Side a;
  Side b;
  bool flip;
};

// torus:      (x,0)~(x,m)      (0,y)~(n,y)
// klein:      (x,0)~(x,m)      (0,y)~(n,m−y)
// projective: (x,0)~(n−x,m)    (0,y)~(n,m−y)
// sphere:     (x,0)~(0,x·m/n)  (n,y)~(y·n/m,m)
inline std::vector<SidePairing> side_pairings(PolygonWord w) {
  switch (w) {
    case PolygonWord::torus:
      return {{Side::bottom, Side::top, false}, {Side::left, Side::right, false}};
    case PolygonWord::klein:
      return {{Side::bottom, Side::top, false}, {Side::left, Side::right, true}};
    case PolygonWord::projective:
      return {{Side::bottom, Side::top, true}, {Side::left, Side::right, true}};
    case PolygonWord::sphere:
      return {{Side::bottom, Side::left, false}, {Side::right, Side::top, false}};
  }
  return {};
}

inline std::optional<Rational> side_param(const Point2& p, Side s,
                                          const Rational& n, const Rational& m) {
  switch (s) {
    case Side::bottom: if (p.y == 0) return p.x / n; break;
    case Side::top: if (p.y == m) return p.x / n; break;
    case Side::left: if (p.x == 0) return p.y / m; break;
    case Side::right: if (p.x == n) return p.y / m; break;
  }
  return std::nullopt;
}

inline Point2 side_point(Side s, const Rational& t, const Rational& n,
                         const Rational& m) {
  switch (s) {
    case Side::bottom: return {t * n, Rational(0)};
    case Side::top: return {t * n, m};
    case Side::left: return {Rational(0), t * m};
    case Side::right: return {n, t * m};
  }
  return {};
}

inline bool in_square(const Point2& p, const Rational& n, const Rational& m) {
  return p.x >= 0 && p.x <= n && p.y >= 0 && p.y <= m;
}

// Closure of {p} under the side gluings; sorted.
inline std::vector<Point2> orbit(PolygonWord w, const Point2& p,
                                 const Rational& n, const Rational& m) {
  const auto pairings = side_pairings(w);
  std::set<Point2> seen{p};
  std::vector<Point2> stack{p};
  while (!stack.empty()) {
    const Point2 q = stack.back();
    stack.pop_back();
    for (const auto& pr : pairings) {
      for (int dir = 0; dir < 2; ++dir) {
        const Side from = dir == 0 ? pr.a : pr.b;
        const Side to = dir == 0 ? pr.b : pr.a;
        if (auto t = side_param(q, from, n, m)) {
          const Point2 image = side_point(to, pr.flip ? 1 - *t : *t, n, m);
          if (seen.insert(image).second) stack.push_back(image);
        }
      }
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace detail

/// A point of the quotient surface: the lexicographically smallest member
/// of its gluing orbit, plus a printable class identifier.
struct QuotientPoint {
  Point2 representative;
  std::string class_id;

  friend bool operator==(const QuotientPoint& a, const QuotientPoint& b) {
    return a.class_id == b.class_id;
  }
};

/// Identification class of `p` in the square [0,n]×[0,m] glued by `word`.
/// Interior points are their own class; corner orbits are closed under all
/// gluings.
inline QuotientPoint quotient_class(PolygonWord word, const Point2& p,
                                    const Rational& n, const Rational& m) {
  if (!detail::in_square(p, n, m)) {
    throw CoverError("point (" + format_point(p) + ") lies outside the square");
  }
  const auto orb = detail::orbit(word, p, n, m);
  return {orb.front(), format_point(orb.front())};
}

// ---------------------------------------------------------------------------
// Covers

using Polygon = std::vector<Point2>;

struct CoverCell {
  std::string id;
  std::vector<Polygon> pieces;
};

struct Cover {
  PolygonWord word = PolygonWord::torus;
  std::int64_t n = 1;
  std::int64_t m = 1;
  std::vector<CoverCell> cells;
};

struct IntersectionFeature {
  enum class Kind { empty, points, segments };
  Kind kind = Kind::empty;
  /// Points of the intersection not lying on one of its segments.
  std::vector<QuotientPoint> points;
  /// Maximal straight segments, drawn in the first cell's coordinates.
  std::vector<std::pair<QuotientPoint, QuotientPoint>> segments;
};

enum class LclAxiom { LC, LL_a, LL_b, LL_c };

inline std::string to_string(LclAxiom a) {
  switch (a) {
    case LclAxiom::LC: return "LC";
    case LclAxiom::LL_a: return "LL-a";
    case LclAxiom::LL_b: return "LL-b";
    case LclAxiom::LL_c: return "LL-c";
  }
  return "LC";
}

struct LclViolation {
  LclAxiom axiom = LclAxiom::LC;
  std::vector<std::size_t> cells;
  IntersectionFeature feature;
  std::string detail;
};

struct LclReport {
  std::vector<LclViolation> violations;
  bool pass() const { return violations.empty(); }
  std::size_t count(LclAxiom a) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(),
                      [&](const LclViolation& v) { return v.axiom == a; }));
  }
};

/// A cover (or circle cover) failed LCL verification.
class LclError : public Error {
 public:
  LclError(const std::string& what, LclReport report)
      : Error(what), report_(std::move(report)) {}
  const LclReport& report() const { return report_; }

 private:
  LclReport report_;
};

namespace detail {

struct EdgeRecord {
  std::size_t cell;
  std::size_t piece;
  Point2 a, b;
  Point2 lo, hi;  // bounding box
};

struct Elementary {
  std::size_t segment;  // segment class id
  Point2 a, b;          // raw coordinates
  std::size_t edge;     // owning EdgeRecord
};

struct SegmentClass {
  std::size_t v0, v1;  // endpoint vertex classes, v0 <= v1
  std::size_t total = 0;
};

struct CellTopology {
  std::vector<std::size_t> boundary_segments;  // sorted
  std::vector<std::size_t> boundary_vertices;  // sorted
  std::optional<std::string> not_a_disk;       // reason, if any
};

template <typename T>
std::vector<T> intersect_sorted(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline Rational cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }
inline Point2 sub(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }

inline bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

// Points shared by the closed segments ab and cd (0, 1 or 2 overlap ends).
inline std::vector<Point2> segment_contacts(const Point2& a, const Point2& b,
                                            const Point2& c, const Point2& d) {
  const Point2 d1 = sub(b, a);
  const Point2 d2 = sub(d, c);
  const Rational denom = cross(d1, d2);
  const Point2 ca = sub(c, a);
  if (denom != 0) {
    const Rational t = cross(ca, d2) / denom;
    const Rational u = cross(ca, d1) / denom;
    if (t < 0 || t > 1 || u < 0 || u > 1) return {};
    return {{a.x + t * d1.x, a.y + t * d1.y}};
  }
  if (cross(ca, d1) != 0) return {};
  std::vector<Point2> out;
  for (const Point2* p : {&a, &b}) {
    if (on_segment(*p, c, d)) out.push_back(*p);
  }
  for (const Point2* p : {&c, &d}) {
    if (on_segment(*p, a, b)) out.push_back(*p);
  }
  return out;
}

inline Rational signed_area2(const Polygon& poly) {
  Rational s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % poly.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return s;
}

inline bool is_simple_polygon(const Polygon& poly) {
  const std::size_t k = poly.size();
  if (k < 3) return false;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (poly[i] == poly[j]) return false;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % k];
    for (std::size_t j = i + 1; j < k; ++j) {
      const auto& c = poly[j];
      const auto& d = poly[(j + 1) % k];
      const bool neighbours = (j == i + 1) || (i == 0 && j == k - 1);
      const auto contacts = segment_contacts(a, b, c, d);
      if (neighbours) {
        // Consecutive edges may only share their common vertex.
        const Point2& shared = (j == i + 1) ? b : a;
        for (const auto& p : contacts) {
          if (p != shared) return false;
        }
      } else if (!contacts.empty()) {
        return false;
      }
    }
  }
  return true;
}

// The combinatorial arrangement of a cover in the quotient surface.
class Arrangement {
 public:
  explicit Arrangement(const Cover& cover)
      : cover_(cover), n_(cover.n), m_(cover.m) {
    collect_edges();
    split_edges();
    build_cells();
  }

  std::size_t cell_count() const { return cover_.cells.size(); }
  const CellTopology& cell(std::size_t i) const { return cells_[i]; }
  const SegmentClass& segment(std::size_t s) const { return segments_[s]; }
  std::size_t segment_count() const { return segments_.size(); }
  const QuotientPoint& vertex(std::size_t v) const { return vertices_[v]; }

  /// Cells whose boundary passes through each vertex class.
  std::vector<std::vector<std::size_t>> cells_at_vertices() const {
    std::vector<std::vector<std::size_t>> at(vertices_.size());
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      for (std::size_t v : cells_[c].boundary_vertices) at[v].push_back(c);
    }
    return at;
  }

  std::vector<std::size_t> common_vertices(const std::vector<std::size_t>& cs) const {
    std::vector<std::size_t> acc = cells_[cs.at(0)].boundary_vertices;
    for (std::size_t k = 1; k < cs.size(); ++k) {
      acc = intersect_sorted(acc, cells_[cs[k]].boundary_vertices);
    }
    return acc;
  }

  std::vector<std::size_t> common_segments(const std::vector<std::size_t>& cs) const {
    std::vector<std::size_t> acc = cells_[cs.at(0)].boundary_segments;
    for (std::size_t k = 1; k < cs.size(); ++k) {
      acc = intersect_sorted(acc, cells_[cs[k]].boundary_segments);
    }
    return acc;
  }

  /// Intersection of the closed cells `cs` in the quotient.
  IntersectionFeature feature(const std::vector<std::size_t>& cs) const {
    IntersectionFeature f;
    const auto verts = common_vertices(cs);
    const auto segs = common_segments(cs);
    std::set<std::size_t> on_segments;
    for (std::size_t s : segs) {
      on_segments.insert(segments_[s].v0);
      on_segments.insert(segments_[s].v1);
    }
    for (std::size_t v : verts) {
      if (!on_segments.count(v)) f.points.push_back(vertices_[v]);
    }
    // Merge consecutive elementary pieces of one edge of the first cell.
    const std::set<std::size_t> wanted(segs.begin(), segs.end());
    std::optional<std::pair<Point2, Point2>> run;
    std::size_t run_edge = 0;
    auto flush = [&] {
      if (run) {
        f.segments.emplace_back(quotient_class(cover_.word, run->first, n_, m_),
                                quotient_class(cover_.word, run->second, n_, m_));
        run.reset();
      }
    };
    std::set<std::size_t> emitted;
    for (const auto& e : elementary_) {
      if (e.edge >= edges_.size() || edges_[e.edge].cell != cs.at(0) ||
          !wanted.count(e.segment) || emitted.count(e.segment)) {
        flush();
        continue;
      }
      emitted.insert(e.segment);
      if (run && run_edge == e.edge && run->second == e.a) {
        run->second = e.b;
      } else {
        flush();
        run = std::pair{e.a, e.b};
        run_edge = e.edge;
      }
    }
    flush();
    if (!f.segments.empty()) {
      f.kind = IntersectionFeature::Kind::segments;
    } else if (!f.points.empty()) {
      f.kind = IntersectionFeature::Kind::points;
    }
    return f;
  }

  /// True when the intersection of cells i and j is one arc: a non-empty
  /// union of segments forming a simple path, with no stray points.
  bool is_arc(std::size_t i, std::size_t j) const {
    const auto verts = common_vertices({i, j});
    const auto segs = common_segments({i, j});
    if (segs.empty()) return false;
    std::map<std::size_t, std::size_t> degree;
    for (std::size_t s : segs) {
      if (segments_[s].v0 == segments_[s].v1) return false;
      ++degree[segments_[s].v0];
      ++degree[segments_[s].v1];
    }
    if (degree.size() != segs.size() + 1 || degree.size() != verts.size()) {
      return false;
    }
    for (const auto& [v, d] : degree) {
      if (d > 2) return false;
    }
    return connected(segs);
  }

  /// Endpoints (degree-one vertices) of the arc D_i ∩ D_j.
  std::vector<std::size_t> arc_ends(std::size_t i, std::size_t j) const {
    std::map<std::size_t, std::size_t> degree;
    for (std::size_t s : common_segments({i, j})) {
      ++degree[segments_[s].v0];
      ++degree[segments_[s].v1];
    }
    std::vector<std::size_t> ends;
    for (const auto& [v, d] : degree) {
      if (d == 1) ends.push_back(v);
    }
    return ends;
  }

  /// Each segment class appears in exactly two piece boundaries overall.
  std::vector<std::string> tiling_problems() const {
    std::vector<std::string> out;
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      if (segments_[s].total != 2) {
        out.push_back("segment at " + vertices_[segments_[s].v0].class_id + " - " +
                      vertices_[segments_[s].v1].class_id + " is covered " +
                      std::to_string(segments_[s].total) + " times");
        if (out.size() >= 16) break;
      }
    }
    return out;
  }

 private:
  std::size_t intern_vertex(const Point2& p) {
    const QuotientPoint q = quotient_class(cover_.word, p, n_, m_);
    auto [it, fresh] = vertex_ids_.emplace(q.representative, vertices_.size());
    if (fresh) vertices_.push_back(q);
    return it->second;
  }

  void collect_edges() {
    for (std::size_t c = 0; c < cover_.cells.size(); ++c) {
      const auto& pieces = cover_.cells[c].pieces;
      for (std::size_t p = 0; p < pieces.size(); ++p) {
        const auto& poly = pieces[p];
        for (std::size_t i = 0; i < poly.size(); ++i) {
          const auto& a = poly[i];
          const auto& b = poly[(i + 1) % poly.size()];
          if (!in_square(a, n_, m_)) {
            throw CoverError("cell '" + cover_.cells[c].id + "' has vertex (" +
                             format_point(a) + ") outside the square");
          }
          EdgeRecord e{c, p, a, b,
                       {std::min(a.x, b.x), std::min(a.y, b.y)},
                       {std::max(a.x, b.x), std::max(a.y, b.y)}};
          edges_.push_back(std::move(e));
        }
      }
    }
  }

  void split_edges() {
    std::vector<std::vector<Point2>> cuts(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      cuts[i].push_back(edges_[i].a);
      cuts[i].push_back(edges_[i].b);
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& ei = edges_[i];
      for (std::size_t j = i + 1; j < edges_.size(); ++j) {
        const auto& ej = edges_[j];
        if (ei.hi.x < ej.lo.x || ej.hi.x < ei.lo.x || ei.hi.y < ej.lo.y ||
            ej.hi.y < ei.lo.y) {
          continue;
        }
        for (const auto& p : segment_contacts(ei.a, ei.b, ej.a, ej.b)) {
          cuts[i].push_back(p);
          cuts[j].push_back(p);
        }
      }
    }
    // Seam images: a cut on one side of a seam cuts the glued side too.
    std::set<Point2> boundary_points;
    for (const auto& cs : cuts) {
      for (const auto& p : cs) {
        if (p.x == 0 || p.y == 0 || p.x == n_ || p.y == m_) boundary_points.insert(p);
      }
    }
    std::set<Point2> images;
    for (const auto& p : boundary_points) {
      for (const auto& q : orbit(cover_.word, p, n_, m_)) images.insert(q);
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      const bool on_boundary = (e.a.x == e.b.x && (e.a.x == 0 || e.a.x == n_)) ||
                               (e.a.y == e.b.y && (e.a.y == 0 || e.a.y == m_));
      if (!on_boundary) continue;
      for (auto it = images.lower_bound(e.lo); it != images.end() && !(e.hi < *it); ++it) {
        if (on_segment(*it, e.a, e.b)) cuts[i].push_back(*it);
      }
    }

    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto& cs = cuts[i];
      std::sort(cs.begin(), cs.end());
      cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
      if (edges_[i].b < edges_[i].a) std::reverse(cs.begin(), cs.end());
      for (std::size_t k = 0; k + 1 < cs.size(); ++k) {
        const Point2& a = cs[k];
        const Point2& b = cs[k + 1];
        const Point2 mid{(a.x + b.x) / 2, (a.y + b.y) / 2};
        const QuotientPoint qm = quotient_class(cover_.word, mid, n_, m_);
        auto [it, fresh] = segment_ids_.emplace(qm.representative, segments_.size());
        if (fresh) {
          std::size_t v0 = intern_vertex(a);
          std::size_t v1 = intern_vertex(b);
          if (v1 < v0) std::swap(v0, v1);
          segments_.push_back({v0, v1, 0});
        }
        ++segments_[it->second].total;
        elementary_.push_back({it->second, a, b, i});
      }
    }
  }

  bool connected(const std::vector<std::size_t>& segs) const {
    if (segs.empty()) return true;
    std::map<std::size_t, std::vector<std::size_t>> adj;
    for (std::size_t s : segs) {
      adj[segments_[s].v0].push_back(segments_[s].v1);
      adj[segments_[s].v1].push_back(segments_[s].v0);
    }
    std::set<std::size_t> seen{adj.begin()->first};
    std::vector<std::size_t> stack{adj.begin()->first};
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v]) {
        if (seen.insert(w).second) stack.push_back(w);
      }
    }
    return seen.size() == adj.size();
  }

  void build_cells() {
    cells_.resize(cover_.cells.size());
    std::vector<std::map<std::size_t, std::size_t>> counts(cover_.cells.size());
    for (const auto& e : elementary_) ++counts[edges_[e.edge].cell][e.segment];
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      auto& topo = cells_[c];
      std::set<std::size_t> all_vertices;
      std::set<std::size_t> boundary_vertices;
      std::map<std::size_t, std::size_t> boundary_degree;
      for (const auto& [s, k] : counts[c]) {
        const auto& seg = segments_[s];
        all_vertices.insert(seg.v0);
        all_vertices.insert(seg.v1);
        if (k > 2 && !topo.not_a_disk) {
          topo.not_a_disk = "pieces overlap along a segment";
        }
        if (k == 1) {
          topo.boundary_segments.push_back(s);
          boundary_vertices.insert(seg.v0);
          boundary_vertices.insert(seg.v1);
          ++boundary_degree[seg.v0];
          ++boundary_degree[seg.v1];
        }
      }
      topo.boundary_vertices.assign(boundary_vertices.begin(), boundary_vertices.end());
      if (topo.not_a_disk) continue;
      if (topo.boundary_segments.empty()) {
        topo.not_a_disk = "cell has no boundary in the quotient";
        continue;
      }
      for (const auto& [v, d] : boundary_degree) {
        if (d != 2) {
          topo.not_a_disk = "boundary touches itself at " + vertices_[v].class_id;
          break;
        }
      }
      if (topo.not_a_disk) continue;
      if (!connected(topo.boundary_segments)) {
        topo.not_a_disk = "boundary has several components";
        continue;
      }
      const auto chi = static_cast<std::int64_t>(all_vertices.size()) -
                       static_cast<std::int64_t>(counts[c].size()) +
                       static_cast<std::int64_t>(cover_.cells[c].pieces.size());
      if (chi != 1) {
        topo.not_a_disk = "glued pieces have Euler characteristic " +
                          std::to_string(chi) + ", not a disk";
      }
    }
  }

  const Cover& cover_;
  Rational n_, m_;
  std::vector<EdgeRecord> edges_;
  std::vector<Elementary> elementary_;
  std::map<Point2, std::size_t> vertex_ids_;
  std::vector<QuotientPoint> vertices_;
  std::map<Point2, std::size_t> segment_ids_;
  std::vector<SegmentClass> segments_;
  std::vector<CellTopology> cells_;
};

inline void require_distinct(std::initializer_list<std::size_t> idx,
                             std::size_t cell_count) {
  std::vector<std::size_t> v(idx);
  for (auto i : v) {
    if (i >= cell_count) throw CoverError("cell index out of range");
  }
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    throw CoverError("cell indices must be distinct");
  }
}

}  // namespace detail

/// Exact intersection of cells i and j in the quotient.
inline IntersectionFeature pairwise_feature(const Cover& cover, std::size_t i,
                                            std::size_t j) {
  detail::require_distinct({i, j}, cover.cells.size());
  return detail::Arrangement(cover).feature({i, j});
}

/// Exact intersection of three distinct cells in the quotient.
inline IntersectionFeature triple_feature(const Cover& cover, std::size_t i,
                                          std::size_t j, std::size_t k) {
  detail::require_distinct({i, j, k}, cover.cells.size());
  return detail::Arrangement(cover).feature({i, j, k});
}

/// Structural problems that stop `cover` from being a tiling of the surface:
/// bad polygons, area mismatch, segments not covered exactly twice.
inline std::vector<std::string> coverage_problems(const Cover& cover) {
  std::vector<std::string> out;
  if (cover.n <= 0 || cover.m <= 0) {
    out.push_back("square dimensions must be positive");
    return out;
  }
  Rational area2 = 0;
  std::set<std::string> ids;
  for (const auto& cell : cover.cells) {
    if (!ids.insert(cell.id).second) out.push_back("duplicate cell id '" + cell.id + "'");
    if (cell.pieces.empty()) out.push_back("cell '" + cell.id + "' has no pieces");
    for (const auto& poly : cell.pieces) {
      if (!detail::is_simple_polygon(poly)) {
        out.push_back("cell '" + cell.id + "' has a piece that is not a simple polygon");
        continue;
      }
      const Rational a2 = detail::signed_area2(poly);
      if (a2 <= 0) {
        out.push_back("cell '" + cell.id + "' has a piece that is not counterclockwise");
      }
      area2 += a2;
    }
  }
  if (!out.empty()) return out;
  if (area2 != Rational(2 * cover.n * cover.m)) {
    out.push_back("cell areas sum to " + format_rational(area2 / 2) + ", expected " +
                  std::to_string(cover.n * cover.m));
  }
  const auto tiling = detail::Arrangement(cover).tiling_problems();
  out.insert(out.end(), tiling.begin(), tiling.end());
  return out;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> contact_lists(const Arrangement& arr) {
  std::vector<std::set<std::size_t>> adj(arr.cell_count());
  for (const auto& at : arr.cells_at_vertices()) {
    for (std::size_t a = 0; a < at.size(); ++a) {
      for (std::size_t b = a + 1; b < at.size(); ++b) {
        adj[at[a]].insert(at[b]);
        adj[at[b]].insert(at[a]);
      }
    }
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& s : adj) out.emplace_back(s.begin(), s.end());
  return out;
}

inline LclReport verify(const Arrangement& arr) {
  LclReport report;
  const std::size_t count = arr.cell_count();
  for (std::size_t c = 0; c < count; ++c) {
    if (const auto& why = arr.cell(c).not_a_disk) {
      report.violations.push_back(
          {LclAxiom::LL_a, {c}, {}, "cell is not a 2-cell in the quotient: " + *why});
    }
  }
  const auto adj = contact_lists(arr);
  auto adjacent = [&](std::size_t a, std::size_t b) {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
  };
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j : adj[i]) {
      if (j <= i) continue;
      if (!arr.is_arc(i, j)) {
        report.violations.push_back({LclAxiom::LL_a, {i, j}, arr.feature({i, j}),
                                     "intersection is not a single 1-cell"});
      }
      for (std::size_t k : adj[j]) {
        if (k <= j || !adjacent(i, k)) continue;
        const auto common = arr.common_vertices({i, j, k});
        if (common.empty()) {
          report.violations.push_back(
              {LclAxiom::LC, {i, j, k}, {},
               "pairwise intersecting cells with empty common intersection"});
        } else {
          bool point_ok = common.size() == 1 && arr.common_segments({i, j, k}).empty();
          // The point must be a common end of the three pairwise arcs.
          for (auto [a, b] : {std::pair{i, j}, std::pair{i, k}, std::pair{j, k}}) {
            if (!point_ok) break;
            const auto ends = arr.arc_ends(a, b);
            point_ok = std::find(ends.begin(), ends.end(), common[0]) != ends.end();
          }
          if (!point_ok) {
            report.violations.push_back({LclAxiom::LL_b, {i, j, k},
                                         arr.feature({i, j, k}),
                                         "triple intersection is not an arc endpoint"});
          }
        }
        for (std::size_t l : adj[k]) {
          if (l <= k || !adjacent(i, l) || !adjacent(j, l)) continue;
          report.violations.push_back(
              {LclAxiom::LC, {i, j, k, l}, {},
               "four pairwise intersecting cells cannot meet LC and LL-c together"});
          if (!arr.common_vertices({i, j, k, l}).empty()) {
            report.violations.push_back({LclAxiom::LL_c, {i, j, k, l},
                                         arr.feature({i, j, k, l}),
                                         "four cells share a point"});
          }
        }
      }
    }
  }
  return report;
}

}  // namespace detail

/// Checks the LCL conditions on every pair, triple and quadruple of cells.
/// Failures are report entries; a cell that is not a 2-cell in the quotient
/// (for example one touching itself across a seam) is an LL-a entry.
inline LclReport verify_lcl(const Cover& cover) {
  return detail::verify(detail::Arrangement(cover));
}

/// Intersection graph of an LCL cover: one point per cell (named by cell id),
/// an edge for every non-empty pairwise intersection.
inline DigitalGraph nerve(const Cover& cover) {
  if (auto problems = coverage_problems(cover); !problems.empty()) {
    throw CoverError("not a cover of the surface: " + problems.front());
  }
  const detail::Arrangement arr(cover);
  LclReport report = detail::verify(arr);
  if (!report.pass()) {
    const std::string what = "cover fails LCL verification with " +
                             std::to_string(report.violations.size()) + " violation(s)";
    throw LclError(what, std::move(report));
  }
  PointSet points;
  std::vector<Edge> edges;
  const auto adj = detail::contact_lists(arr);
  for (std::size_t i = 0; i < cover.cells.size(); ++i) {
    points.push_back(cover.cells[i].id);
    for (std::size_t j : adj[i]) {
      if (i < j) edges.emplace_back(cover.cells[i].id, cover.cells[j].id);
    }
  }
  return DigitalGraph(points, edges);
}

/// For cell D0 with neighbours D_i and boundary arcs C_i = D0 ∩ D_i: every
/// sub-family of neighbours intersects iff the matching arcs intersect.
inline bool boundary_isomorphism_check(const Cover& cover, std::size_t cell) {
  if (cell >= cover.cells.size()) throw CoverError("cell index out of range");
  const detail::Arrangement arr(cover);
  if (!detail::verify(arr).pass()) {
    throw CoverError("boundary isomorphism check needs an LCL-verified cover");
  }
  const auto adj = detail::contact_lists(arr);
  const auto& nb = adj[cell];
  if (nb.size() > 20) throw ResourceError("too many neighbours to enumerate");
  std::vector<std::vector<std::size_t>> arcs;
  for (std::size_t j : nb) arcs.push_back(arr.common_vertices({cell, j}));
  for (std::uint32_t mask = 1; mask < (1u << nb.size()); ++mask) {
    std::vector<std::size_t> cells;
    std::vector<std::size_t> arc_acc;
    bool first = true;
    for (std::size_t b = 0; b < nb.size(); ++b) {
      if (!(mask & (1u << b))) continue;
      cells.push_back(nb[b]);
      arc_acc = first ? arcs[b] : detail::intersect_sorted(arc_acc, arcs[b]);
      first = false;
    }
    const bool cells_meet = !arr.common_vertices(cells).empty();
    const bool arcs_meet = !arc_acc.empty();
    if (cells_meet != arcs_meet) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Generated covers

namespace detail {

inline Polygon rectangle(const Rational& x0, const Rational& y0,
                         const Rational& x1, const Rational& y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

// Image of a point on `side` under the gluing that involves that side.
inline std::optional<Point2> across(PolygonWord w, Side side, const Point2& p,
                                    const Rational& n, const Rational& m) {
  for (const auto& pr : side_pairings(w)) {
    for (int dir = 0; dir < 2; ++dir) {
      const Side from = dir == 0 ? pr.a : pr.b;
      const Side to = dir == 0 ? pr.b : pr.a;
      if (from != side) continue;
      if (auto t = side_param(p, from, n, m)) {
        return side_point(to, pr.flip ? 1 - *t : *t, n, m);
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Running-bond brick cover on the square [0,cols]×[0,rows]. Even rows hold
/// `cols` unit bricks; odd rows are shifted by half a brick, and the two half
/// bricks at the vertical seam are each merged with the cell glued to them
/// across the seam. Requires rows even and >= 4, cols >= 2; throws LclError
/// when the result fails verification.
inline Cover generate_brick_cover(PolygonWord word, int rows, int cols) {
  if (rows < 4 || rows % 2 != 0) {
    throw CoverError("rows must be even and >= 4 so brick offsets close up "
                     "under the vertical gluing (got " + std::to_string(rows) + ")");
  }
  if (cols < 2) throw CoverError("cols must be >= 2 (got " + std::to_string(cols) + ")");

  struct Proto {
    std::string id;
    Polygon rect;
    int half = 0;  // -1 left half brick, +1 right half brick
  };
  const Rational n = cols;
  const Rational m = rows;
  const Rational half(1, 2);
  std::vector<Proto> protos;
  auto name = [](int r, int c) {
    return "r" + std::to_string(r) + "c" + std::to_string(c);
  };
  for (int r = 0; r < rows; ++r) {
    if (r % 2 == 0) {
      for (int c = 0; c < cols; ++c) {
        protos.push_back({name(r, c), detail::rectangle(c, r, c + 1, r + 1), 0});
      }
    } else {
      protos.push_back({name(r, cols - 1) + "w", detail::rectangle(0, r, half, r + 1), -1});
      for (int c = 0; c + 1 < cols; ++c) {
        protos.push_back({name(r, c),
                          detail::rectangle(c + half, r, c + 1 + half, r + 1), 0});
      }
      protos.push_back({name(r, cols - 1), detail::rectangle(n - half, r, n, r + 1), 1});
    }
  }

  std::vector<std::size_t> parent(protos.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < protos.size(); ++i) {
    if (protos[i].half == 0) continue;
    const auto& rect = protos[i].rect;
    const auto side = protos[i].half < 0 ? detail::Side::left : detail::Side::right;
    const Point2 p = protos[i].half < 0 ? rect[0] : rect[1];
    const Point2 q = protos[i].half < 0 ? rect[3] : rect[2];
    const auto pi = detail::across(word, side, p, n, m);
    const auto qi = detail::across(word, side, q, n, m);
    if (!pi || !qi) continue;
    std::vector<std::size_t> partners;
    for (std::size_t j = 0; j < protos.size(); ++j) {
      if (j == i) continue;
      const auto& other = protos[j].rect;
      for (std::size_t k = 0; k < other.size(); ++k) {
        const auto& a = other[k];
        const auto& b = other[(k + 1) % other.size()];
        if (detail::on_segment(*pi, a, b) && detail::on_segment(*qi, a, b)) {
          partners.push_back(j);
          break;
        }
      }
    }
    // Only merge when the glued side is a single brick edge; otherwise the
    // half brick stays a cell of its own and verification reports the result.
    if (partners.size() == 1) parent[find(i)] = find(partners[0]);
  }

  Cover cover;
  cover.word = word;
  cover.n = cols;
  cover.m = rows;
  std::map<std::size_t, std::size_t> cell_of_root;
  for (std::size_t i = 0; i < protos.size(); ++i) {
    const std::size_t root = find(i);
    auto [it, fresh] = cell_of_root.emplace(root, cover.cells.size());
    if (fresh) cover.cells.push_back({protos[i].id, {}});
    auto& cell = cover.cells[it->second];
    cell.pieces.push_back(protos[i].rect);
    // Name merged cells after their first piece that is not a left half.
    if (protos[i].half >= 0 && cell.id.back() == 'w') cell.id = protos[i].id;
  }

  if (auto problems = coverage_problems(cover); !problems.empty()) {
    throw CoverError("brick layout does not tile the surface: " + problems.front());
  }
  LclReport report = verify_lcl(cover);
  if (!report.pass()) {
    const std::string what = to_string(word) + " brick cover " + std::to_string(rows) + "x" +
                             std::to_string(cols) + " fails LCL verification with " +
                             std::to_string(report.violations.size()) + " violation(s)";
    throw LclError(what, std::move(report));
  }
  return cover;
}

/// Aligned grid of unit squares (no offsets). Four squares meet at every
/// grid corner, so this is never an LCL cover; it is kept as a negative case.
inline Cover generate_aligned_grid(PolygonWord word, int rows, int cols) {
  if (rows < 1 || cols < 1) throw CoverError("rows and cols must be positive");
  Cover cover;
  cover.word = word;
  cover.n = cols;
  cover.m = rows;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      cover.cells.push_back({"r" + std::to_string(r) + "c" + std::to_string(c),
                             {detail::rectangle(c, r, c + 1, r + 1)}});
    }
  }
  return cover;
}

// ---------------------------------------------------------------------------
// Circle covers

struct Arc {
  std::string id;
  Rational start;  // in [0, length)
  Rational end;    // start < end < start + length
};

struct CircleCover {
  Rational length = 1;
  std::vector<Arc> arcs;
};

namespace detail {

// Pieces (start, end) of the intersection of two closed arcs, start taken
// modulo the circle length.
inline std::vector<std::pair<Rational, Rational>> arc_meet(const Arc& a, const Arc& b,
                                                           const Rational& len) {
  std::vector<std::pair<Rational, Rational>> out;
  for (int shift = -1; shift <= 1; ++shift) {
    const Rational lo = std::max(a.start, b.start + shift * len);
    const Rational hi = std::min(a.end, b.end + shift * len);
    if (lo > hi) continue;
    Rational s = lo;
    Rational e = hi;
    while (s >= len) {
      s -= len;
      e -= len;
    }
    while (s < 0) {
      s += len;
      e += len;
    }
    out.emplace_back(s, e);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool same_point_mod(const Rational& a, const Rational& b, const Rational& len) {
  Rational d = a - b;
  while (d < 0) d += len;
  while (d >= len) d -= len;
  return d == 0;
}

}  // namespace detail

/// n unit arcs [k, k+1] on a circle of length n, named a0..a{n-1}.
inline CircleCover circle_cover(int n) {
  if (n < 1) throw CoverError("circle cover needs at least one arc");
  CircleCover cover;
  cover.length = n;
  for (int k = 0; k < n; ++k) {
    cover.arcs.push_back({"a" + std::to_string(k), Rational(k), Rational(k + 1)});
  }
  return cover;
}

/// LCL conditions for arcs: two arcs meet in at most one common endpoint,
/// no three arcs meet, and pairwise meeting triples have a common point.
inline LclReport verify_lcl_1d(const CircleCover& cover) {
  LclReport report;
  const auto& arcs = cover.arcs;
  const Rational& len = cover.length;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Rational span = arcs[i].end - arcs[i].start;
    if (span <= 0 || span >= len) {
      report.violations.push_back({LclAxiom::LL_a, {i}, {},
                                   "arc is not a 1-cell on the circle"});
    }
  }
  std::vector<std::vector<char>> meets(arcs.size(), std::vector<char>(arcs.size(), 0));
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      const auto pieces = detail::arc_meet(arcs[i], arcs[j], len);
      if (pieces.empty()) continue;
      meets[i][j] = meets[j][i] = 1;
      const bool single_point = pieces.size() == 1 && pieces[0].first == pieces[0].second;
      bool endpoint = false;
      if (single_point) {
        const auto& p = pieces[0].first;
        auto is_end = [&](const Arc& a) {
          return detail::same_point_mod(p, a.start, len) ||
                 detail::same_point_mod(p, a.end, len);
        };
        endpoint = is_end(arcs[i]) && is_end(arcs[j]);
      }
      if (!single_point || !endpoint) {
        report.violations.push_back({LclAxiom::LL_a, {i, j}, {},
                                     "arcs do not meet in a single common endpoint"});
      }
    }
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      if (!meets[i][j]) continue;
      for (std::size_t k = j + 1; k < arcs.size(); ++k) {
        if (!meets[i][k] || !meets[j][k]) continue;
        bool common = false;
        for (const auto& [s, e] : detail::arc_meet(arcs[i], arcs[j], len)) {
          Arc piece{"", s, e};
          if (!detail::arc_meet(piece, arcs[k], len).empty()) common = true;
        }
        report.violations.push_back(
            {common ? LclAxiom::LL_b : LclAxiom::LC, {i, j, k}, {},
             common ? "three arcs share a point"
                    : "pairwise meeting arcs with no common point"});
      }
    }
  }
  return report;
}

/// Intersection graph of an LCL circle cover.
inline DigitalGraph nerve_1d(const CircleCover& cover) {
  LclReport report = verify_lcl_1d(cover);
  if (!report.pass()) {
    const std::string what = "circle cover fails LCL verification with " +
                             std::to_string(report.violations.size()) + " violation(s)";
    throw LclError(what, std::move(report));
  }
  PointSet points;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < cover.arcs.size(); ++i) {
    points.push_back(cover.arcs[i].id);
    for (std::size_t j = i + 1; j < cover.arcs.size(); ++j) {
      if (!detail::arc_meet(cover.arcs[i], cover.arcs[j], cover.length).empty()) {
        edges.emplace_back(cover.arcs[i].id, cover.arcs[j].id);
      }
    }
  }
  return DigitalGraph(points, edges);
}

// ---------------------------------------------------------------------------
// Grid discretizations of disks

using GridSquare = std::pair<int, int>;

/// Intersection graph of closed unit squares [x,x+1]×[y,y+1]: two squares
/// meet iff they are king-move neighbours. Points are named "x<x>y<y>".
inline DigitalGraph grid_disk_nerve(const std::vector<GridSquare>& mask) {
  if (mask.empty()) throw CoverError("grid mask is empty");
  std::set<GridSquare> squares(mask.begin(), mask.end());
  auto name = [](const GridSquare& s) {
    return "x" + std::to_string(s.first) + "y" + std::to_string(s.second);
  };
  PointSet points;
  std::vector<Edge> edges;
  for (const auto& s : squares) {
    points.push_back(name(s));
    for (int dx = -1; dx <= 1; ++dx) {
      for (int dy = -1; dy <= 1; ++dy) {
        const GridSquare t{s.first + dx, s.second + dy};
        if (t > s && squares.count(t)) edges.emplace_back(name(s), name(t));
      }
    }
  }
  DigitalGraph g(points, edges);
  if (!is_connected(g)) throw CoverError("grid mask is not connected");
  return g;
}

}  // namespace digisurf
