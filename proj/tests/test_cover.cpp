#include <gtest/gtest.h>

#include <random>

#include "digisurf/cover.hpp"
#include "digisurf/cover_io.hpp"
#include "digisurf/homotopy.hpp"
#include "digisurf/manifold.hpp"

using namespace digisurf;

namespace {

Point2 pt(long x, long y) { return {Rational(x), Rational(y)}; }

std::size_t index_of(const Cover& c, const std::string& id) {
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    if (c.cells[i].id == id) return i;
  }
  throw std::out_of_range(id);
}

// Closed axis-aligned rectangles meet iff their projections overlap.
bool boxes_meet(const Polygon& a, const Polygon& b, const Rational& dx, const Rational& dy) {
  auto lo = [](const Polygon& p, auto get) {
    Rational v = get(p[0]);
    for (const auto& q : p) v = std::min(v, get(q));
    return v;
  };
  auto hi = [](const Polygon& p, auto get) {
    Rational v = get(p[0]);
    for (const auto& q : p) v = std::max(v, get(q));
    return v;
  };
  auto X = [](const Point2& p) { return p.x; };
  auto Y = [](const Point2& p) { return p.y; };
  return lo(a, X) <= hi(b, X) + dx && lo(b, X) + dx <= hi(a, X) &&
         lo(a, Y) <= hi(b, Y) + dy && lo(b, Y) + dy <= hi(a, Y);
}

// Torus nerve by brute force: two cells meet iff some pair of their pieces
// meets under some lattice translate.
DigitalGraph torus_nerve_oracle(const Cover& c) {
  PointSet pts;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    pts.push_back(c.cells[i].id);
    for (std::size_t j = i + 1; j < c.cells.size(); ++j) {
      bool meet = false;
      for (const auto& pa : c.cells[i].pieces) {
        for (const auto& pb : c.cells[j].pieces) {
          for (int kx = -1; kx <= 1 && !meet; ++kx) {
            for (int ky = -1; ky <= 1 && !meet; ++ky) {
              meet = boxes_meet(pa, pb, Rational(kx * c.n), Rational(ky * c.m));
            }
          }
        }
      }
      if (meet) edges.emplace_back(c.cells[i].id, c.cells[j].id);
    }
  }
  return DigitalGraph(pts, edges);
}

}  // namespace

TEST(Quotient, TorusSidesAndCorners) {
  const Rational n = 4, m = 4;
  const auto w = PolygonWord::torus;
  EXPECT_EQ(quotient_class(w, pt(0, 1), n, m), quotient_class(w, pt(4, 1), n, m));
  EXPECT_EQ(quotient_class(w, pt(1, 0), n, m), quotient_class(w, pt(1, 4), n, m));
  const auto corner = quotient_class(w, pt(0, 0), n, m);
  for (auto p : {pt(4, 0), pt(0, 4), pt(4, 4)}) EXPECT_EQ(quotient_class(w, p, n, m), corner);
  EXPECT_NE(quotient_class(w, pt(1, 1), n, m), quotient_class(w, pt(1, 2), n, m));
}

TEST(Quotient, KleinProjectiveSphere) {
  const Rational n = 4, m = 6;
  EXPECT_EQ(quotient_class(PolygonWord::klein, pt(0, 1), n, m),
            quotient_class(PolygonWord::klein, pt(4, 5), n, m));
  EXPECT_EQ(quotient_class(PolygonWord::klein, pt(1, 0), n, m),
            quotient_class(PolygonWord::klein, pt(1, 6), n, m));
  EXPECT_EQ(quotient_class(PolygonWord::projective, pt(1, 0), n, m),
            quotient_class(PolygonWord::projective, pt(3, 6), n, m));
  EXPECT_EQ(quotient_class(PolygonWord::projective, pt(0, 1), n, m),
            quotient_class(PolygonWord::projective, pt(4, 5), n, m));
  // (x, 0) ~ (0, x·m/n): (2, 0) ~ (0, 3).
  EXPECT_EQ(quotient_class(PolygonWord::sphere, pt(2, 0), n, m),
            quotient_class(PolygonWord::sphere, pt(0, 3), n, m));
  EXPECT_EQ(quotient_class(PolygonWord::sphere, pt(4, 3), n, m),
            quotient_class(PolygonWord::sphere, pt(2, 6), n, m));
}

TEST(Quotient, InteriorIsItsOwnClass) {
  const auto q = quotient_class(PolygonWord::projective, {Rational(1, 3), Rational(5, 2)}, 4, 4);
  EXPECT_EQ(q.class_id, "1/3,5/2");
}

TEST(Quotient, OutsideSquareThrows) {
  EXPECT_THROW(quotient_class(PolygonWord::torus, pt(5, 0), 4, 4), CoverError);
  EXPECT_THROW(quotient_class(PolygonWord::torus, pt(0, -1), 4, 4), CoverError);
}

TEST(Word, Parse) {
  EXPECT_EQ(parse_word("klein"), PolygonWord::klein);
  EXPECT_EQ(to_string(parse_word("projective")), "projective");
  EXPECT_THROW(parse_word("AABBCC"), CoverError);
}

TEST(Brick, TorusFourByFour) {
  const auto c = generate_brick_cover(PolygonWord::torus, 4, 4);
  EXPECT_EQ(c.cells.size(), 16u);
  EXPECT_TRUE(coverage_problems(c).empty());
  EXPECT_TRUE(verify_lcl(c).pass());
}

TEST(Brick, ParameterChecks) {
  EXPECT_THROW(generate_brick_cover(PolygonWord::torus, 3, 4), CoverError);
  EXPECT_THROW(generate_brick_cover(PolygonWord::torus, 2, 4), CoverError);
  EXPECT_THROW(generate_brick_cover(PolygonWord::torus, 4, 1), CoverError);
}

TEST(Brick, TooNarrowFailsVerificationWithReport) {
  try {
    generate_brick_cover(PolygonWord::torus, 4, 2);
    FAIL() << "expected LclError";
  } catch (const LclError& e) {
    EXPECT_FALSE(e.report().pass());
    const std::string expected =
        "with " + std::to_string(e.report().violations.size()) + " violation(s)";
    EXPECT_NE(std::string(e.what()).find(expected), std::string::npos) << e.what();
  }
}

TEST(Brick, ProjectiveAndKleinPass) {
  for (auto w : {PolygonWord::projective, PolygonWord::klein}) {
    const auto c = generate_brick_cover(w, 4, 4);
    // Two half bricks per odd row merge into the mirrored row's brick.
    EXPECT_EQ(c.cells.size(), 14u);
    EXPECT_TRUE(coverage_problems(c).empty());
    EXPECT_TRUE(verify_lcl(c).pass());
  }
}

TEST(Brick, SphereIsRejectedWithReport) {
  EXPECT_THROW(generate_brick_cover(PolygonWord::sphere, 4, 4), LclError);
}

TEST(Features, SideBySideBricks) {
  const auto c = generate_brick_cover(PolygonWord::torus, 4, 4);
  const auto f = pairwise_feature(c, index_of(c, "r0c0"), index_of(c, "r0c1"));
  ASSERT_EQ(f.kind, IntersectionFeature::Kind::segments);
  ASSERT_EQ(f.segments.size(), 1u);
  EXPECT_TRUE(f.points.empty());
  std::set<std::string> ends{f.segments[0].first.class_id, f.segments[0].second.class_id};
  EXPECT_EQ(ends, (std::set<std::string>{"1,0", "1,1"}));
}

TEST(Features, BricksTwoApartAreDisjoint) {
  const auto c = generate_brick_cover(PolygonWord::torus, 4, 4);
  EXPECT_EQ(pairwise_feature(c, index_of(c, "r0c0"), index_of(c, "r0c2")).kind,
            IntersectionFeature::Kind::empty);
}

TEST(Features, OffsetNeighbourSharesHalfBrick) {
  const auto c = generate_brick_cover(PolygonWord::torus, 4, 4);
  // r1c0 spans x in [1/2, 3/2] on row 1; r0c0 spans [0, 1] on row 0.
  const auto f = pairwise_feature(c, index_of(c, "r0c0"), index_of(c, "r1c0"));
  ASSERT_EQ(f.kind, IntersectionFeature::Kind::segments);
  ASSERT_EQ(f.segments.size(), 1u);
  const auto& [a, b] = f.segments[0];
  const auto len = abs(a.representative.x - b.representative.x);
  EXPECT_EQ(len, Rational(1, 2));
  EXPECT_EQ(a.representative.y, 1);
  EXPECT_EQ(b.representative.y, 1);
}

TEST(Features, SegmentAcrossTheSeam) {
  const auto c = generate_brick_cover(PolygonWord::torus, 4, 4);
  const auto f = pairwise_feature(c, index_of(c, "r0c3"), index_of(c, "r0c0"));
  ASSERT_EQ(f.kind, IntersectionFeature::Kind::segments);
  EXPECT_EQ(f.segments.size(), 1u);
}

TEST(Features, Triples) {
  const auto c = generate_brick_cover(PolygonWord::torus, 4, 4);
  const auto t = triple_feature(c, index_of(c, "r0c0"), index_of(c, "r0c1"), index_of(c, "r1c0"));
  ASSERT_EQ(t.kind, IntersectionFeature::Kind::points);
  ASSERT_EQ(t.points.size(), 1u);
  EXPECT_EQ(t.points[0].class_id, "1,1");
  EXPECT_EQ(triple_feature(c, index_of(c, "r0c0"), index_of(c, "r0c2"), index_of(c, "r2c0")).kind,
            IntersectionFeature::Kind::empty);
  EXPECT_EQ(triple_feature(c, index_of(c, "r0c0"), index_of(c, "r0c1"), index_of(c, "r2c2")).kind,
            IntersectionFeature::Kind::empty);
  EXPECT_THROW(triple_feature(c, 0, 0, 1), CoverError);
}

TEST(Lcl, AlignedGridFailsWithLLa) {
  const auto c = generate_aligned_grid(PolygonWord::torus, 4, 4);
  EXPECT_TRUE(coverage_problems(c).empty());
  const auto report = verify_lcl(c);
  EXPECT_FALSE(report.pass());
  EXPECT_GT(report.count(LclAxiom::LL_a), 0u);
  // Diagonal neighbours meet in one point.
  const auto f = pairwise_feature(c, index_of(c, "r0c0"), index_of(c, "r1c1"));
  EXPECT_EQ(f.kind, IntersectionFeature::Kind::points);
}

TEST(Lcl, HellyViolation) {
  Cover c;
  c.word = PolygonWord::torus;
  c.n = 4;
  c.m = 4;
  c.cells.push_back({"D1", {{pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, 2), pt(0, 2)}}});
  c.cells.push_back({"D2", {{pt(2, 0), pt(3, 0), pt(3, 2), pt(2, 2)}}});
  c.cells.push_back({"D3", {{pt(0, 2), pt(3, 2), pt(3, 3), pt(0, 3)}}});
  const auto report = verify_lcl(c);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].axiom, LclAxiom::LC);
  EXPECT_EQ(report.violations[0].cells, (std::vector<std::size_t>{0, 1, 2}));
  // Not a full cover either.
  EXPECT_FALSE(coverage_problems(c).empty());
}

TEST(Lcl, FourFoldCornersAreReported) {
  // Four aligned squares share each grid corner.
  const auto report = verify_lcl(generate_aligned_grid(PolygonWord::torus, 4, 4));
  EXPECT_GT(report.count(LclAxiom::LC), 0u);
  EXPECT_GT(report.count(LclAxiom::LL_c), 0u);
}

TEST(Lcl, SelfTouchingCellIsLLa) {
  // One cell spanning a full row of the torus touches itself across the seam.
  Cover c;
  c.word = PolygonWord::torus;
  c.n = 4;
  c.m = 4;
  for (int r = 0; r < 4; ++r) {
    c.cells.push_back({"row" + std::to_string(r), {{pt(0, r), pt(4, r), pt(4, r + 1), pt(0, r + 1)}}});
  }
  EXPECT_TRUE(coverage_problems(c).empty());
  const auto report = verify_lcl(c);
  EXPECT_GT(report.count(LclAxiom::LL_a), 0u);
}

TEST(Lcl, SubcoversHaveNoLLViolations) {
  const auto full = generate_brick_cover(PolygonWord::torus, 4, 4);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    Cover sub = full;
    sub.cells.clear();
    for (const auto& cell : full.cells) {
      if (rng() % 3) sub.cells.push_back(cell);
    }
    const auto report = verify_lcl(sub);
    EXPECT_EQ(report.count(LclAxiom::LL_a), 0u);
    EXPECT_EQ(report.count(LclAxiom::LL_b), 0u);
    EXPECT_EQ(report.count(LclAxiom::LL_c), 0u);
  }
}

TEST(Coverage, DetectsGapsAndOverlaps) {
  auto c = generate_brick_cover(PolygonWord::torus, 4, 4);
  c.cells.pop_back();
  EXPECT_FALSE(coverage_problems(c).empty());
  auto d = generate_aligned_grid(PolygonWord::torus, 4, 4);
  d.cells.push_back({"extra", {{pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)}}});
  EXPECT_FALSE(coverage_problems(d).empty());
  auto e = generate_aligned_grid(PolygonWord::torus, 4, 4);
  std::reverse(e.cells[0].pieces[0].begin(), e.cells[0].pieces[0].end());
  EXPECT_FALSE(coverage_problems(e).empty());
}

TEST(Nerve, TorusFourByFourHasHexagonalRims) {
  const auto c = generate_brick_cover(PolygonWord::torus, 4, 4);
  const auto g = nerve(c);
  EXPECT_EQ(g.size(), 16u);
  for (Index v = 0; v < g.size(); ++v) {
    const auto r = induced_by_indices(g, g.neighbors(v));
    EXPECT_EQ(r.size(), 6u);
    EXPECT_TRUE(is_chordless_cycle(r));
  }
  EXPECT_EQ(manifold_dimension(g), 2);
  EXPECT_EQ(euler_characteristic(g), 0);
}

TEST(Nerve, TorusMatchesTranslateOracle) {
  for (auto [r, k] : std::vector<std::pair<int, int>>{{4, 4}, {4, 5}, {6, 6}, {8, 4}}) {
    const auto c = generate_brick_cover(PolygonWord::torus, r, k);
    EXPECT_EQ(nerve(c), torus_nerve_oracle(c)) << r << "x" << k;
  }
}

TEST(Nerve, ManifoldsWithClassicalEulerCharacteristic) {
  for (int rows : {4, 6}) {
    for (int cols : {4, 5, 6}) {
      const auto t = nerve(generate_brick_cover(PolygonWord::torus, rows, cols));
      const auto k = nerve(generate_brick_cover(PolygonWord::klein, rows, cols));
      const auto p = nerve(generate_brick_cover(PolygonWord::projective, rows, cols));
      EXPECT_EQ(manifold_dimension(t), 2);
      EXPECT_EQ(manifold_dimension(k), 2);
      EXPECT_EQ(manifold_dimension(p), 2);
      EXPECT_EQ(euler_characteristic(t), 0);
      EXPECT_EQ(euler_characteristic(k), 0);
      EXPECT_EQ(euler_characteristic(p), 1);
    }
  }
}

TEST(Nerve, ProjectiveCompressesToEleven) {
  const auto g = nerve(generate_brick_cover(PolygonWord::projective, 4, 4));
  EXPECT_EQ(compress(g).graph.size(), 11u);
}

TEST(Nerve, RefusesFailingCover) {
  EXPECT_THROW(nerve(generate_aligned_grid(PolygonWord::torus, 4, 4)), LclError);
  auto c = generate_brick_cover(PolygonWord::torus, 4, 4);
  c.cells.pop_back();
  EXPECT_THROW(nerve(c), CoverError);
}

TEST(BoundaryIsomorphism, AllCells) {
  for (auto w : {PolygonWord::torus, PolygonWord::projective}) {
    const auto c = generate_brick_cover(w, 4, 4);
    for (std::size_t i = 0; i < c.cells.size(); ++i) {
      EXPECT_TRUE(boundary_isomorphism_check(c, i)) << to_string(w) << " " << c.cells[i].id;
    }
  }
}

TEST(BoundaryIsomorphism, Preconditions) {
  const auto c = generate_brick_cover(PolygonWord::torus, 4, 4);
  EXPECT_THROW(boundary_isomorphism_check(c, 99), CoverError);
  EXPECT_THROW(boundary_isomorphism_check(generate_aligned_grid(PolygonWord::torus, 4, 4), 0),
               CoverError);
}

TEST(Circle, Covers) {
  EXPECT_EQ(nerve_1d(circle_cover(4)), cycle_graph({"a0", "a1", "a2", "a3"}));
  const auto c6 = nerve_1d(circle_cover(6));
  EXPECT_TRUE(is_chordless_cycle(c6));
  EXPECT_EQ(c6.size(), 6u);
  EXPECT_EQ(manifold_dimension(c6), 1);
  EXPECT_THROW(nerve_1d(circle_cover(3)), LclError);
  EXPECT_FALSE(verify_lcl_1d(circle_cover(2)).pass());
}

TEST(Circle, OverlappingArcsFail) {
  CircleCover c;
  c.length = 4;
  c.arcs = {{"a", 0, 2}, {"b", 1, 3}, {"c", 3, 4}};
  EXPECT_GT(verify_lcl_1d(c).count(LclAxiom::LL_a), 0u);
}

TEST(GridDisk, Basics) {
  EXPECT_EQ(grid_disk_nerve({{0, 0}}).size(), 1u);
  EXPECT_TRUE(is_contractible(grid_disk_nerve({{0, 0}})));
  std::vector<GridSquare> block;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) block.push_back({x, y});
  }
  const auto g = grid_disk_nerve(block);
  EXPECT_EQ(g.edge_count(), 20u);
  EXPECT_TRUE(is_contractible(g));
  EXPECT_THROW(grid_disk_nerve({}), CoverError);
  EXPECT_THROW(grid_disk_nerve({{0, 0}, {5, 5}}), CoverError);
}

TEST(CoverIo, RoundTrip) {
  const auto c = generate_brick_cover(PolygonWord::klein, 4, 4);
  const auto text = cover_to_json(c).dump();
  const auto back = cover_from_json_string(text);
  EXPECT_EQ(cover_to_json(back).dump(), text);
  EXPECT_EQ(nerve(back), nerve(c));
  EXPECT_NE(text.find("\"pieces\""), std::string::npos);
  EXPECT_NE(text.find("\"1/2\""), std::string::npos);
}

TEST(CoverIo, Errors) {
  EXPECT_THROW(cover_from_json_string("[]"), ParseError);
  EXPECT_THROW(cover_from_json_string(R"({"word":"hex","n":4,"m":4,"cells":[]})"), ParseError);
  EXPECT_THROW(
      cover_from_json_string(R"({"word":"torus","n":4,"m":4,"cells":[{"id":"a","vertices":[["1/0","0"]]}]})"),
      ParseError);
  EXPECT_THROW(cover_from_json_string(R"({"word":"torus","n":4,"m":4,"cells":[{"id":"a"}]})"),
               ParseError);
}

TEST(CoverIo, ReportJson) {
  const auto c = generate_aligned_grid(PolygonWord::torus, 4, 4);
  const auto j = lcl_report_to_json(verify_lcl(c), &c);
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_FALSE(j["violations"].empty());
  EXPECT_TRUE(j["violations"][0].contains("axiom"));
}
