#include "support.hpp"

#include <gtest/gtest.h>

using namespace valnag;
using fixtures::q;

namespace {

std::vector<ExactPoint> pts(std::initializer_list<std::pair<Rational, Rational>> xs) {
  std::vector<ExactPoint> out;
  for (const auto& [x, y] : xs) out.push_back({x, y});
  return out;
}

NokPolygon polygon_of(const BlowupModel& m, const Flag& f = Flag::free()) {
  auto w = chamber_walk(m);
  auto p = nok_polygon(m, w, f);
  verify_polygon(m, w, p);
  return p;
}

}  // namespace

TEST(FlagData, FreeSlopes) {
  auto d2 = build_flag_data(fixtures::v2_with_h(), Flag::free());
  EXPECT_EQ(d2.slope_low, 0);
  EXPECT_EQ(d2.slope_high, q(1, 6));
  auto d3 = build_flag_data(fixtures::v3(2), Flag::free());
  EXPECT_EQ(d3.slope_high, q(1, 2));
}

TEST(FlagData, SatelliteOnV2) {
  auto m = fixtures::v2_with_h();
  auto d1 = build_flag_data(m, Flag::satellite(1));
  EXPECT_EQ(d1.phi_eta, 2);
  EXPECT_EQ(d1.slope_low, q(2, 6));
  EXPECT_EQ(d1.slope_high, q(3, 6));
  EXPECT_TRUE(d1.identity_holds);
  EXPECT_TRUE(d1.eta_precedes_r);
  EXPECT_EQ(d1.gstar, 1);
  auto d2 = build_flag_data(m, Flag::satellite(2));
  EXPECT_EQ(d2.phi_eta, 3);
  EXPECT_TRUE(d2.identity_holds);
  EXPECT_FALSE(d2.eta_precedes_r);
  EXPECT_THROW(build_flag_data(m, Flag::satellite(3)), InvalidInput);
  EXPECT_THROW(build_flag_data(fixtures::v3(3), Flag::satellite(1)), InvalidInput);
}

TEST(FlagData, SatelliteIdentityOnRandomStructures) {
  std::mt19937 rng(4);
  int checked = 0;
  for (int k = 0; k < 600; ++k) {
    auto ps = fixtures::random_structure(rng, 10);
    BlowupModel m(ps, SurfaceModel::p2(), {});
    for (int eta = 1; eta < m.r(); ++eta) {
      if (!valid_satellite_flag(m, eta)) continue;
      auto d = build_flag_data(m, Flag::satellite(eta));
      EXPECT_TRUE(d.identity_holds) << "r=" << m.r() << " eta=" << eta;
      EXPECT_EQ(d.slope_high - d.slope_low, Rational(Integer(1), m.invariants().beta_last()));
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(Triangles, Examples) {
  auto d2 = build_flag_data(fixtures::v2_with_h(), Flag::free());
  EXPECT_EQ(triangle_T(d2, Surd(3)), pts({{0, 0}, {3, 0}, {3, q(1, 2)}}));
  EXPECT_EQ(inner_triangle(d2, Surd(q(1, 3))), pts({{0, 0}, {2, 0}, {2, q(1, 3)}}));
  auto d1 = build_flag_data(fixtures::v1(), Flag::free());
  EXPECT_EQ(triangle_T(d1, Surd(1)), pts({{0, 0}, {1, 0}, {1, 1}}));
  EXPECT_EQ(inner_triangle(d1, Surd(1)), triangle_T(d1, Surd(1)));
  auto d3 = build_flag_data(fixtures::v3(2), Flag::free());
  EXPECT_EQ(triangle_T(d3, Surd(2)), pts({{0, 0}, {2, 0}, {2, 1}}));
  EXPECT_EQ(inner_triangle(d3, Surd(q(1, 2))), pts({{0, 0}, {1, 0}, {1, q(1, 2)}}));
  EXPECT_EQ(geom::area(geom::convex_hull(triangle_T(d2, Surd(3)))), Surd(q(9, 12)));
}

TEST(Polygon, Fixtures) {
  auto p3 = polygon_of(fixtures::v3(2));
  EXPECT_EQ(p3.vertices, pts({{0, 0}, {1, q(1, 2)}, {2, 0}}));
  EXPECT_EQ(p3.area, Surd(q(1, 2)));
  EXPECT_TRUE(p3.complete);

  auto p3m = polygon_of(fixtures::v3(2, true));
  EXPECT_EQ(p3m.vertices, pts({{0, 0}, {1, 0}, {2, 1}}));
  EXPECT_EQ(p3m.area, Surd(q(1, 2)));
  ASSERT_EQ(p3m.pieces.size(), 2u);
  EXPECT_EQ(p3m.pieces[1].alpha, (Affine{-1, 1}));
  EXPECT_EQ(p3m.pieces[1].beta, (Affine{0, q(1, 2)}));

  auto p2 = polygon_of(fixtures::v2_with_h());
  EXPECT_EQ(p2.vertices, pts({{0, 0}, {2, q(1, 3)}, {3, 0}}));
  EXPECT_EQ(p2.area, Surd(q(1, 2)));

  auto p1 = polygon_of(fixtures::v1());
  EXPECT_EQ(p1.vertices, pts({{0, 0}, {1, 0}, {1, 1}}));
}

TEST(Polygon, SurdEndpoint) {
  auto p = polygon_of(fixtures::v2_bare());
  ASSERT_EQ(p.vertices.size(), 3u);
  EXPECT_EQ(p.vertices[1].x, Surd::sqrt_of(6));
  EXPECT_EQ(p.area, Surd(q(1, 2)));
  EXPECT_TRUE(p.complete);
}

TEST(Polygon, IncompleteUnderUserBound) {
  auto m = fixtures::v2_with_h();
  auto w = chamber_walk(m, {q(5, 2)});
  auto p = nok_polygon(m, w, Flag::free());
  verify_polygon(m, w, p);
  EXPECT_FALSE(p.complete);
  EXPECT_LT(Surd(2) * p.area, Surd(1));
}

TEST(Polygon, SandwichOnFixtures) {
  struct Case {
    BlowupModel model;
    Rational eps, mu;
    bool equal;
  };
  std::vector<Case> cases{{fixtures::v1(), 1, 1, true},
                          {fixtures::v2_with_h(), q(1, 3), 3, false},
                          {fixtures::v3(2), q(1, 2), 2, false},
                          {fixtures::v3(5), q(1, 5), 5, false}};
  for (const auto& c : cases) {
    for (int eta = 0; eta < c.model.r(); ++eta) {
      Flag f = eta == 0 ? Flag::free() : Flag::satellite(eta);
      if (eta && !valid_satellite_flag(c.model, eta)) continue;
      auto data = build_flag_data(c.model, f);
      auto poly = polygon_of(c.model, f);
      auto outer = triangle_T(data, c.mu);
      auto inner = inner_triangle(data, c.eps);
      EXPECT_TRUE(geom::contains(poly.boundary, inner));
      EXPECT_TRUE(geom::contains(geom::convex_hull(outer), poly.boundary));
      EXPECT_EQ(geom::same_polygon(poly.vertices, outer), c.equal);
      EXPECT_TRUE(poly.complete);
    }
  }
}

TEST(Polygon, RandomAreaLaw) {
  std::mt19937 rng(12);
  for (int k = 0; k < 80; ++k) {
    auto ps = fixtures::random_structure(rng, 7);
    std::vector<CurveRecord> catalog;
    GermMultVector g(static_cast<std::size_t>(ps.size()), Integer(0));
    g[0] = 1;
    if (ps.size() > 1) g[1] = 1;
    catalog.push_back(fixtures::line("L", g));
    BlowupModel m(ps, SurfaceModel::p2(), catalog);
    auto w = chamber_walk(m);
    for (int eta = 0; eta < m.r(); ++eta) {
      Flag f = eta == 0 ? Flag::free() : Flag::satellite(eta);
      if (eta && !valid_satellite_flag(m, eta)) continue;
      auto p = nok_polygon(m, w, f);
      verify_polygon(m, w, p);
      EXPECT_EQ(p.complete, w.reached_zero_square());
    }
  }
}

TEST(Geometry, Containment) {
  auto tri = geom::convex_hull(pts({{0, 0}, {2, 0}, {0, 2}}));
  EXPECT_TRUE(geom::contains(tri, ExactPoint{1, 1}));
  EXPECT_FALSE(geom::contains(tri, ExactPoint{q(3, 2), q(3, 2)}));
  EXPECT_TRUE(geom::contains(tri, ExactPoint{0, 0}));
  EXPECT_EQ(geom::convex_hull(pts({{0, 0}, {1, 0}, {2, 0}, {1, 1}})).size(), 3u);
}
