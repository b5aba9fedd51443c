#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace valnag;
using fixtures::q;

namespace {

Component E(int i) { return Component::exceptional(i); }
Component C(int k) { return Component::curve(k); }

/// Zariski decomposition invariants checked from scratch.
void expect_valid(const BlowupModel& m, const NumericalClass& x, const ZariskiDecomposition& dec) {
  const auto& lat = m.lattice();
  NumericalClass n;
  for (const auto& [c, v] : dec.negative) {
    EXPECT_GT(v, 0);
    n += v * m.component_class(c);
  }
  EXPECT_EQ(dec.positive + n, x);
  for (const auto& c : m.components()) {
    Rational pc = lat.intersect(dec.positive, m.component_class(c));
    if (dec.negative.count(c)) EXPECT_EQ(pc, 0);
    else EXPECT_GE(pc, 0);
  }
  std::vector<NumericalClass> support;
  for (const auto& c : dec.neg_set()) support.push_back(m.component_class(c));
  EXPECT_TRUE(negative_definite(gram_matrix(lat, support)));
}

}  // namespace

TEST(Zariski, AmpleClassIsItsOwnPositivePart) {
  auto m = fixtures::v2_with_h();
  auto dec = zariski_decompose(m, m.lattice().pullback_D());
  EXPECT_TRUE(dec.negative.empty());
  EXPECT_EQ(dec.positive, m.lattice().pullback_D());
  EXPECT_TRUE(dec.conditional);
}

// hand-solved 2x2 system: (D_t - aE~1 - bH~).E~1 = 0, (D_t - aE~1 - bH~).H~ = 0 at t = 3/2
TEST(Zariski, V3TwoAtThreeHalves) {
  auto m = fixtures::v3(2);
  auto dec = zariski_decompose(m, m.segment_class(q(3, 2)));
  EXPECT_EQ(dec.neg_set(), (std::vector<Component>{E(1), C(0)}));
  EXPECT_EQ(dec.coefficient(E(1)), q(3, 4));
  EXPECT_EQ(dec.coefficient(C(0)), q(1, 2));
  EXPECT_GT(m.lattice().intersect(dec.positive, m.component_class(E(2))), 0);
  expect_valid(m, m.segment_class(q(3, 2)), dec);
}

TEST(Zariski, V2AtTwoIsOnTheBoundary) {
  auto m = fixtures::v2_with_h();
  auto dec = zariski_decompose(m, m.segment_class(q(2)));
  EXPECT_EQ(dec.neg_set(), (std::vector<Component>{E(1), E(2)}));
  EXPECT_EQ(dec.coefficient(E(1)), q(2, 3));
  EXPECT_EQ(dec.coefficient(E(2)), q(1));
  EXPECT_EQ(m.lattice().intersect(dec.positive, m.component_class(C(0))), 0);
}

TEST(Zariski, NotPseudoeffective) {
  auto m = fixtures::v3(2);
  EXPECT_THROW(zariski_decompose(m, m.segment_class(q(3))), NotPseudoeffective);
  EXPECT_THROW(zariski_decompose(m, Rational(-1) * m.lattice().pullback_D()), NotPseudoeffective);
}

TEST(ClosedForm, Examples) {
  auto m3 = fixtures::v3(2);
  auto c1 = segment_closed_form(m3, q(1));
  EXPECT_TRUE(c1.valid);
  EXPECT_EQ(c1.decomposition.coefficient(E(1)), q(1, 2));
  EXPECT_EQ(m3.lattice().intersect(c1.decomposition.positive, m3.component_class(C(0))), 0);
  EXPECT_FALSE(segment_closed_form(m3, q(3, 2)).valid);

  auto m2 = fixtures::v2_with_h();
  auto c2 = segment_closed_form(m2, q(1));
  EXPECT_TRUE(c2.valid);
  EXPECT_EQ(c2.decomposition.coefficient(E(1)), q(2, 6));
  EXPECT_EQ(c2.decomposition.coefficient(E(2)), q(3, 6));
  EXPECT_EQ(m2.lattice().intersect(c2.decomposition.positive, m2.component_class(C(0))), q(1, 2));

  auto c0 = segment_closed_form(m2, q(0));
  EXPECT_TRUE(c0.decomposition.negative.empty());
  EXPECT_EQ(c0.decomposition.positive, m2.lattice().pullback_D());
}

TEST(ClosedForm, AgreesWithGeneralAlgorithmOnRandomStructures) {
  std::mt19937 rng(77);
  for (int k = 0; k < 250; ++k) {
    auto ps = fixtures::random_structure(rng, 8);
    auto catalog = fixtures::random_lines(rng, ps);
    BlowupModel m(ps, SurfaceModel::p2(), catalog);
    auto walk = chamber_walk(m);
    Rational first = walk.intervals.front().end.is_rational() ? walk.intervals.front().end.rational()
                                                                : walk.intervals.front().end.rational_below(0);
    Rational t = first * Rational(std::uniform_int_distribution<int>(1, 99)(rng), 100);
    auto closed = segment_closed_form(m, t);
    EXPECT_TRUE(closed.valid);
    auto dec = zariski_decompose(m, m.segment_class(t));
    EXPECT_EQ(closed.decomposition, dec);
    expect_valid(m, m.segment_class(t), dec);
  }
}

TEST(Zariski, OrderIndependence) {
  std::mt19937 rng(31);
  for (int k = 0; k < 60; ++k) {
    auto ps = fixtures::random_structure(rng, 6);
    std::vector<CurveRecord> catalog;
    for (int l = 0; l < 3; ++l)
      catalog.push_back(CurveRecord::p2_curve("C" + std::to_string(l), std::uniform_int_distribution<int>(1, 3)(rng),
                                              fixtures::random_germ(rng, ps.size(), 2)));
    auto shuffled = catalog;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    BlowupModel a(ps, SurfaceModel::p2(), catalog), b(ps, SurfaceModel::p2(), shuffled);
    Rational t = fixtures::random_rational(rng, 8, 4);
    if (t < 0) t = -t;
    std::optional<ZariskiDecomposition> da, db;
    try {
      da = zariski_decompose(a, a.segment_class(t));
    } catch (const NotPseudoeffective&) {
    }
    try {
      db = zariski_decompose(b, b.segment_class(t));
    } catch (const NotPseudoeffective&) {
    }
    ASSERT_EQ(da.has_value(), db.has_value());
    if (!da) continue;
    EXPECT_EQ(da->positive, db->positive);
    std::map<std::string, Rational> na, nb;
    for (const auto& [c, v] : da->negative) na[a.component_name(c)] = v;
    for (const auto& [c, v] : db->negative) nb[b.component_name(c)] = v;
    EXPECT_EQ(na, nb);
  }
}

TEST(Walk, V3Two) {
  auto m = fixtures::v3(2);
  auto w = chamber_walk(m);
  verify_walk(m, w);
  EXPECT_EQ(w.breakpoints, (std::vector<Rational>{0, 1}));
  EXPECT_EQ(w.t_end, Surd(2));
  EXPECT_EQ(w.reason, WalkEnd::SelfIntersectionZero);
  ASSERT_EQ(w.intervals.size(), 2u);
  EXPECT_EQ(w.intervals[0].neg_set, (std::vector<Component>{E(1)}));
  EXPECT_EQ(w.intervals[1].neg_set, (std::vector<Component>{E(1), C(0)}));
  EXPECT_EQ(w.intervals[0].coefficients.at(E(1)), (Affine{0, q(1, 2)}));
  EXPECT_EQ(w.intervals[1].coefficients.at(E(1)), (Affine{0, q(1, 2)}));
  EXPECT_EQ(w.intervals[1].coefficients.at(C(0)), (Affine{-1, 1}));
  // P_2 = 0
  const auto& last = w.intervals[1];
  EXPECT_TRUE((last.p_const + q(2) * last.p_slope).is_zero());
}

TEST(Walk, V2WithH) {
  auto m = fixtures::v2_with_h();
  auto w = chamber_walk(m);
  verify_walk(m, w);
  EXPECT_EQ(w.breakpoints, (std::vector<Rational>{0, 2}));
  EXPECT_EQ(w.t_end, Surd(3));
  ASSERT_EQ(w.intervals.size(), 2u);
  EXPECT_EQ(w.intervals[0].neg_set, (std::vector<Component>{E(1), E(2)}));
  EXPECT_EQ(w.intervals[1].neg_set, (std::vector<Component>{E(1), E(2), C(0)}));
  EXPECT_EQ(w.intervals[1].p_square, (Quadratic{3, -2, q(1, 3)}));
  EXPECT_EQ(w.intervals[0].p_square, (Quadratic{1, 0, q(-1, 6)}));
}

TEST(Walk, V1AndSurdEnd) {
  auto m1 = fixtures::v1();
  auto w1 = chamber_walk(m1);
  EXPECT_EQ(w1.intervals.size(), 1u);
  EXPECT_TRUE(w1.intervals[0].neg_set.empty());
  EXPECT_EQ(w1.t_end, Surd(1));
  EXPECT_EQ(w1.intervals[0].p_square, (Quadratic{1, 0, -1}));

  auto m2 = fixtures::v2_bare();
  auto w2 = chamber_walk(m2);
  verify_walk(m2, w2);
  EXPECT_EQ(w2.intervals.size(), 1u);
  EXPECT_EQ(w2.t_end, Surd::sqrt_of(6));
}

TEST(Walk, UserBound) {
  auto m = fixtures::v2_with_h();
  auto w = chamber_walk(m, {q(5, 2)});
  verify_walk(m, w);
  EXPECT_EQ(w.reason, WalkEnd::UserBound);
  EXPECT_EQ(w.t_end, Surd(q(5, 2)));
  EXPECT_EQ(w.intervals.size(), 2u);
  auto past = chamber_walk(m, {q(7)});
  EXPECT_EQ(past.reason, WalkEnd::SelfIntersectionZero);
  EXPECT_THROW(chamber_walk(m, {q(-1)}), InvalidInput);
}

TEST(Walk, RandomWalksAreConsistent) {
  std::mt19937 rng(99);
  int checked = 0;
  for (int k = 0; k < 1500; ++k) {
    auto ps = fixtures::random_structure(rng, 7);
    std::vector<CurveRecord> catalog;
    int n = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int l = 0; l < n; ++l) {
      int deg = std::uniform_int_distribution<int>(1, 3)(rng);
      catalog.push_back(CurveRecord::p2_curve("C" + std::to_string(l), deg, fixtures::random_germ(rng, ps.size(), deg)));
    }
    BlowupModel m(ps, SurfaceModel::p2(), catalog);
    if (!fixtures::plausible_catalog(m)) continue;
    ++checked;
    auto w = chamber_walk(m);
    verify_walk(m, w);
    for (std::size_t i = 1; i < w.intervals.size(); ++i) {
      const auto& before = w.intervals[i - 1].neg_set;
      const auto& after = w.intervals[i].neg_set;
      EXPECT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end()) ||
                  !w.diagnostics.empty());
      EXPECT_NE(before, after);
    }
    // P_t^2 vanishes at t_end and only there
    if (w.reached_zero_square()) {
      EXPECT_EQ(w.intervals.back().p_square.at(w.t_end), Surd(0));
    }
  }
  EXPECT_GE(checked, 100);
}

TEST(Walk, ChamberCountCheck) {
  auto w3 = chamber_walk(fixtures::v3(2));
  auto rep = chamber_count_check(w3, 1, 1);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.bound, 2);
  EXPECT_EQ(rep.chambers, 2u);
  auto w1 = chamber_walk(fixtures::v1());
  EXPECT_EQ(chamber_count_check(w1, 0, 1).chambers, 1u);
  EXPECT_FALSE(chamber_count_check(w1, 0, 1).at_least_two);
}
