#include "support.hpp"

#include <gtest/gtest.h>

using namespace valnag;
using fixtures::q;

TEST(EpsilonBounds, Fixtures) {
  auto b2 = epsilon_bounds(fixtures::v2_with_h());
  EXPECT_EQ(b2.lo, Surd(q(1, 5)));
  EXPECT_EQ(*b2.hi, Surd(q(1, 3)));
  EXPECT_EQ(b2.hi_witness, Provenance::curve("H"));

  auto b1 = epsilon_bounds(fixtures::v1());
  EXPECT_TRUE(b1.pinned());
  EXPECT_EQ(b1.lo, Surd(1));

  auto m3 = fixtures::v3(3);
  auto lb = p2_epsilon_lower_bound(m3, {std::vector<int>{1, 2, 3}, false});
  EXPECT_EQ(lb.t, 3);
  EXPECT_EQ(lb.delta0, 0);
  EXPECT_EQ(lb.value, q(1, 4));
  EXPECT_EQ(*epsilon_bounds(m3).hi, Surd(q(1, 3)));

  auto bare = epsilon_bounds(fixtures::v2_bare());
  EXPECT_EQ(*bare.hi, Surd::sqrt_of(q(1, 6)));
}

TEST(EpsilonBounds, DeltaZeroFormula) {
  // beta_{g+1} large relative to t makes delta0 positive: 5 free points, default line {1,2}
  BlowupModel m(ProximityStructure::all_free(5), SurfaceModel::p2(), {});
  auto lb = p2_epsilon_lower_bound(m);
  EXPECT_EQ(lb.t, 2);
  EXPECT_EQ(lb.delta0, 1);  // ceil((5 - 4)/4)
  EXPECT_EQ(lb.value, q(1, 5));
  EXPECT_EQ(ceil_plus(q(-6, 9)), 0);
  EXPECT_EQ(ceil_plus(q(1, 4)), 1);
  EXPECT_EQ(ceil_plus(q(0)), 0);
}

TEST(MuHatBounds, Fixtures) {
  auto m2 = fixtures::v2_with_h();
  auto b2 = mu_hat_bounds(m2, Surd(q(1, 5)));
  EXPECT_EQ(b2.lo, Surd(3));
  EXPECT_EQ(*b2.hi, Surd(5));
  auto b1 = mu_hat_bounds(fixtures::v1(), Surd(1));
  EXPECT_TRUE(b1.pinned());
  auto b3 = mu_hat_bounds(fixtures::v3(2), epsilon_bounds(fixtures::v3(2)).lo);
  EXPECT_EQ(b3.lo, Surd(2));
  EXPECT_EQ(*b3.hi, Surd(3));
  auto open = mu_hat_bounds(fixtures::v2_bare(), Surd(0));
  EXPECT_FALSE(open.hi);
}

TEST(Submaximal, IntegerTest) {
  EXPECT_TRUE(submaximal_test(fixtures::v2_with_h(), 0));
  EXPECT_TRUE(submaximal_test(fixtures::v3(2), 0));
  BlowupModel m1(ProximityStructure::all_free(1), SurfaceModel::p2(), {fixtures::line("L", {1})});
  EXPECT_FALSE(submaximal_test(m1, 0));
  BlowupModel m0(ProximityStructure::all_free(1), SurfaceModel::p2(), {fixtures::line("L", {0})});
  EXPECT_THROW(submaximal_test(m0, 0), InvalidInput);
  EXPECT_THROW(p2_pin(m1, 0), InvalidInput);
}

TEST(Pin, P2Rule) {
  auto p = p2_pin(fixtures::v2_with_h(), 0);
  EXPECT_EQ(p.eps, q(1, 3));
  EXPECT_EQ(p.mu, 3);
  for (int r = 2; r <= 10; ++r) {
    auto pr = p2_pin(fixtures::v3(r), 0);
    EXPECT_EQ(pr.eps, q(1, r));
    EXPECT_EQ(pr.mu, r);
    EXPECT_EQ(pr.eps * pr.mu, 1);
  }
}

TEST(Verdict, Fixtures) {
  auto v2 = minimality_verdict(fixtures::v2_with_h());
  EXPECT_EQ(v2.status, Status::NonMinimal);
  EXPECT_EQ(*v2.witness, "H");
  EXPECT_FALSE(v2.conditional);
  EXPECT_FALSE(v2.conjecture_applicable);
  EXPECT_EQ(*v2.eps_exact, Surd(q(1, 3)));
  EXPECT_EQ(*v2.mu_exact, Surd(3));

  auto v1 = minimality_verdict(fixtures::v1());
  EXPECT_EQ(v1.status, Status::Minimal);
  EXPECT_EQ(*v1.eps_exact, Surd(1));
  EXPECT_FALSE(v1.conditional);

  auto bare = minimality_verdict(fixtures::v2_bare());
  EXPECT_EQ(bare.status, Status::Undetermined);
  EXPECT_EQ(bare.mu.lo, Surd::sqrt_of(6));
  EXPECT_EQ(*bare.mu.hi, Surd(5));
  EXPECT_FALSE(bare.eps_exact);
}

TEST(Verdict, ConjectureThreshold) {
  // nine free points: beta = 9 = 9 beta0^2
  EXPECT_TRUE(conjecture_applicable(compute_invariants(ProximityStructure::all_free(9))));
  EXPECT_FALSE(conjecture_applicable(compute_invariants(ProximityStructure::all_free(8))));
  EXPECT_FALSE(conjecture_applicable(compute_invariants(fixtures::v2_structure())));
}

TEST(Verdict, Assertions) {
  Assertions good;
  good.status = Status::NonMinimal;
  good.eps = q(1, 3);
  EXPECT_TRUE(minimality_verdict(fixtures::v2_with_h(), {}, good).errors.empty());
  Assertions bad;
  bad.eps = q(1, 4);
  EXPECT_EQ(minimality_verdict(fixtures::v2_with_h(), {}, bad).errors.size(), 1u);
  Assertions pin;
  pin.eps = q(1, 4);
  auto v = minimality_verdict(fixtures::v2_bare(), {}, pin);
  EXPECT_TRUE(v.errors.empty());
  EXPECT_EQ(*v.eps_exact, Surd(q(1, 4)));
  EXPECT_EQ(v.eps.lo_witness.kind, Provenance::Kind::Assertion);
}

TEST(Verdict, RandomIntervalSanity) {
  std::mt19937 rng(21);
  for (int k = 0; k < 150; ++k) {
    auto ps = fixtures::random_structure(rng, 8);
    std::vector<CurveRecord> catalog;
    int n = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int l = 0; l < n; ++l) {
      int deg = std::uniform_int_distribution<int>(1, 3)(rng);
      catalog.push_back(CurveRecord::p2_curve("C" + std::to_string(l), deg, fixtures::random_germ(rng, ps.size(), 2)));
    }
    BlowupModel m(ps, SurfaceModel::p2(), catalog);
    Verdict v;
    try {
      v = minimality_verdict(m);
    } catch (const InvalidInput&) {
      continue;  // random catalogs may contradict the lower bound
    }
    EXPECT_LE(v.eps.lo, *v.eps.hi);
    EXPECT_LE(v.mu.lo, *v.mu.hi);
    if (v.status == Status::NonMinimal) {
      const auto& c = m.curves()[*v.witness_index];
      Integer val = m.curve_value(*v.witness_index);
      EXPECT_LT(c.dC * c.dC * Rational(m.invariants().beta_last()), Rational(val * val));
      EXPECT_EQ(*v.eps_exact * *v.mu_exact, Surd(1));
      EXPECT_LT(*v.eps_exact * Surd(Rational(m.invariants().beta_last())), *v.mu_exact);
    }
    if (v.status == Status::Minimal) {
      EXPECT_EQ(v.eps.lo, epsilon_cap(m));
    }
  }
}

TEST(NefThreshold, Fixtures) {
  EXPECT_EQ(*nef_threshold(fixtures::v2_with_h()), 3);
  EXPECT_EQ(*nef_threshold(fixtures::v1()), 1);
  EXPECT_EQ(*nef_threshold(fixtures::v3(4)), 4);
}

TEST(ComputingCurves, Fixtures) {
  EXPECT_EQ(computing_curve_count(fixtures::v2_with_h(), Surd(q(1, 3))).count, 1);
  EXPECT_EQ(computing_curve_count(fixtures::v3(2), Surd(q(1, 2))).count, 1);
  auto r1 = computing_curve_count(fixtures::v1(), Surd(1));
  EXPECT_EQ(r1.count, 0);
  EXPECT_FALSE(r1.exceeds_rho);
}

TEST(TheoremSuite, Fixtures) {
  auto run = [](const BlowupModel& m, const Surd& eps, const Surd& mu) {
    auto w = chamber_walk(m);
    auto poly = nok_polygon(m, w, Flag::free());
    return theorem_suite(m, eps, mu, w, poly, triangle_T(build_flag_data(m, Flag::free()), mu));
  };
  auto s1 = run(fixtures::v1(), 1, 1);
  EXPECT_TRUE(s1.consistent);
  for (bool b : s1.items()) EXPECT_TRUE(b);
  auto s2 = run(fixtures::v2_with_h(), q(1, 3), 3);
  EXPECT_TRUE(s2.consistent);
  for (bool b : s2.items()) EXPECT_FALSE(b);
  EXPECT_TRUE(s2.eps_beta_lt_mu);
  EXPECT_TRUE(s2.eps_mu_le_d2);
  auto s3 = run(fixtures::v3(2), q(1, 2), 2);
  EXPECT_TRUE(s3.consistent);
  for (bool b : s3.items()) EXPECT_FALSE(b);
}
