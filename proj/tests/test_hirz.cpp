#include "test_util.hpp"

namespace adhmkit {
namespace {

using namespace adhmkit::testing;

TEST(ValidateP1, ScalarCases) {
  EXPECT_TRUE(validate_p1(hirz1(1, 2, 7, {-3}, 1)).passed());
  EXPECT_TRUE(validate_p1(hirz1(2, 2, 1, {3, 6}, 1)).passed());

  const auto r = validate_p1(hirz1(2, 2, 1, {3, 5}, 1));
  EXPECT_EQ(r.overall(), Verdict::fail);
  EXPECT_EQ(r.verdict_of("P1.left[1]"), Verdict::fail);
  EXPECT_EQ(r.verdict_of("P1.right[1]"), Verdict::fail);
}

TEST(ValidateP1, ShapeErrors) {
  HirzADHM d = hirz1(2, 1, 1, {1}, 1);
  EXPECT_THROW(validate_p1(d), ShapeError);
  d = hirz1(1, 1, 1, {1}, 1);
  d.A2 = identity(2);
  EXPECT_THROW(validate_p1(d), ShapeError);
}

TEST(ValidateP2, Cases) {
  HirzADHM d;
  d.n = 1;
  d.A1 = identity(3);
  d.A2 = Matrix::Zero(3, 3);
  d.C = {Matrix::Zero(3, 3)};
  d.e = row({1, 0, 0});
  const auto r = validate_p2(d);
  EXPECT_EQ(r.verdict, Verdict::pass);
  EXPECT_EQ(r.charts, (std::vector<int>{1, 2, 3}));

  d.A1 = Matrix::Zero(3, 3);
  EXPECT_EQ(validate_p2(d).verdict, Verdict::fail);

  EXPECT_EQ(validate_p2(hirz1(1, 1, 0, {0}, 1)).charts, std::vector<int>{1});
}

TEST(ValidateP3, ScalarCases) {
  EXPECT_EQ(validate_p3(hirz1(2, 2, 1, {3, 6}, 0)).overall(), Verdict::fail);
  EXPECT_TRUE(validate_p3(hirz1(2, 2, 1, {3, 6}, 1)).passed());
  EXPECT_TRUE(validate_p3_direct(hirz1(2, 2, 1, {3, 6}, 1)).passed());
}

TEST(ValidateP3, HandcraftedFailure) {
  const HirzADHM d = hirz1(1, 1, 1, {0}, 0);
  EXPECT_EQ(validate_p3_direct(d).overall(), Verdict::fail);
  EXPECT_EQ(validate_p3(d).overall(), Verdict::fail);
}

TEST(ValidateP3, GeneratedPointsPassBothRoutes) {
  Rng rng(3);
  for (int k = 0; k < 40; ++k) {
    const int n = 1 + k % 4, c = 1 + k % 5;
    const HirzADHM d = generate_hirz(rng, n, c, 1e4).data;
    EXPECT_TRUE(validate_p3(d).passed());
    EXPECT_NE(validate_p3_direct(d).overall(), Verdict::fail);
  }
}

TEST(ActGl2, ScalarAndIdentity) {
  const HirzADHM d = hirz1(2, 2, 1, {3, 6}, 5);
  const HirzADHM s = act_gl2(d, scalar(2.0), scalar(3.0));
  EXPECT_CNEAR(s.A1(0, 0), 3.0, 1e-15);
  EXPECT_CNEAR(s.A2(0, 0), 1.5, 1e-15);
  EXPECT_CNEAR(s.C[0](0, 0), 2.0, 1e-15);
  EXPECT_CNEAR(s.C[1](0, 0), 4.0, 1e-15);
  EXPECT_CNEAR(s.e(0), 2.5, 1e-15);
  EXPECT_LT(hirz_distance(act_gl2(d, scalar(1.0), scalar(1.0)), d), 1e-15);
}

TEST(ActGl2, ChartSetInvariant) {
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + k % 3, c = 1 + k % 4;
    const HirzADHM d = generate_hirz(rng, n, c, 1e4).data;
    const HirzADHM moved = act_gl2(d, random_gauge(rng, c, 100.0), random_gauge(rng, c, 100.0));
    EXPECT_EQ(validate_p2(d).charts, validate_p2(moved).charts);
  }
}

TEST(ToChart, ScalarCase) {
  const ChartCoords cc = to_chart(hirz1(1, 2, 1, {3}, 5), 0);
  EXPECT_CNEAR(cc.B(0, 0), 2.0, 1e-15);
  EXPECT_CNEAR(cc.E(0, 0), 3.0, 1e-15);
  EXPECT_CNEAR(cc.e(0), 5.0, 0);
  EXPECT_CNEAR(cc.A2m(0, 0), 1.0, 0);
  EXPECT_THROW(to_chart(hirz1(1, 1, 0, {0}, 1), 0), DomainError);
  EXPECT_THROW(to_chart(hirz1(1, 1, 1, {0}, 1), 2), DomainError);
}

TEST(FromChart, ScalarCases) {
  const HirzADHM d = from_chart(0, {scalar(2.0), scalar(3.0), scalar(5.0)}, scalar(1.0), 2);
  EXPECT_CNEAR(d.A1(0, 0), 2.0, 1e-15);
  EXPECT_CNEAR(d.A2(0, 0), 1.0, 1e-15);
  EXPECT_CNEAR(d.C[0](0, 0), 3.0, 1e-15);
  EXPECT_CNEAR(d.C[1](0, 0), 6.0, 1e-15);
  EXPECT_CNEAR(d.e(0), 5.0, 0);

  for (int m = 0; m <= 1; ++m) {
    const HirzADHM one = from_chart(m, {scalar(0.5), scalar(3.0), scalar(1.0)}, scalar(4.0), 1);
    EXPECT_CNEAR(one.C[0](0, 0), 0.75, 1e-15);
  }
  EXPECT_THROW(from_chart(0, {scalar(1.0), scalar(1.0), scalar(0.0)}, scalar(1.0), 1), DomainError);
  EXPECT_THROW(from_chart(0, {scalar(1.0), scalar(1.0), scalar(1.0)}, scalar(0.0), 1), DomainError);
}

TEST(FromChart, RoundTripAndP1Residual) {
  Rng rng(6);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 4, c = 1 + k % 5;
    const GeneratedHirz g = generate_hirz(rng, n, c, 1e4);
    const HirzADHM built = from_chart(g.chart, g.plane, g.A, n);
    for (const auto& chk : validate_p1(built).checks) EXPECT_LT(chk.residual, 1e-10 * std::max(1.0, chk.scale)) << chk.name;
    const ChartCoords cc = to_chart(built, g.chart);
    EXPECT_LE(props::rel_diff(cc.B, g.plane.b1), 1e-9);
    EXPECT_LE(props::rel_diff(cc.E, g.plane.b2), 1e-9);
    EXPECT_LE(props::rel_diff(cc.A2m, g.A), 1e-9);
  }
}

TEST(ReconstructC, Cases) {
  const Matrix B = mat({{1, 2}, {0, 3}}), D = mat({{1, 0}, {1, 1}});
  const auto C = reconstruct_C(B, D, 0, 3, 4);
  ASSERT_EQ(C.size(), 3u);
  EXPECT_LT(max_abs(C[0] - D), 1e-15);
  EXPECT_LT(max_abs(C[1] - B * D), 1e-14);
  EXPECT_LT(max_abs(C[2] - B * B * D), 1e-13);

  EXPECT_EQ(reconstruct_C(B, D, 2, 1, 4).size(), 1u);

  const auto s = reconstruct_C(scalar(2.0), scalar(3.0), 1, 2, 1);
  EXPECT_CNEAR(s[0](0, 0), -6.0, 1e-14);
  EXPECT_CNEAR(s[1](0, 0), 3.0, 1e-14);
}

TEST(SystRank, Cases) {
  EXPECT_EQ(syst_rank(scalar(1.0), scalar(1.0), 2), 1);
  EXPECT_EQ(syst_rank(scalar(0.0), scalar(0.0), 2), 0);
  Rng rng(10);
  for (int k = 0; k < 10; ++k) {
    const HirzADHM d = generate_hirz(rng, 3, 2, 1e4).data;
    EXPECT_EQ(syst_rank(d.A1, d.A2, 3), 8);
  }
}

TEST(TransitionOmega, Cases) {
  ChartCoords cc{1, 1, 1, scalar(2.0), scalar(5.0), scalar(7.0), scalar(3.0)};
  const ChartCoords same = transition_omega(cc, 1);
  EXPECT_LE(props::rel_diff(same, cc), 1e-15);

  const ChartCoords t = transition_omega(cc, 0);
  EXPECT_EQ(t.m, 0);
  EXPECT_CNEAR(t.B(0, 0), -0.5, 1e-15);
  EXPECT_CNEAR(t.E(0, 0), -10.0, 1e-14);
  EXPECT_CNEAR(t.e(0), 7.0, 0);
  EXPECT_CNEAR(t.A2m(0, 0), -6.0, 1e-14);
}

TEST(TransitionOmega, GlueingTriangle) {
  Rng rng(12);
  int tested = 0;
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 4, c = 1 + k % 5;
    const HirzADHM d = generate_hirz(rng, n, c, 1e4).data;
    const auto charts = validate_p2(d).charts;
    for (int m : charts) {
      if (!props::chart_ok(d, m, 1e4)) continue;
      const ChartCoords zm = to_chart(d, m);
      for (int l : charts) {
        if (!props::chart_ok(d, l, 1e4) || !props::overlap_ok(zm.B, m, l, c, n, 1e4)) continue;
        ++tested;
        EXPECT_LE(props::rel_diff(transition_omega(zm, l), to_chart(d, l)), 1e-8);
      }
    }
  }
  EXPECT_GT(tested, 200);
}

TEST(Canonicalize, ScalarRepresentative) {
  const HirzADHM d = hirz1(2, 2, 1, {3, 6}, 5);
  const CanonicalHirz k = canonicalize(d);
  EXPECT_CNEAR(chart_A2m(k.rep, k.chart)(0, 0), 1.0, 1e-14);
  EXPECT_CNEAR(k.rep.e(0), 1.0, 1e-14);
  EXPECT_LT(hirz_distance(act_gl2(d, k.phi1, k.phi2), k.rep), 1e-12);
}

TEST(Canonicalize, GaugeInvariantAndIdempotent) {
  Rng rng(14);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 4, c = 1 + k % 5;
    const HirzADHM d = generate_hirz(rng, n, c, 1e4).data;
    const HirzADHM moved = act_gl2(d, random_gauge(rng, c, 100.0), random_gauge(rng, c, 100.0));
    const CanonicalHirz a = canonicalize(d), b = canonicalize(moved), again = canonicalize(a.rep);
    EXPECT_EQ(a.chart, b.chart);
    EXPECT_LE(hirz_distance(a.rep, b.rep), 1e-8);
    EXPECT_EQ(again.chart, a.chart);
    EXPECT_LE(hirz_distance(again.rep, a.rep), 1e-8);
  }
}

TEST(OrbitEqual, Cases) {
  Rng rng(15);
  for (int k = 0; k < 30; ++k) {
    const int n = 1 + k % 3, c = 1 + k % 4;
    const HirzADHM d = generate_hirz(rng, n, c, 1e4).data;
    EXPECT_TRUE(orbit_equal(d, d));
    EXPECT_TRUE(orbit_equal(d, act_gl2(d, random_gauge(rng, c, 100.0), random_gauge(rng, c, 100.0))));
  }
  // different pencil roots: [-2 : 1] against [-3 : 1]
  EXPECT_FALSE(orbit_equal(hirz1(1, 2, 1, {1}, 1), hirz1(1, 3, 1, {1}, 1)));
  EXPECT_THROW(orbit_equal(hirz1(1, 2, 1, {1}, 1), hirz1(2, 2, 1, {1, 2}, 1)), ShapeError);
}

TEST(JacobianNullity, SmallCases) {
  const NullityResult r11 = jacobian_nullity(hirz1(1, 2, 1, {3}, 1));
  EXPECT_EQ(r11.ambient, 4);
  EXPECT_EQ(r11.rank, 0);
  EXPECT_EQ(r11.nullity, 4);

  const NullityResult r21 = jacobian_nullity(hirz1(2, 2, 1, {3, 6}, 1));
  EXPECT_EQ(r21.ambient, 5);
  EXPECT_EQ(r21.rank, 1);
  EXPECT_EQ(r21.nullity, 4);

  const HirzADHM d = gen_hirz_valid(GenConfig{5, 2, 2});
  const NullityResult r22 = jacobian_nullity(d);
  EXPECT_EQ(r22.nullity, 12);
  EXPECT_GE(r22.gap, 1e3);
}

TEST(Generators, HirzDeterministicAndValid) {
  const GenConfig cfg{7, 2, 3};
  const HirzADHM a = gen_hirz_valid(cfg), b = gen_hirz_valid(cfg);
  EXPECT_TRUE(validate(a).passed());
  EXPECT_LT(hirz_distance(a, b), 1e-300);
  for (const auto& chk : validate_p1(a).checks) EXPECT_LT(chk.residual, 1e-10 * std::max(1.0, chk.scale));

  Rng rng(cfg.seed);
  const GeneratedHirz g = generate_hirz(rng, 2, 3, 1e4);
  EXPECT_TRUE(validate_p2(g.data).contains(g.chart));
}

}  // namespace
}  // namespace adhmkit
