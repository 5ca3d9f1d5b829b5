#include "test_util.hpp"

namespace adhmkit {
namespace {

using namespace adhmkit::testing;

HirzADHM diagonal_point(int m, int n) {
  const std::vector<JointPair> pts{{1.0, 3.0}, {2.0, 4.0}};
  return from_chart(m, from_points(pts), identity(2), n);
}

TEST(HilbertChow, NormalizedForm) {
  const BinaryForm g = hilbert_chow_form(mat({{1, 0}, {0, 2}}), identity(2));
  ASSERT_EQ(g.degree(), 2);
  EXPECT_CNEAR(g.coeffs[0], 2.0 / 3.0, 1e-14);
  EXPECT_CNEAR(g.coeffs[1], 1.0, 1e-14);
  EXPECT_CNEAR(g.coeffs[2], 1.0 / 3.0, 1e-14);
}

TEST(BaseSupport, DiagonalExample) {
  const auto s = base_support(diagonal_point(0, 1));
  const std::vector<ProjPoint> want{{-1.0, 1.0}, {-2.0, 1.0}};
  EXPECT_TRUE(proj_multisets_close(s.base, want, 1e-12));
  EXPECT_FALSE(s.chart_pairs.has_value());
}

TEST(BaseSupport, ScalarRoot) {
  const auto s = base_support(hirz1(1, 3, 2, {1}, 1));
  ASSERT_EQ(s.base.size(), 1u);
  EXPECT_LT(s.base[0].distance({-1.5, 1.0}), 1e-14);
}

TEST(BaseSupport, RejectsInvalid) { EXPECT_THROW(base_support(hirz1(1, 1, 1, {0}, 0)), DomainError); }

TEST(BaseSupport, GaugeInvariant) {
  Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + k % 3, c = 1 + k % 5;
    const HirzADHM d = generate_hirz(rng, n, c, 1e4).data;
    const HirzADHM moved = act_gl2(d, random_gauge(rng, c, 100.0), random_gauge(rng, c, 100.0));
    EXPECT_TRUE(proj_multisets_close(base_support(d).base, base_support(moved).base, 1e-6));
  }
}

TEST(SpectrumVsPencil, Cases) {
  const HirzADHM d = diagonal_point(0, 2);
  for (int m : validate_p2(d).charts) EXPECT_TRUE(spectrum_vs_pencil_check(d, m));

  Rng rng(32);
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + k % 4, c = 1 + k % 5;
    const HirzADHM r = generate_hirz(rng, n, c, 1e4).data;
    for (int m : validate_p2(r).charts) {
      if (props::chart_ok(r, m, 1e4)) EXPECT_TRUE(spectrum_vs_pencil_check(r, m));
    }
  }
}

TEST(ChartSupport, RecoversPoints) {
  const std::vector<JointPair> pts{{1.0, 3.0}, {2.0, 4.0}};
  for (int m = 0; m <= 2; ++m) {
    const auto s = chart_support(from_chart(m, from_points(pts), identity(2), 2), m);
    ASSERT_TRUE(s.chart_pairs.has_value());
    EXPECT_EQ(s.chart_pairs->m, m);
    EXPECT_TRUE(joint_multisets_close(s.chart_pairs->pairs, pts, 1e-12));
  }
  const auto one = chart_support(hirz1(1, 2, 1, {3}, 1), 0);
  ASSERT_EQ(one.chart_pairs->pairs.size(), 1u);
  EXPECT_CNEAR(one.chart_pairs->pairs[0].first, 2.0, 1e-14);
  EXPECT_CNEAR(one.chart_pairs->pairs[0].second, 3.0, 1e-14);
}

TEST(UmMembership, Cases) {
  const std::vector<Complex> e0{1.0, 0.0, 0.0};
  EXPECT_TRUE(um_membership(e0, 0, 2));
  const std::vector<Complex> x{0.0, 1.0, 2.0};
  EXPECT_FALSE(um_membership(x, 0, 2));

  Rng rng(33);
  for (int k = 0; k < 100; ++k) {
    const int c = 1 + k % 6;
    std::vector<Complex> p;
    for (int i = 0; i <= c; ++i) p.push_back(rng.cnormal());
    bool any = false;
    for (int m = 0; m <= c; ++m) any = any || um_membership(p, m, c);
    EXPECT_TRUE(any);
  }
  const std::vector<Complex> zero{0.0, 0.0};
  EXPECT_THROW(um_membership(zero, 0, 1), DomainError);
}

TEST(COne, YTildeExample) {
  const HirzADHM d = ytilde_to_p1({2, 1.0, 2.0, 2.0, 1.0});
  EXPECT_CNEAR(d.A1(0, 0), 1.0, 0);
  EXPECT_CNEAR(d.A2(0, 0), 2.0, 0);
  EXPECT_CNEAR(d.C[0](0, 0), 2.0, 1e-15);
  EXPECT_CNEAR(d.C[1](0, 0), 1.0, 1e-15);
  EXPECT_CNEAR(d.e(0), 1.0, 0);

  const TotPoint t = p1_to_tot(d);
  EXPECT_CNEAR(t.y1, 1.0, 1e-15);
  EXPECT_CNEAR(t.y2, 2.0, 1e-15);
  EXPECT_CNEAR(t.u1, 4.0, 1e-15);
  EXPECT_CNEAR(t.u2, 1.0, 1e-15);
  EXPECT_LE(tot_relation_residual(t), 1e-12);
}

TEST(COne, NOneBothCharts) {
  // x1 = x2 when n = 1, so either chart gives C1 = x
  EXPECT_CNEAR(ytilde_to_p1({1, 3.0, 1.0, 5.0, 5.0}).C[0](0, 0), 5.0, 0);
  EXPECT_CNEAR(ytilde_to_p1({1, 1.0, 3.0, 5.0, 5.0}).C[0](0, 0), 5.0, 0);
  const TotPoint t = p1_to_tot(hirz1(1, 2, 3, {5}, 1));
  EXPECT_CNEAR(t.u1, 15.0, 1e-14);
  EXPECT_CNEAR(t.u2, 10.0, 1e-14);
}

TEST(COne, Errors) {
  EXPECT_THROW(ytilde_to_p1({2, 0.0, 0.0, 1.0, 1.0}), DomainError);
  EXPECT_THROW(ytilde_to_p1({2, 1.0, 2.0, 1.0, 1.0}), DomainError);
  EXPECT_THROW(p1_to_tot(gen_hirz_valid(GenConfig{1, 1, 2})), ShapeError);
}

TEST(COne, OrbitInvariance) {
  Rng rng(34);
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + k % 4;
    const HirzADHM d = generate_hirz(rng, n, 1, 1e4).data;
    const HirzADHM moved = act_gl2(d, scalar(rng.cnormal() + 2.0), scalar(rng.cnormal() + 2.0));
    EXPECT_TRUE(tot_equivalent(p1_to_tot(d), p1_to_tot(moved), 1e-9));
    EXPECT_LE(tot_relation_residual(p1_to_tot(d)), 1e-12);
  }
}

}  // namespace
}  // namespace adhmkit
