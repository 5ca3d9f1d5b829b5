#include "test_util.hpp"

namespace adhmkit {
namespace {

using namespace adhmkit::testing;

PlaneADHM plane1(Complex b1, Complex b2, Complex e) { return {scalar(b1), scalar(b2), scalar(e)}; }

TEST(ValidatePlane, Cases) {
  EXPECT_TRUE(validate_plane(plane1(0, 0, 1)).passed());
  EXPECT_EQ(validate_plane(plane1(3, -2, 0)).verdict_of("T2"), Verdict::fail);

  const PlaneADHM diag{mat({{1, 0}, {0, 2}}), mat({{3, 0}, {0, 4}}), row({1, 0})};
  const auto r = validate_plane(diag);
  EXPECT_EQ(r.verdict_of("T1"), Verdict::pass);
  EXPECT_EQ(r.verdict_of("T2"), Verdict::fail);
}

TEST(ValidatePlane, NonCommutingFailsT1) {
  const PlaneADHM d{mat({{0, 1}, {0, 0}}), mat({{0, 0}, {1, 0}}), row({1, 1})};
  EXPECT_EQ(validate_plane(d).verdict_of("T1"), Verdict::fail);
}

TEST(ValidatePlane, ShapeErrors) {
  EXPECT_THROW(validate_plane({identity(2), identity(3), row({1, 0})}), ShapeError);
  EXPECT_THROW(validate_plane({identity(2), identity(2), row({1})}), ShapeError);
}

TEST(ActGl, IdentityAndScalar) {
  const PlaneADHM d = gen_plane_valid(GenConfig{3, 1, 3});
  EXPECT_LT(plane_distance(act_gl(d, identity(3)), d), 1e-15);

  const PlaneADHM s = act_gl(plane1(2, 3, 5), scalar(2.0));
  EXPECT_CNEAR(s.b1(0, 0), 2.0, 1e-15);
  EXPECT_CNEAR(s.b2(0, 0), 3.0, 1e-15);
  EXPECT_CNEAR(s.e(0), 2.5, 1e-15);
  EXPECT_THROW(act_gl(d, Matrix::Zero(3, 3)), DomainError);
}

TEST(ActGl, PreservesValidity) {
  Rng rng(21);
  for (int k = 0; k < 50; ++k) {
    const int c = 1 + k % 5;
    const PlaneADHM d = gen_plane_valid(rng, c, 1e4);
    EXPECT_TRUE(validate_plane(act_gl(d, random_gauge(rng, c, 100.0))).passed());
    const PlaneADHM bad = props::plane_with_bad_covector(rng, c, 1e4);
    EXPECT_EQ(validate_plane(act_gl(bad, random_gauge(rng, c, 100.0))).overall(), Verdict::fail);
  }
}

TEST(FromPoints, Cases) {
  const std::vector<JointPair> one{{1.0, 3.0}};
  const PlaneADHM d = from_points(one);
  EXPECT_CNEAR(d.b1(0, 0), 1.0, 0);
  EXPECT_CNEAR(d.b2(0, 0), 3.0, 0);
  EXPECT_CNEAR(d.e(0), 1.0, 0);

  const std::vector<JointPair> two{{1.0, 3.0}, {2.0, 4.0}};
  const PlaneADHM d2 = from_points(two);
  EXPECT_TRUE(validate_plane(d2).passed());
  EXPECT_TRUE(joint_multisets_close(joint_spectrum(d2), two, 1e-12));

  const std::vector<JointPair> dup{{0.0, 0.0}, {0.0, 0.0}};
  EXPECT_THROW(from_points(dup), DomainError);
}

TEST(JointSpectrum, Cases) {
  const PlaneADHM zero{Matrix::Zero(2, 2), Matrix::Zero(2, 2), row({1, 0})};
  const std::vector<JointPair> zeros{{0.0, 0.0}, {0.0, 0.0}};
  EXPECT_TRUE(joint_multisets_close(joint_spectrum(zero.b1, zero.b2), zeros, 1e-12));

  const std::vector<JointPair> repeated{{1.0, 5.0}, {1.0, 5.0}};
  EXPECT_TRUE(joint_multisets_close(joint_spectrum(mat({{1, 1}, {0, 1}}), mat({{5, 2}, {0, 5}})), repeated, 1e-7));
}

TEST(JointSpectrum, PairsSurviveConjugation) {
  Rng rng(8);
  for (int k = 0; k < 30; ++k) {
    const int c = 2 + k % 4;
    std::vector<JointPair> pts;
    for (Complex z : distinct_complex(rng, c, 0.3)) pts.emplace_back(z, rng.cnormal());
    const PlaneADHM d = act_gl(from_points(pts), random_gauge(rng, c, 100.0));
    EXPECT_TRUE(joint_multisets_close(joint_spectrum(d), pts, 1e-7));
  }
}

TEST(TransitionPlane, Cases) {
  const PlaneADHM d = plane1(2, 5, 7);
  const PlaneADHM same = transition_plane(d, 1, 1, 1, 1);
  EXPECT_LT(plane_distance(same, d), 1e-15);

  const PlaneADHM t1 = transition_plane(d, 1, 0, 1, 1);
  EXPECT_CNEAR(t1.b1(0, 0), -0.5, 1e-15);
  EXPECT_CNEAR(t1.b2(0, 0), -10.0, 1e-15);
  EXPECT_CNEAR(t1.e(0), 7.0, 0);

  const PlaneADHM t2 = transition_plane(d, 1, 0, 2, 1);
  EXPECT_CNEAR(t2.b1(0, 0), -0.5, 1e-15);
  EXPECT_CNEAR(t2.b2(0, 0), 20.0, 1e-14);
}

TEST(TransitionPlane, OverlapFailureIsDomainError) {
  // c - s b1 = 0 - b1 vanishes for b1 = 0 when (c, s) = (0, 1)
  EXPECT_THROW(transition_plane(plane1(0, 1, 1), 1, 0, 1, 1), DomainError);
}

TEST(CanonicalForm, Cases) {
  const CanonicalPlane k = canonical_form(plane1(2, 3, 5));
  EXPECT_CNEAR(k.form.b1(0, 0), 2.0, 1e-15);
  EXPECT_CNEAR(k.form.b2(0, 0), 3.0, 1e-15);
  EXPECT_CNEAR(k.form.e(0), 1.0, 0);

  const PlaneADHM d{mat({{1, 0}, {0, 2}}), mat({{3, 0}, {0, 4}}), row({1, 1})};
  const CanonicalPlane k2 = canonical_form(d);
  EXPECT_LT(max_abs(k2.form.b1 - mat({{0, 1}, {-2, 3}})), 1e-12);
  EXPECT_LT(max_abs(k2.form.e - row({1, 0})), 1e-15);
  EXPECT_LT(plane_distance(act_gl(d, k2.gauge), k2.form), 1e-12);

  EXPECT_THROW(canonical_form(plane1(1, 1, 0)), DomainError);
}

TEST(CanonicalForm, IdempotentAndInvariant) {
  Rng rng(13);
  for (int k = 0; k < 50; ++k) {
    const int c = 1 + k % 5;
    const PlaneADHM d = gen_plane_valid(rng, c, 1e4);
    const PlaneADHM once = canonical_form(d).form;
    EXPECT_LE(plane_distance(canonical_form(once).form, once), 1e-8);
    EXPECT_TRUE(orbit_equal_plane(d, act_gl(d, random_gauge(rng, c, 100.0))));
  }
}

TEST(OrbitEqualPlane, Cases) {
  const std::vector<JointPair> a{{1.0, 3.0}}, b{{2.0, 3.0}};
  EXPECT_FALSE(orbit_equal_plane(from_points(a), from_points(b)));
  const PlaneADHM d = gen_plane_valid(GenConfig{9, 1, 4});
  EXPECT_TRUE(orbit_equal_plane(d, d));
  EXPECT_THROW(orbit_equal_plane(d, plane1(1, 1, 1)), ShapeError);
}

TEST(Generators, PlaneDeterministicAndValid) {
  const GenConfig cfg{42, 1, 3};
  const PlaneADHM a = gen_plane_valid(cfg), b = gen_plane_valid(cfg);
  EXPECT_TRUE(validate_plane(a).passed());
  EXPECT_EQ(a.b1, b.b1);
  EXPECT_EQ(a.b2, b.b2);
  EXPECT_EQ(a.e, b.e);

  const PlaneADHM one = gen_plane_valid(GenConfig{1, 1, 1});
  EXPECT_NE(one.e(0), Complex{0.0});
}

}  // namespace
}  // namespace adhmkit
