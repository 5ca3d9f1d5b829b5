#pragma once

// Registry of seeded properties covering every module, a runner with JSON
// counterexample dumps, and a table of deliberately broken operations used
// to check that the properties can fail at all.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adhmkit/angles_sigma.hpp"
#include "adhmkit/errors.hpp"
#include "adhmkit/geometry_bridge.hpp"
#include "adhmkit/hirz_adhm.hpp"
#include "adhmkit/json_io.hpp"
#include "adhmkit/matrix_kernel.hpp"
#include "adhmkit/plane_adhm.hpp"
#include "adhmkit/random.hpp"

namespace adhmkit {

// ---------------------------------------------------------------------------
// swappable operations
// ---------------------------------------------------------------------------

/// The operations the suite calls indirectly, so that a mutant can replace them.
struct Ops {
  std::string name = "reference";
  std::function<PlaneADHM(const PlaneADHM&, long, long, int, int, const Tolerance&)> transition_plane =
      [](const PlaneADHM& d, long m, long l, int n, int cBase, const Tolerance& tol) {
        return adhmkit::transition_plane(d, m, l, n, cBase, tol);
      };
  std::function<ValidationReport(const HirzADHM&, const Tolerance&)> validate_p1 =
      [](const HirzADHM& d, const Tolerance& tol) { return adhmkit::validate_p1(d, tol); };
};

inline std::vector<std::string> mutant_names() { return {"flip_b2_exponent", "drop_p1_right_family"}; }

inline Ops mutant_ops(std::string_view name) {
  Ops ops;
  ops.name = std::string(name);
  if (name == "flip_b2_exponent") {
    ops.transition_plane = [](const PlaneADHM& d, long m, long l, int n, int cBase, const Tolerance& tol) {
      PlaneADHM out = adhmkit::transition_plane(d, m, l, n, cBase, tol);
      const Matrix factor = overlap_factor(d.b1, m, l, cBase);
      out.b2 = matrix_power(factor.inverse(), n) * d.b2;
      return out;
    };
  } else if (name == "drop_p1_right_family") {
    ops.validate_p1 = [](const HirzADHM& d, const Tolerance& tol) {
      ValidationReport full = adhmkit::validate_p1(d, tol);
      ValidationReport kept;
      for (auto& c : full.checks) {
        if (c.name.rfind("P1.right", 0) != 0) kept.checks.push_back(std::move(c));
      }
      return kept;
    };
  } else if (name != "reference") {
    throw DomainError("unknown mutant: " + std::string(name));
  }
  return ops;
}

/// omega_lm with the transition taken from `ops`.
inline ChartCoords transition_omega(const Ops& ops, const ChartCoords& cc, int l, const Tolerance& tol) {
  ChartCoords out = cc;
  const PlaneADHM moved = ops.transition_plane(cc.plane(), cc.m, l, cc.n, cc.c, tol);
  out.m = l;
  out.B = moved.b1;
  out.E = moved.b2;
  out.e = moved.e;
  out.A2m = cc.A2m * overlap_factor(cc.B, cc.m, l, cc.c);
  return out;
}

// ---------------------------------------------------------------------------
// cases and properties
// ---------------------------------------------------------------------------

struct CaseContext {
  Rng rng;
  int n = 1;
  int c = 1;
  double cond_cap = 1e4;
  Tolerance tol;
  const Ops* ops = nullptr;
};

struct CaseOutcome {
  enum class Status { pass, fail, skip };
  Status status = Status::pass;
  std::string detail;
  json witness;
  int indeterminate = 0;  ///< sub-checks that could not be decided
};

inline CaseOutcome case_pass() { return {}; }
inline CaseOutcome case_skip(std::string why) { return {CaseOutcome::Status::skip, std::move(why), {}, 0}; }
inline CaseOutcome case_fail(std::string why, json witness = {}) {
  return {CaseOutcome::Status::fail, std::move(why), std::move(witness), 0};
}

struct IntRange {
  int lo = 1;
  int hi = 64;
};

struct Property {
  std::string name;
  std::string module;
  IntRange n_range;
  IntRange c_range;
  std::function<CaseOutcome(CaseContext&)> run;
};

namespace props {

inline double rel_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  const double scale = std::max(a.norm(), b.norm());
  return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
}

inline double rel_diff(const PlaneADHM& a, const PlaneADHM& b) {
  return std::max({rel_diff(a.b1, b.b1), rel_diff(a.b2, b.b2), rel_diff(a.e, b.e)});
}

inline double rel_diff(const ChartCoords& a, const ChartCoords& b) {
  return std::max({rel_diff(a.B, b.B), rel_diff(a.E, b.E), rel_diff(a.e, b.e), rel_diff(a.A2m, b.A2m)});
}

inline double rel_diff(const HirzADHM& a, const HirzADHM& b) {
  double d = std::max({rel_diff(a.A1, b.A1), rel_diff(a.A2, b.A2), rel_diff(a.e, b.e)});
  if (a.C.size() != b.C.size()) return std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < a.C.size(); ++q) d = std::max(d, rel_diff(a.C[q], b.C[q]));
  return d;
}

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline double condition(const Matrix& m) {
  const auto sv = singular_values(m);
  return sv(sv.size() - 1) == 0.0 ? std::numeric_limits<double>::infinity() : sv(0) / sv(sv.size() - 1);
}

/// The overlap factor f and the power f^n applied to b2 both well conditioned.
inline bool overlap_ok(const Matrix& b1, int m, int l, int cBase, int n, double cap) {
  const Matrix f = overlap_factor(b1, m, l, cBase);
  return condition(f) <= cap && condition(matrix_power(f, n)) <= cap;
}

/// Explicit gauges in invariance checks: cond_cap^(1/2) per side, so a
/// two-sided action stays below cond_cap.
inline double gauge_cond(double cond_cap) { return std::max(std::sqrt(cond_cap), 1.0 + 1e-9); }

/// A_2m well conditioned and B_m small enough that its powers up to n-1,
/// which build the C_q, stay within the cap.
inline bool chart_ok(const HirzADHM& d, int m, double cap) {
  const Matrix a2m = chart_A2m(d, m);
  if (!(condition(a2m) <= cap)) return false;
  const double b = op_norm(a2m.partialPivLu().solve(chart_A1m(d, m)));
  return std::pow(std::max(1.0, b), d.n - 1) <= cap;
}

/// Random complex vector with entries of comparable size.
inline std::vector<Complex> random_vector(Rng& rng, int size) {
  std::vector<Complex> v;
  for (int k = 0; k < size; ++k) v.push_back(rng.cnormal());
  return v;
}

/// Plane data failing only (T2): the covector annihilates one common eigenvector.
inline PlaneADHM plane_with_bad_covector(Rng& rng, int c, double cond_cap) {
  const auto beta = distinct_complex(rng, c, kMinEigenSeparation);
  const Matrix p = random_gauge(rng, c, generator_cond(cond_cap));
  const Matrix p_inv = p.inverse();
  Eigen::VectorXcd b(c), w(c);
  RowVector row = random_matrix(rng, 1, c);
  for (int k = 0; k < c; ++k) {
    b(k) = beta[static_cast<std::size_t>(k)];
    w(k) = rng.cnormal();
  }
  row(rng.index(0, c - 1)) = 0.0;
  return {p * b.asDiagonal() * p_inv, p * w.asDiagonal() * p_inv, row * p_inv};
}

}  // namespace props

/// A point with (P1) and (P2) but not (P3), with simple pencil roots.
inline HirzADHM p3_invalid_point(Rng& rng, int n, int c, double cond_cap, const Tolerance& tol = {}) {
  const int m = rng.index(0, c);
  const PlaneADHM plane = props::plane_with_bad_covector(rng, c, cond_cap);
  const Matrix A = random_gauge(rng, c, generator_cond(cond_cap));
  HirzADHM d = assemble_from_chart(m, plane, A, n, tol);
  return act_gl2(d, random_gauge(rng, c, generator_cond(cond_cap)), random_gauge(rng, c, generator_cond(cond_cap)), tol);
}

/// Twenty fixed (P3)-violating points: one by hand, the rest seeded over n and c.
inline std::vector<HirzADHM> p3_invalid_corpus(const Tolerance& tol = {}) {
  std::vector<HirzADHM> out;
  HirzADHM hand;
  hand.n = 1;
  hand.A1 = Matrix::Constant(1, 1, 1.0);
  hand.A2 = Matrix::Constant(1, 1, 1.0);
  hand.C = {Matrix::Zero(1, 1)};
  hand.e = RowVector::Zero(1);
  out.push_back(hand);
  for (int k = 1; k < 20; ++k) {
    Rng rng(mix_seed(0x5eedULL + static_cast<std::uint64_t>(k)));
    const int n = 1 + (k % 4);
    const int c = 1 + (k % 5);
    out.push_back(p3_invalid_point(rng, n, c, 1e4, tol));
  }
  return out;
}

// ---------------------------------------------------------------------------
// the registry
// ---------------------------------------------------------------------------

namespace props {

using S = CaseOutcome;

inline std::vector<Property> kernel_properties() {
  std::vector<Property> out;

  out.push_back({"kernel.eigenvalues_similarity_invariant", "matrix-kernel", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const Matrix m = random_matrix(x.rng, x.c, x.c);
                   const Matrix p = random_gauge(x.rng, x.c, x.cond_cap);
                   const auto a = eigenvalues(m);
                   const auto b = eigenvalues(p * m * p.inverse());
                   if (!multisets_close(a, b, x.tol.eq_rel)) {
                     return case_fail("spectra differ after similarity", {{"M", jsonio::matrix_to(m)}, {"P", jsonio::matrix_to(p)}});
                   }
                   return case_pass();
                 }});

  out.push_back({"kernel.rank_plus_nullity", "matrix-kernel", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const int rows = x.c, cols = x.c + x.rng.index(0, 2);
                   const int r = x.rng.index(0, std::min(rows, cols));
                   const Matrix m = random_matrix(x.rng, rows, r) * random_matrix(x.rng, r, cols);
                   const int rank = rank_tol(m, x.tol);
                   const auto ker = kernel_basis(m, x.tol);
                   if (rank + static_cast<int>(ker.size()) != cols || rank != r) {
                     return case_fail("rank " + std::to_string(rank) + " + nullity " + std::to_string(ker.size()) +
                                          " vs cols " + std::to_string(cols) + ", built rank " + std::to_string(r),
                                      {{"M", jsonio::matrix_to(m)}});
                   }
                   for (std::size_t i = 0; i < ker.size(); ++i) {
                     if ((m * ker[i]).norm() > 1e-10 * std::max(1.0, m.norm())) return case_fail("kernel vector not annihilated");
                     for (std::size_t j = 0; j < ker.size(); ++j) {
                       const double want = i == j ? 1.0 : 0.0;
                       if (std::abs(ker[i].dot(ker[j]) - want) > 1e-12) return case_fail("kernel basis not orthonormal");
                     }
                   }
                   return case_pass();
                 }});

  out.push_back({"kernel.factored_form_roots", "matrix-kernel", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const int degree = x.rng.index(1, 8);
                   std::vector<ProjPoint> roots;
                   while (static_cast<int>(roots.size()) < degree) {
                     const int pick = x.rng.index(0, 9);
                     ProjPoint p = pick == 0   ? ProjPoint::normalized(1.0, 0.0)
                                   : pick == 1 ? ProjPoint::normalized(0.0, 1.0)
                                               : ProjPoint::normalized(x.rng.cnormal(), x.rng.cnormal());
                     bool separated = true;
                     for (const auto& q : roots) separated = separated && q.distance(p) > 0.2;
                     if (!separated) continue;
                     roots.push_back(p);
                     if (static_cast<int>(roots.size()) < degree && x.rng.index(0, 3) == 0) roots.push_back(p);
                   }
                   // multiply the linear factors lam2 nu1 - lam1 nu2
                   std::vector<Complex> coeffs{1.0};
                   for (const auto& r : roots) {
                     std::vector<Complex> next(coeffs.size() + 1, 0.0);
                     for (std::size_t p = 0; p < coeffs.size(); ++p) {
                       next[p] += coeffs[p] * r.lam2;
                       next[p + 1] -= coeffs[p] * r.lam1;
                     }
                     coeffs = std::move(next);
                   }
                   const BinaryForm f{coeffs};
                   const auto found = binary_form_roots(f, x.tol);
                   if (!proj_multisets_close(found, roots, x.tol.root_cluster)) {
                     return case_fail("roots of a factored form not recovered", to_json(f));
                   }
                   return case_pass();
                 }});
  return out;
}

inline std::vector<Property> sigma_properties() {
  std::vector<Property> out;

  out.push_back({"sigma.defining_identity", "angles-sigma", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const int h = x.rng.index(0, 8), cb = x.rng.index(1, 8), m = x.rng.index(-cb, cb);
                   const AnglePair a = angle_pair(cb, m);
                   const SigmaMatrix s = sigma_matrix(h, m, cb);
                   const Complex mu1 = x.rng.cnormal(), mu2 = x.rng.cnormal();
                   for (int p = 0; p <= h; ++p) {
                     const Complex lhs = ipow(a.sin_val * mu1 + a.cos_val * mu2, p) * ipow(a.cos_val * mu1 - a.sin_val * mu2, h - p);
                     Complex rhs{0.0};
                     double scale = std::abs(lhs);
                     for (int q = 0; q <= h; ++q) {
                       const Complex term = s.entries(p, q) * ipow(mu2, q) * ipow(mu1, h - q);
                       rhs += term;
                       scale += std::abs(term);
                     }
                     if (std::abs(lhs - rhs) > 1e-10 * scale) {
                       return case_fail("row " + std::to_string(p) + " breaks the defining identity", to_json(s));
                     }
                   }
                   return case_pass();
                 }});

  out.push_back({"sigma.identity_at_zero", "angles-sigma", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const int h = x.rng.index(0, 8), cb = x.rng.index(1, 8);
                   const SigmaMatrix s = sigma_matrix(h, 0, cb);
                   if ((s.entries - Eigen::MatrixXd::Identity(h + 1, h + 1)).cwiseAbs().maxCoeff() > 1e-14) {
                     return case_fail("sigma_0 is not the identity", to_json(s));
                   }
                   return case_pass();
                 }});

  out.push_back({"sigma.group_law", "angles-sigma", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const int h = x.rng.index(0, 8), cb = x.rng.index(1, 8);
                   const int m = x.rng.index(-cb, cb), l = x.rng.index(-cb, cb);
                   const Eigen::MatrixXd prod = sigma_matrix(h, m, cb).entries * sigma_matrix(h, l, cb).entries;
                   const Eigen::MatrixXd sum = sigma_matrix(h, m + l, cb).entries;
                   const double err = (prod - sum).cwiseAbs().rowwise().sum().maxCoeff();
                   if (err > 1e-10) {
                     return case_fail("group law off by " + fmt(err),
                                      {{"h", h}, {"c", cb}, {"m", m}, {"l", l}});
                   }
                   return case_pass();
                 }});

  out.push_back({"sigma.invertible", "angles-sigma", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const int h = x.rng.index(0, 8), cb = x.rng.index(1, 8), m = x.rng.index(-cb, cb);
                   const Eigen::MatrixXd s = sigma_matrix(h, m, cb).entries;
                   const Eigen::MatrixXd inv = sigma_matrix(h, -m, cb).entries;
                   Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
                   const auto& sv = svd.singularValues();
                   if (sv(sv.size() - 1) <= 1e-12 * sv(0) ||
                       (s * inv - Eigen::MatrixXd::Identity(h + 1, h + 1)).cwiseAbs().maxCoeff() > 1e-10) {
                     return case_fail("sigma_m is not inverted by sigma_-m", {{"h", h}, {"c", cb}, {"m", m}});
                   }
                   return case_pass();
                 }});

  out.push_back({"sigma.edge_rows_binomial", "angles-sigma", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const int h = x.rng.index(0, 8), cb = x.rng.index(1, 8), m = x.rng.index(-cb, cb);
                   const AnglePair a = angle_pair(cb, m);
                   const Eigen::MatrixXd s = sigma_matrix(h, m, cb).entries;
                   for (int q = 0; q <= h; ++q) {
                     const double bq = static_cast<double>(binomial(h, q));
                     const double first = bq * std::pow(a.cos_val, h - q) * std::pow(-a.sin_val, q);
                     const double last = bq * std::pow(a.sin_val, h - q) * std::pow(a.cos_val, q);
                     if (std::abs(s(0, q) - first) > 1e-12 * bq || std::abs(s(h, q) - last) > 1e-12 * bq) {
                       return case_fail("edge rows differ from (c - s x)^h, (s + c x)^h", {{"h", h}, {"c", cb}, {"m", m}});
                     }
                   }
                   return case_pass();
                 }});

  out.push_back({"sigma.rotation_h1", "angles-sigma", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const int cb = x.rng.index(1, 8), m = x.rng.index(-2 * cb - 2, 2 * cb + 2);
                   const double t = std::numbers::pi * m / (cb + 1);
                   Eigen::Matrix2d rot;
                   rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
                   if ((sigma_matrix(1, m, cb).entries - rot).cwiseAbs().maxCoeff() > 1e-14) {
                     return case_fail("sigma^1_m is not the rotation by pi m/(c+1)", {{"c", cb}, {"m", m}});
                   }
                   return case_pass();
                 }});

  out.push_back({"angles.unit_mirror_distinct", "angles-sigma", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const int cb = x.c;
                   for (int m = -2 * (cb + 1); m <= 2 * (cb + 1); ++m) {
                     const AnglePair a = angle_pair(cb, m), b = angle_pair(cb, -m);
                     const double t = std::numbers::pi * m / (cb + 1);
                     if (std::abs(a.cos_val * a.cos_val + a.sin_val * a.sin_val - 1.0) > 1e-14 ||
                         std::abs(a.cos_val - std::cos(t)) > 1e-14 || std::abs(a.sin_val - std::sin(t)) > 1e-14 ||
                         a.cos_val != b.cos_val || a.sin_val != -b.sin_val) {
                       return case_fail("angle pair inconsistent", {{"c", cb}, {"m", m}});
                     }
                   }
                   for (int m = 0; m <= cb; ++m) {
                     for (int l = m + 1; l <= cb; ++l) {
                       const AnglePair a = angle_pair(cb, m), b = angle_pair(cb, l);
                       const ProjPoint pa = ProjPoint::normalized(a.sin_val, a.cos_val);
                       const ProjPoint pb = ProjPoint::normalized(b.sin_val, b.cos_val);
                       if (pa.distance(pb) < 1e-3) return case_fail("sample points coincide", {{"c", cb}, {"m", m}, {"l", l}});
                     }
                   }
                   return case_pass();
                 }});
  return out;
}

inline std::vector<Property> plane_properties() {
  std::vector<Property> out;

  out.push_back({"plane.cocycle_identity", "plane-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const PlaneADHM d = gen_plane_valid(x.rng, x.c, x.cond_cap, x.tol);
                   const int m = x.rng.index(0, x.c);
                   const PlaneADHM t = x.ops->transition_plane(d, m, m, x.n, x.c, x.tol);
                   if (rel_diff(t, d) > 1e-8) return case_fail("transition m -> m is not the identity", to_json(d));
                   return case_pass();
                 }});

  out.push_back({"plane.cocycle_inverse", "plane-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const PlaneADHM d = gen_plane_valid(x.rng, x.c, x.cond_cap, x.tol);
                   const int m = x.rng.index(0, x.c), l = x.rng.index(0, x.c);
                   if (!overlap_ok(d.b1, m, l, x.c, x.n, x.cond_cap)) return case_skip("ill-conditioned overlap");
                   const PlaneADHM there = x.ops->transition_plane(d, m, l, x.n, x.c, x.tol);
                   const PlaneADHM back = x.ops->transition_plane(there, l, m, x.n, x.c, x.tol);
                   const double err = rel_diff(back, d);
                   if (err > 1e-8) {
                     return case_fail("m -> l -> m differs by " + fmt(err),
                                      {{"point", to_json(d)}, {"m", m}, {"l", l}, {"n", x.n}});
                   }
                   return case_pass();
                 }});

  out.push_back({"plane.cocycle_composition", "plane-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const PlaneADHM d = gen_plane_valid(x.rng, x.c, x.cond_cap, x.tol);
                   const int m = x.rng.index(0, x.c), l = x.rng.index(0, x.c), k = x.rng.index(0, x.c);
                   if (!overlap_ok(d.b1, m, l, x.c, x.n, x.cond_cap) || !overlap_ok(d.b1, m, k, x.c, x.n, x.cond_cap)) {
                     return case_skip("ill-conditioned overlap");
                   }
                   const PlaneADHM dl = x.ops->transition_plane(d, m, l, x.n, x.c, x.tol);
                   if (!overlap_ok(dl.b1, l, k, x.c, x.n, x.cond_cap)) return case_skip("ill-conditioned overlap");
                   const PlaneADHM two = x.ops->transition_plane(dl, l, k, x.n, x.c, x.tol);
                   const PlaneADHM one = x.ops->transition_plane(d, m, k, x.n, x.c, x.tol);
                   const double err = rel_diff(two, one);
                   if (err > 1e-8) {
                     return case_fail("m -> l -> k differs from m -> k by " + fmt(err),
                                      {{"point", to_json(d)}, {"m", m}, {"l", l}, {"k", k}, {"n", x.n}});
                   }
                   return case_pass();
                 }});

  out.push_back({"plane.transition_preserves_validity", "plane-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const PlaneADHM d = gen_plane_valid(x.rng, x.c, x.cond_cap, x.tol);
                   const int m = x.rng.index(0, x.c), l = x.rng.index(0, x.c);
                   if (!overlap_ok(d.b1, m, l, x.c, x.n, x.cond_cap)) return case_skip("ill-conditioned overlap");
                   const PlaneADHM t = x.ops->transition_plane(d, m, l, x.n, x.c, x.tol);
                   if (!validate_plane(t, x.tol).passed()) {
                     return case_fail("transition output fails (T1)/(T2)", {{"point", to_json(d)}, {"m", m}, {"l", l}});
                   }
                   return case_pass();
                 }});

  out.push_back({"plane.gauge_preserves_validity", "plane-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const PlaneADHM good = gen_plane_valid(x.rng, x.c, x.cond_cap, x.tol);
                   const PlaneADHM bad = plane_with_bad_covector(x.rng, x.c, x.cond_cap);
                   const Matrix phi = random_gauge(x.rng, x.c, gauge_cond(x.cond_cap));
                   for (const PlaneADHM* d : {&good, &bad}) {
                     const auto before = validate_plane(*d, x.tol), after = validate_plane(act_gl(*d, phi, x.tol), x.tol);
                     if (before.verdict_of("T1") != after.verdict_of("T1") || before.verdict_of("T2") != after.verdict_of("T2")) {
                       return case_fail("verdict changed under GL(c)", {{"point", to_json(*d)}, {"phi", jsonio::matrix_to(phi)}});
                     }
                   }
                   if (!validate_plane(good, x.tol).passed() || validate_plane(bad, x.tol).verdict_of("T2") != Verdict::fail) {
                     return case_fail("generator produced unexpected verdicts");
                   }
                   return case_pass();
                 }});

  out.push_back({"plane.joint_spectrum_gauge_invariant", "plane-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const PlaneADHM d = gen_plane_valid(x.rng, x.c, x.cond_cap, x.tol);
                   const Matrix phi = random_gauge(x.rng, x.c, gauge_cond(x.cond_cap));
                   const auto a = joint_spectrum(d, x.tol), b = joint_spectrum(act_gl(d, phi, x.tol), x.tol);
                   if (!joint_multisets_close(a, b, 1e-7)) {
                     return case_fail("joint spectrum changed under GL(c)", {{"point", to_json(d)}, {"phi", jsonio::matrix_to(phi)}});
                   }
                   return case_pass();
                 }});

  out.push_back({"plane.from_points_inverts_joint_spectrum", "plane-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const PlaneADHM d = gen_plane_valid(x.rng, x.c, x.cond_cap, x.tol);
                   const auto pts = joint_spectrum(d, x.tol);
                   if (!orbit_equal_plane(from_points(pts, x.tol), d, x.tol)) {
                     return case_fail("from_points(joint_spectrum(d)) is not in the orbit of d", to_json(d));
                   }
                   return case_pass();
                 }});

  out.push_back({"plane.canonical_form_witness", "plane-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const PlaneADHM d = act_gl(gen_plane_valid(x.rng, x.c, x.cond_cap, x.tol),
                                              random_gauge(x.rng, x.c, gauge_cond(x.cond_cap)), x.tol);
                   const CanonicalPlane k = canonical_form(d, x.tol);
                   if (plane_distance(act_gl(d, k.gauge, x.tol), k.form) > 1e-8) {
                     return case_fail("returned gauge does not reproduce the canonical form", to_json(d));
                   }
                   if (!orbit_equal_plane(k.form, d, x.tol)) return case_fail("canonical form left the orbit", to_json(d));
                   return case_pass();
                 }});

  out.push_back({"plane.canonical_form_idempotent", "plane-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const PlaneADHM d = gen_plane_valid(x.rng, x.c, x.cond_cap, x.tol);
                   const PlaneADHM once = canonical_form(d, x.tol).form;
                   const PlaneADHM twice = canonical_form(once, x.tol).form;
                   if (plane_distance(once, twice) > x.tol.eq_rel) return case_fail("canonical form not idempotent", to_json(d));
                   return case_pass();
                 }});

  out.push_back({"plane.orbit_equality", "plane-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const PlaneADHM d = gen_plane_valid(x.rng, x.c, x.cond_cap, x.tol);
                   const PlaneADHM other = gen_plane_valid(x.rng, x.c, x.cond_cap, x.tol);
                   const Matrix phi = random_gauge(x.rng, x.c, gauge_cond(x.cond_cap));
                   if (!orbit_equal_plane(d, d, x.tol)) return case_fail("orbit equality not reflexive", to_json(d));
                   if (!orbit_equal_plane(d, act_gl(d, phi, x.tol), x.tol)) {
                     return case_fail("gauge-equivalent points judged different", {{"point", to_json(d)}, {"phi", jsonio::matrix_to(phi)}});
                   }
                   if (orbit_equal_plane(d, other, x.tol)) {
                     return case_fail("points with different joint spectra judged equal", {{"a", to_json(d)}, {"b", to_json(other)}});
                   }
                   return case_pass();
                 }});
  return out;
}

inline std::vector<Property> hirz_properties() {
  std::vector<Property> out;

  out.push_back({"hirz.generator_valid", "hirz-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const GeneratedHirz g = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol);
                   if (!validate(g.data, x.tol).passed()) return case_fail("generated point is not valid", to_json(g.data));
                   if (!validate_p2(g.data, x.tol).contains(g.chart)) {
                     return case_fail("generating chart missing from the chart set", to_json(g.data));
                   }
                   for (const auto& chk : validate_p1(g.data, x.tol).checks) {
                     if (chk.residual > 1e-10 * std::max(1.0, chk.scale)) return case_fail("(P1) residual above 1e-10", to_json(g.data));
                   }
                   return case_pass();
                 }});

  out.push_back({"hirz.verdicts_gauge_invariant", "hirz-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const HirzADHM good = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   const HirzADHM bad = p3_invalid_point(x.rng, x.n, x.c, x.cond_cap, x.tol);
                   const Matrix phi1 = random_gauge(x.rng, x.c, gauge_cond(x.cond_cap)), phi2 = random_gauge(x.rng, x.c, gauge_cond(x.cond_cap));
                   for (const HirzADHM* d : {&good, &bad}) {
                     const HirzADHM moved = act_gl2(*d, phi1, phi2, x.tol);
                     const auto r1 = validate(*d, x.tol), r2 = validate(moved, x.tol);
                     for (const auto& chk : r1.checks) {
                       if (r2.verdict_of(chk.name) != chk.verdict) {
                         return case_fail(chk.name + " changed under the gauge action", {{"point", to_json(*d)}});
                       }
                     }
                     if (validate_p2(*d, x.tol).charts != validate_p2(moved, x.tol).charts) {
                       return case_fail("chart set changed under the gauge action", {{"point", to_json(*d)}});
                     }
                   }
                   if (validate(bad, x.tol).verdict_of("P3") != Verdict::fail) return case_fail("(P3)-invalid point not rejected", to_json(bad));
                   return case_pass();
                 }});

  out.push_back({"hirz.chart_round_trip", "hirz-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const GeneratedHirz g = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol);
                   const HirzADHM built = from_chart(g.chart, g.plane, g.A, x.n, x.tol);
                   const ChartCoords cc = to_chart(built, g.chart, x.tol);
                   const ChartCoords want{g.chart, x.n, x.c, g.plane.b1, g.plane.b2, g.plane.e, g.A};
                   if (rel_diff(cc, want) > 1e-9) return case_fail("to_chart(from_chart(x)) != x", to_json(built));
                   int tested = 0;
                   for (int m : validate_p2(g.data, x.tol).charts) {
                     if (!chart_ok(g.data, m, x.cond_cap)) continue;
                     ++tested;
                     const double err = rel_diff(from_chart(to_chart(g.data, m, x.tol), x.tol), g.data);
                     if (err > 1e-9) {
                       return case_fail("from_chart(to_chart(d, " + std::to_string(m) + ")) differs by " + fmt(err), to_json(g.data));
                     }
                   }
                   return tested > 0 ? case_pass() : case_skip("no well-conditioned chart");
                 }});

  out.push_back({"hirz.zeta_equivariance", "hirz-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const HirzADHM d = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   const Matrix phi1 = random_gauge(x.rng, x.c, gauge_cond(x.cond_cap)), phi2 = random_gauge(x.rng, x.c, gauge_cond(x.cond_cap));
                   const HirzADHM moved = act_gl2(d, phi1, phi2, x.tol);
                   const Matrix inv1 = phi1.inverse();
                   int tested = 0;
                   for (int m : validate_p2(d, x.tol).charts) {
                     if (!chart_ok(d, m, x.cond_cap)) continue;
                     ++tested;
                     const ChartCoords a = to_chart(d, m, x.tol);
                     ChartCoords want = a;
                     want.B = phi1 * a.B * inv1;
                     want.E = phi1 * a.E * inv1;
                     want.e = a.e * inv1;
                     want.A2m = phi2 * a.A2m * inv1;
                     const double err = rel_diff(to_chart(moved, m, x.tol), want);
                     if (err > 1e-9) return case_fail("chart " + std::to_string(m) + " not equivariant: " + fmt(err), to_json(d));
                   }
                   return tested > 0 ? case_pass() : case_skip("no well-conditioned chart");
                 }});

  out.push_back({"hirz.chart_pair_commutes", "hirz-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const HirzADHM d = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   for (int m : validate_p2(d, x.tol).charts) {
                     const ChartCoords cc = to_chart(d, m, x.tol);
                     const double res = commutator(cc.B, cc.E).norm(), scale = cc.B.norm() * cc.E.norm();
                     if (res > 1e-9 * scale) {
                       return case_fail("[B, E] = " + fmt(res) + " on chart " + std::to_string(m), to_json(d));
                     }
                   }
                   return case_pass();
                 }});

  out.push_back({"hirz.reconstruction_solves_system", "hirz-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const PlaneADHM plane = gen_plane_valid(x.rng, x.c, x.cond_cap, x.tol);
                   const Matrix A = random_gauge(x.rng, x.c, generator_cond(x.cond_cap));
                   const int m = x.rng.index(0, x.c);
                   const Matrix D = plane.b2 * A.inverse();
                   const auto C = reconstruct_C(plane.b1, D, m, x.n, x.c);
                   HirzADHM d = assemble_from_chart(m, plane, A, x.n, x.tol);
                   d.C = C;
                   for (const auto& chk : x.ops->validate_p1(d, x.tol).checks) {
                     if (chk.verdict != Verdict::pass || chk.residual > 1e-9 * std::max(1.0, chk.scale)) {
                       return case_fail(chk.name + " residual " + fmt(chk.residual), to_json(d));
                     }
                   }
                   if (x.n >= 2) {
                     Vector stacked(static_cast<Eigen::Index>(x.n) * x.c * x.c);
                     for (int q = 0; q < x.n; ++q) {
                       stacked.segment(static_cast<Eigen::Index>(q) * x.c * x.c, x.c * x.c) =
                           Eigen::Map<const Vector>(C[static_cast<std::size_t>(q)].data(), x.c * x.c);
                     }
                     const Matrix sys = syst_matrix(d.A1, d.A2, x.n);
                     if ((sys * stacked).norm() > 1e-9 * sys.norm() * stacked.norm()) {
                       return case_fail("reconstructed C does not solve the linear system", to_json(d));
                     }
                   }
                   if (rel_diff(chart_D(C, m, x.c), D) > 1e-9) return case_fail("free parameter D not recovered", to_json(d));
                   return case_pass();
                 }});

  out.push_back({"hirz.left_family_alone_insufficient", "hirz-adhm", {2, 64}, {1, 64}, [](CaseContext& x) {
                   // C_{q+1} = A2^-1 A1 C_q solves the left family only
                   const HirzADHM base = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   if (condition(base.A2) > x.cond_cap) return case_skip("A2 ill-conditioned");
                   HirzADHM d = base;
                   d.C = {random_matrix(x.rng, x.c, x.c)};
                   const Matrix step = base.A2.partialPivLu().solve(base.A1);
                   for (int q = 1; q < x.n; ++q) d.C.push_back(step * d.C.back());
                   if (!x.ops->validate_p1(d, x.tol).passed()) return case_pass();
                   // accepted: then Lemma [B, E] = 0 must hold on every chart
                   for (int chart : validate_p2(d, x.tol).charts) {
                     const ChartCoords cc = to_chart(d, chart, x.tol);
                     if (commutator(cc.B, cc.E).norm() > 1e-9 * cc.B.norm() * cc.E.norm()) {
                       return case_fail("(P1) accepted data whose chart pair does not commute", to_json(d));
                     }
                   }
                   return case_pass();
                 }});

  out.push_back({"hirz.p3_methods_agree", "hirz-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   CaseOutcome res;
                   const HirzADHM good = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   const HirzADHM bad = p3_invalid_point(x.rng, x.n, x.c, x.cond_cap, x.tol);
                   for (const HirzADHM* d : {&good, &bad}) {
                     const Verdict chart = validate_p3(*d, x.tol).overall();
                     const Verdict direct = validate_p3_direct(*d, x.tol).overall();
                     if (direct == Verdict::indeterminate) {
                       ++res.indeterminate;
                       continue;
                     }
                     if (chart != direct) {
                       return case_fail("chart route says " + std::string(to_string(chart)) + ", direct check says " +
                                            std::string(to_string(direct)),
                                        to_json(*d));
                     }
                   }
                   if (validate_p3(good, x.tol).overall() != Verdict::pass || validate_p3(bad, x.tol).overall() != Verdict::fail) {
                     return case_fail("chart route misjudges a constructed point");
                   }
                   return res;
                 }});

  out.push_back({"hirz.syst_rank_maximal", "hirz-adhm", {2, 64}, {1, 64}, [](CaseContext& x) {
                   const HirzADHM d = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   const int want = (x.n - 1) * x.c * x.c;
                   const int got = syst_rank(d.A1, d.A2, x.n, x.tol);
                   if (got != want) return case_fail("rank " + std::to_string(got) + ", expected " + std::to_string(want), to_json(d));
                   return case_pass();
                 }});

  out.push_back({"hirz.syst_rank_drops_on_singular_pencil", "hirz-adhm", {2, 64}, {1, 64}, [](CaseContext& x) {
                   // a common left kernel vector: the pencil is singular and the rows of the
                   // system lose rank (a common right kernel alone would not do)
                   Matrix mask = identity(x.c);
                   mask(0, 0) = 0.0;
                   const Matrix phi1 = random_gauge(x.rng, x.c, gauge_cond(x.cond_cap));
                   const Matrix phi2 = random_gauge(x.rng, x.c, gauge_cond(x.cond_cap));
                   const Matrix A1 = phi2 * mask * random_matrix(x.rng, x.c, x.c) * phi1;
                   const Matrix A2 = phi2 * mask * random_matrix(x.rng, x.c, x.c) * phi1;
                   const int full = (x.n - 1) * x.c * x.c;
                   HirzADHM d{x.n, A1, A2, std::vector<Matrix>(static_cast<std::size_t>(x.n), Matrix::Zero(x.c, x.c)), RowVector::Ones(x.c)};
                   if (validate_p2(d, x.tol).verdict != Verdict::fail) return case_fail("(P2) not rejected on a singular pencil");
                   if (syst_rank(A1, A2, x.n, x.tol) >= full) return case_fail("rank did not drop on a singular pencil");
                   return case_pass();
                 }});

  out.push_back({"hirz.glueing_triangle", "hirz-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const HirzADHM d = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   const auto charts = validate_p2(d, x.tol).charts;
                   int tested = 0;
                   for (int m : charts) {
                     if (!chart_ok(d, m, x.cond_cap)) continue;
                     const ChartCoords zm = to_chart(d, m, x.tol);
                     for (int l : charts) {
                       if (!chart_ok(d, l, x.cond_cap) || !overlap_ok(zm.B, m, l, x.c, x.n, x.cond_cap)) continue;
                       ++tested;
                       const double err = rel_diff(transition_omega(*x.ops, zm, l, x.tol), to_chart(d, l, x.tol));
                       if (err > 1e-8) {
                         return case_fail("zeta_" + std::to_string(l) + " != omega o zeta_" + std::to_string(m) + ": " + fmt(err),
                                          {{"point", to_json(d)}, {"m", m}, {"l", l}});
                       }
                     }
                   }
                   return tested > 0 ? case_pass() : case_skip("no well-conditioned overlap");
                 }});

  out.push_back({"hirz.canonicalize_gauge_invariant", "hirz-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const HirzADHM d = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   const HirzADHM moved = act_gl2(d, random_gauge(x.rng, x.c, gauge_cond(x.cond_cap)), random_gauge(x.rng, x.c, gauge_cond(x.cond_cap)), x.tol);
                   const CanonicalHirz a = canonicalize(d, x.tol), b = canonicalize(moved, x.tol);
                   if (a.chart != b.chart || hirz_distance(a.rep, b.rep) > x.tol.eq_rel) {
                     return case_fail("canonical representative moved under the gauge action", to_json(d));
                   }
                   if (hirz_distance(act_gl2(d, a.phi1, a.phi2, x.tol), a.rep) > x.tol.eq_rel) {
                     return case_fail("returned gauges do not reproduce the representative", to_json(d));
                   }
                   return case_pass();
                 }});

  out.push_back({"hirz.canonicalize_idempotent", "hirz-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const HirzADHM d = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   const CanonicalHirz once = canonicalize(d, x.tol);
                   const CanonicalHirz twice = canonicalize(once.rep, x.tol);
                   if (once.chart != twice.chart || hirz_distance(once.rep, twice.rep) > x.tol.eq_rel) {
                     return case_fail("canonicalize not idempotent", to_json(d));
                   }
                   return case_pass();
                 }});

  out.push_back({"hirz.orbit_equality", "hirz-adhm", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const HirzADHM d = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   const HirzADHM other = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   const HirzADHM moved = act_gl2(d, random_gauge(x.rng, x.c, gauge_cond(x.cond_cap)), random_gauge(x.rng, x.c, gauge_cond(x.cond_cap)), x.tol);
                   if (!orbit_equal(d, d, x.tol)) return case_fail("orbit equality not reflexive", to_json(d));
                   if (!orbit_equal(d, moved, x.tol)) return case_fail("gauge-equivalent points judged different", to_json(d));
                   if (proj_multisets_close(base_support(d, x.tol).base, base_support(other, x.tol).base, x.tol.root_cluster)) {
                     return case_skip("independent draws share a base support");
                   }
                   if (orbit_equal(d, other, x.tol)) {
                     return case_fail("points with different base supports judged equal", {{"a", to_json(d)}, {"b", to_json(other)}});
                   }
                   return case_pass();
                 }});

  out.push_back({"hirz.jacobian_nullity", "hirz-adhm", {1, 3}, {1, 3}, [](CaseContext& x) {
                   const HirzADHM d = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   const NullityResult r = jacobian_nullity(d, x.tol);
                   const int want = 2 * x.c * x.c + 2 * x.c;
                   if (r.nullity != want) {
                     return case_fail("nullity " + std::to_string(r.nullity) + ", expected " + std::to_string(want), to_json(d));
                   }
                   return case_pass();
                 }});
  return out;
}

inline std::vector<Property> geometry_properties() {
  std::vector<Property> out;

  out.push_back({"geometry.pencil_form_equivariance", "geometry-bridge", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const Matrix A1 = random_matrix(x.rng, x.c, x.c), A2 = random_matrix(x.rng, x.c, x.c);
                   const Matrix phi1 = random_gauge(x.rng, x.c, gauge_cond(x.cond_cap)), phi2 = random_gauge(x.rng, x.c, gauge_cond(x.cond_cap));
                   const Matrix inv1 = phi1.inverse();
                   const BinaryForm f = pencil_form(A1, A2), g = pencil_form(phi2 * A1 * inv1, phi2 * A2 * inv1);
                   const Complex k = phi2.determinant() / phi1.determinant();
                   const double scale = std::max(g.max_abs(), std::abs(k) * f.max_abs());
                   for (std::size_t p = 0; p < f.coeffs.size(); ++p) {
                     if (std::abs(g.coeffs[p] - k * f.coeffs[p]) > 1e-8 * scale) {
                       return case_fail("pencil form not scaled by det(phi2)/det(phi1)", {{"A1", jsonio::matrix_to(A1)}, {"A2", jsonio::matrix_to(A2)}});
                     }
                   }
                   return case_pass();
                 }});

  out.push_back({"geometry.base_support_gauge_invariant", "geometry-bridge", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const HirzADHM d = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   const HirzADHM moved = act_gl2(d, random_gauge(x.rng, x.c, gauge_cond(x.cond_cap)), random_gauge(x.rng, x.c, gauge_cond(x.cond_cap)), x.tol);
                   if (!proj_multisets_close(base_support(d, x.tol).base, base_support(moved, x.tol).base, x.tol.root_cluster)) {
                     return case_fail("base support changed under the gauge action", to_json(d));
                   }
                   return case_pass();
                 }});

  out.push_back({"geometry.spectrum_matches_pencil", "geometry-bridge", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const HirzADHM d = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   for (int m : validate_p2(d, x.tol).charts) {
                     if (!spectrum_vs_pencil_check(d, m, x.tol)) {
                       return case_fail("pencil roots disagree with spec(B) on chart " + std::to_string(m), to_json(d));
                     }
                   }
                   return case_pass();
                 }});

  out.push_back({"geometry.from_points_base_support", "geometry-bridge", {1, 64}, {1, 5}, [](CaseContext& x) {
                   std::vector<JointPair> pts;
                   const auto betas = distinct_complex(x.rng, x.c, kMinEigenSeparation);
                   for (auto b : betas) pts.emplace_back(b, x.rng.cnormal());
                   const int m = x.rng.index(0, x.c);
                   const HirzADHM d = from_chart(m, from_points(pts, x.tol), random_gauge(x.rng, x.c, generator_cond(x.cond_cap)), x.n, x.tol);
                   const AnglePair a = angle_pair(x.c, m);
                   std::vector<ProjPoint> want;
                   for (const auto& [b, w] : pts) want.push_back(ProjPoint::normalized(-(a.sin_val + a.cos_val * b), a.cos_val - a.sin_val * b));
                   if (!proj_multisets_close(base_support(d, x.tol).base, want, 1e-7)) {
                     return case_fail("base support differs from the constructed points", to_json(d));
                   }
                   return case_pass();
                 }});

  out.push_back({"geometry.chart_support_transforms", "geometry-bridge", {1, 64}, {1, 64}, [](CaseContext& x) {
                   const HirzADHM d = generate_hirz(x.rng, x.n, x.c, x.cond_cap, x.tol).data;
                   const auto charts = validate_p2(d, x.tol).charts;
                   const int m = charts[static_cast<std::size_t>(x.rng.index(0, static_cast<int>(charts.size()) - 1))];
                   const int l = charts[static_cast<std::size_t>(x.rng.index(0, static_cast<int>(charts.size()) - 1))];
                   const ChartCoords zm = to_chart(d, m, x.tol);
                   if (!chart_ok(d, m, x.cond_cap) || !chart_ok(d, l, x.cond_cap) || !overlap_ok(zm.B, m, l, x.c, x.n, x.cond_cap)) {
                     return case_skip("ill-conditioned overlap");
                   }
                   const AnglePair a = angle_pair(x.c, m - l);
                   std::vector<JointPair> want;
                   const SupportMultiset from = chart_support(d, m, x.tol);
                   for (const auto& [b, w] : from.chart_pairs->pairs) {
                     const Complex f = a.cos_val - a.sin_val * b;
                     want.emplace_back((a.sin_val + a.cos_val * b) / f, ipow(f, x.n) * w);
                   }
                   if (!joint_multisets_close(chart_support(d, l, x.tol).chart_pairs->pairs, want, 1e-7)) {
                     return case_fail("chart supports on charts " + std::to_string(m) + ", " + std::to_string(l) + " do not correspond",
                                      to_json(d));
                   }
                   return case_pass();
                 }});

  out.push_back({"geometry.chart_set_exact", "geometry-bridge", {1, 64}, {1, 64}, [](CaseContext& x) {
                   // an eigenvalue c_{m-l}/s_{m-l} of b1 removes exactly chart l
                   const int m = x.rng.index(0, x.c);
                   int l = x.rng.index(0, x.c - 1);
                   if (l >= m) ++l;
                   const AnglePair a = angle_pair(x.c, m - l);
                   std::vector<JointPair> pts{{a.cos_val / a.sin_val, x.rng.cnormal()}};
                   while (static_cast<int>(pts.size()) < x.c) {
                     const Complex z = x.rng.cnormal() * std::numbers::sqrt2;
                     bool ok = true;
                     for (const auto& p : pts) ok = ok && std::abs(p.first - z) >= kMinEigenSeparation;
                     for (int k = 0; k <= x.c; ++k) {
                       if (k == m) continue;
                       const AnglePair ak = angle_pair(x.c, m - k);
                       ok = ok && std::abs(ak.cos_val - ak.sin_val * z) >= 0.05;
                     }
                     if (ok) pts.emplace_back(z, x.rng.cnormal());
                   }
                   const HirzADHM d = from_chart(m, from_points(pts, x.tol), random_gauge(x.rng, x.c, generator_cond(x.cond_cap)), x.n, x.tol);
                   const auto charts = validate_p2(d, x.tol).charts;
                   std::vector<int> want;
                   for (int k = 0; k <= x.c; ++k) {
                     if (k != l) want.push_back(k);
                   }
                   if (charts != want) return case_fail("chart set should miss exactly chart " + std::to_string(l), to_json(d));
                   try {
                     (void)to_chart(d, l, x.tol);
                   } catch (const DomainError&) {
                     return case_pass();
                   }
                   return case_fail("to_chart accepted a chart outside the chart set", to_json(d));
                 }});

  out.push_back({"geometry.affine_cover", "geometry-bridge", {1, 64}, {1, 64}, [](CaseContext& x) {
                   auto xs = random_vector(x.rng, x.c + 1);
                   bool covered = false;
                   for (int m = 0; m <= x.c; ++m) covered = covered || um_membership(xs, m, x.c, x.tol);
                   if (!covered) return case_fail("point of P^c in no U_m");
                   // m = 0 reads x_0 only
                   xs[0] = 0.0;
                   if (um_membership(xs, 0, x.c, x.tol)) return case_fail("x_0 = 0 yet the point lies in U_0");
                   xs.assign(static_cast<std::size_t>(x.c + 1), 0.0);
                   xs[static_cast<std::size_t>(x.rng.index(0, x.c))] = 1.0;
                   covered = false;
                   for (int m = 0; m <= x.c; ++m) covered = covered || um_membership(xs, m, x.c, x.tol);
                   if (!covered) return case_fail("coordinate point in no U_m");
                   return case_pass();
                 }});

  out.push_back({"geometry.c1_ytilde_to_p1", "geometry-bridge", {1, 4}, {1, 1}, [](CaseContext& x) {
                   YTildePoint p{x.n, x.rng.cnormal(), x.rng.cnormal(), 0.0, x.rng.cnormal()};
                   p.x1 = p.x2 * ipow(p.y2, x.n - 1) / ipow(p.y1, x.n - 1);
                   const HirzADHM d = ytilde_to_p1(p);
                   if (!validate(d, x.tol).passed()) return case_fail("image of a Y~ point is not valid", to_json(p));
                   // both chart formulas agree on y1 y2 != 0
                   for (int q = 1; q <= x.n; ++q) {
                     const Complex one = ipow(p.y2 / p.y1, x.n - q) * p.x2, two = ipow(p.y1 / p.y2, q - 1) * p.x1;
                     const Complex got = d.C[static_cast<std::size_t>(q - 1)](0, 0);
                     const double scale = std::max({std::abs(one), std::abs(two), 1e-300});
                     if (std::abs(one - two) > 1e-12 * scale * 4 || std::abs(got - one) > 1e-12 * scale * 4) {
                       return case_fail("branches disagree at C_" + std::to_string(q), to_json(p));
                     }
                   }
                   return case_pass();
                 }});

  out.push_back({"geometry.c1_tot_relation_and_orbits", "geometry-bridge", {1, 4}, {1, 1}, [](CaseContext& x) {
                   YTildePoint p{x.n, x.rng.cnormal(), x.rng.cnormal(), 0.0, x.rng.cnormal()};
                   p.x1 = p.x2 * ipow(p.y2, x.n - 1) / ipow(p.y1, x.n - 1);
                   const HirzADHM d = ytilde_to_p1(p);
                   const TotPoint t = p1_to_tot(d, x.tol);
                   if (tot_relation_residual(t) > 1e-12) return case_fail("u1 y1^n != u2 y2^n", to_json(t));
                   const double su = std::max({std::abs(t.u1), std::abs(t.u2), 1e-300});
                   if (std::abs(t.u1 - p.x1 * p.y2) > 1e-12 * su || std::abs(t.u2 - p.x2 * p.y1) > 1e-12 * su) {
                     return case_fail("composite differs from (x1 y2, x2 y1)", to_json(p));
                   }
                   const Matrix phi1 = Matrix::Constant(1, 1, x.rng.cnormal() + 2.0);
                   const Matrix phi2 = Matrix::Constant(1, 1, x.rng.cnormal() + 2.0);
                   const HirzADHM moved = act_gl2(d, phi1, phi2, x.tol);
                   if (!tot_equivalent(p1_to_tot(moved, x.tol), t, 1e-10)) return case_fail("image left its C* class", to_json(d));
                   if (!orbit_equal(d, moved, x.tol)) return case_fail("gauge-equivalent c = 1 points judged different", to_json(d));
                   return case_pass();
                 }});
  return out;
}

}  // namespace props

/// Every property, in a fixed order; names are unique.
inline const std::vector<Property>& property_registry() {
  static const std::vector<Property> all = [] {
    std::vector<Property> v;
    for (auto group : {props::kernel_properties(), props::sigma_properties(), props::plane_properties(),
                       props::hirz_properties(), props::geometry_properties()}) {
      for (auto& p : group) v.push_back(std::move(p));
    }
    return v;
  }();
  return all;
}

inline const Property* find_property(std::string_view name) {
  for (const auto& p : property_registry()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// the runner
// ---------------------------------------------------------------------------

struct SuiteConfig {
  std::uint64_t seed = 1;
  int max_n = 3;
  int max_c = 6;
  int samples = 100;
  std::string filter;  ///< substring of property names; empty selects all
  double cond_cap = 1e4;
  Tolerance tol;
  Ops ops;
  std::size_t max_dumps = 3;  ///< counterexamples kept per property
};

struct PropertyReport {
  std::string name;
  std::string module;
  int cases = 0;
  int failed = 0;
  int skipped = 0;
  int indeterminate = 0;
  std::vector<json> failures;
};

struct SuiteReport {
  std::vector<PropertyReport> properties;
  std::vector<std::string> warnings;

  bool passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyReport& p) { return p.failed == 0; });
  }
  const PropertyReport* find(std::string_view name) const {
    for (const auto& p : properties) {
      if (p.name == name) return &p;
    }
    return nullptr;
  }
};

inline std::uint64_t case_seed(std::uint64_t seed, std::string_view property, int k) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : property) h = (h ^ ch) * 0x100000001b3ULL;
  return mix_seed(mix_seed(seed ^ h) + static_cast<std::uint64_t>(k));
}

/// One case, from its seed alone; this is what a dump replays.
inline CaseOutcome run_case(const Property& p, std::uint64_t seed, int n, int c, const SuiteConfig& cfg) {
  CaseContext ctx{Rng(seed), n, c, cfg.cond_cap, cfg.tol, &cfg.ops};
  try {
    return p.run(ctx);
  } catch (const std::exception& ex) {
    return case_fail(std::string("exception: ") + ex.what());
  }
}

inline SuiteReport run_suite(const SuiteConfig& cfg) {
  cfg.tol.check();
  SuiteReport report;
  if (cfg.samples <= 0 || cfg.max_n < 1 || cfg.max_c < 1) {
    report.warnings.push_back("empty ranges: no cases run");
    return report;
  }
  for (const auto& p : property_registry()) {
    if (!cfg.filter.empty() && p.name.find(cfg.filter) == std::string::npos) continue;
    PropertyReport pr{p.name, p.module, 0, 0, 0, 0, {}};
    std::vector<std::pair<int, int>> grid;
    for (int c = std::max(1, p.c_range.lo); c <= std::min(cfg.max_c, p.c_range.hi); ++c) {
      for (int n = std::max(1, p.n_range.lo); n <= std::min(cfg.max_n, p.n_range.hi); ++n) grid.emplace_back(n, c);
    }
    if (grid.empty()) {
      report.warnings.push_back(p.name + ": no (n, c) in range, vacuous");
      report.properties.push_back(std::move(pr));
      continue;
    }
    for (int k = 0; k < cfg.samples; ++k) {
      const auto [n, c] = grid[static_cast<std::size_t>(k) % grid.size()];
      const std::uint64_t s = case_seed(cfg.seed, p.name, k);
      const CaseOutcome out = run_case(p, s, n, c, cfg);
      ++pr.cases;
      pr.indeterminate += out.indeterminate;
      if (out.status == CaseOutcome::Status::skip) {
        ++pr.skipped;
      } else if (out.status == CaseOutcome::Status::fail) {
        ++pr.failed;
        if (pr.failures.size() < cfg.max_dumps) {
          pr.failures.push_back({{"property", p.name},
                                 {"case_seed", s},
                                 {"n", n},
                                 {"c", c},
                                 {"ops", cfg.ops.name},
                                 {"detail", out.detail},
                                 {"witness", out.witness}});
        }
      }
    }
    report.properties.push_back(std::move(pr));
  }
  if (report.properties.empty()) report.warnings.push_back("filter matched no property");
  return report;
}

/// Re-runs a dumped failure; the dump carries everything needed.
inline CaseOutcome replay(const json& dump, SuiteConfig cfg) {
  const std::string name = dump.at("property").get<std::string>();
  const Property* p = find_property(name);
  if (p == nullptr) throw DomainError("replay: unknown property " + name);
  if (dump.contains("ops")) cfg.ops = mutant_ops(dump.at("ops").get<std::string>());
  return run_case(*p, dump.at("case_seed").get<std::uint64_t>(), dump.at("n").get<int>(), dump.at("c").get<int>(), cfg);
}

inline json to_json(const SuiteReport& r, const SuiteConfig& cfg) {
  json props = json::array();
  for (const auto& p : r.properties) {
    props.push_back({{"property", p.name},
                     {"module", p.module},
                     {"cases", p.cases},
                     {"failed", p.failed},
                     {"skipped", p.skipped},
                     {"indeterminate", p.indeterminate},
                     {"failures", p.failures}});
  }
  return {{"kind", "property_report"},
          {"seed", cfg.seed},
          {"max_n", cfg.max_n},
          {"max_c", cfg.max_c},
          {"samples", cfg.samples},
          {"ops", cfg.ops.name},
          {"passed", r.passed()},
          {"warnings", r.warnings},
          {"properties", std::move(props)}};
}

}  // namespace adhmkit
