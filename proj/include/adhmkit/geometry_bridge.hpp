#pragma once

// Geometric readings of ADHM data: the pencil determinant and the
// Hilbert-Chow base map, chart-level supports, the affine cover U_m of P^c,
// and the c = 1 identification with Tot(O_{P1}(-n)).

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adhmkit/angles_sigma.hpp"
#include "adhmkit/errors.hpp"
#include "adhmkit/hirz_adhm.hpp"
#include "adhmkit/matrix_kernel.hpp"
#include "adhmkit/plane_adhm.hpp"

namespace adhmkit {

/// g_c(A1, A2): the pencil form normalized by its largest-modulus coefficient.
inline BinaryForm hilbert_chow_form(const Matrix& A1, const Matrix& A2) { return pencil_form(A1, A2).normalized(); }

struct ChartPairs {
  int m = 0;
  std::vector<JointPair> pairs;
};

struct SupportMultiset {
  std::vector<ProjPoint> base;
  std::optional<ChartPairs> chart_pairs;
};

inline void require_valid(const HirzADHM& d, const Tolerance& tol, const char* who) {
  if (!validate(d, tol).passed()) throw DomainError(std::string(who) + ": input is not valid");
}

/// Roots [l1 : l2] of det(l2 A1 + l1 A2), with multiplicity.
inline std::vector<ProjPoint> pencil_roots(const HirzADHM& d, const Tolerance& tol = {}) {
  return binary_form_roots(pencil_form(d.A2, d.A1), tol);
}

inline SupportMultiset base_support(const HirzADHM& d, const Tolerance& tol = {}) {
  require_valid(d, tol, "base_support");
  return {pencil_roots(d, tol), std::nullopt};
}

/// Image of a pencil root in the affine coordinate of chart m:
/// -(c l1 + s l2) / (-s l1 + c l2), an eigenvalue of B_m.
inline Complex chart_coordinate(const ProjPoint& root, int m, int cBase) {
  const AnglePair a = angle_pair(cBase, m);
  const Complex num = a.cos_val * root.lam1 + a.sin_val * root.lam2;
  const Complex den = -a.sin_val * root.lam1 + a.cos_val * root.lam2;
  if (den == Complex{0.0}) throw DomainError("chart_coordinate: root is the chart's own fibre");
  return -num / den;
}

/// The pencil roots mapped to chart m agree with the spectrum of B_m.
inline bool spectrum_vs_pencil_check(const HirzADHM& d, int m, const Tolerance& tol = {}) {
  check_shape(d);
  require_chart(d, m, tol);
  std::vector<Complex> from_roots;
  for (const auto& r : pencil_roots(d, tol)) from_roots.push_back(chart_coordinate(r, m, d.c()));
  const auto spectrum = eigenvalues(to_chart(d, m, tol).B);
  return multisets_close(from_roots, spectrum, tol.root_cluster);
}

inline SupportMultiset chart_support(const HirzADHM& d, int m, const Tolerance& tol = {}) {
  require_valid(d, tol, "chart_support");
  require_chart(d, m, tol);
  const ChartCoords cc = to_chart(d, m, tol);
  return {pencil_roots(d, tol), ChartPairs{m, joint_spectrum(cc.B, cc.E, tol)}};
}

/// x lies in U_m  iff  sum_p sigma^h_{m;p0} x_p != 0, h = x.size() - 1.
inline bool um_membership(std::span<const Complex> x, int m, int cBase, const Tolerance& tol = {}) {
  if (x.empty()) throw ShapeError("um_membership: empty coordinate vector");
  double norm = 0.0;
  for (auto v : x) norm = std::hypot(norm, std::abs(v));
  if (norm == 0.0) throw DomainError("um_membership: the zero vector is not a point of P^c");
  const int h = static_cast<int>(x.size()) - 1;
  const SigmaMatrix sigma = sigma_matrix(h, m, cBase);
  Complex acc{0.0};
  for (int p = 0; p <= h; ++p) acc += sigma.entries(p, 0) * x[static_cast<std::size_t>(p)];
  return std::abs(acc) > tol.eq_rel * norm;
}

// ---------------------------------------------------------------------------
// c = 1
// ---------------------------------------------------------------------------

/// ((y1, y2), (u1, u2)) with u1 y1^n = u2 y2^n; classes under y -> lambda y.
struct TotPoint {
  int n = 1;
  Complex y1, y2, u1, u2;
};

/// ((y1, y2), (x1, x2)) with x1 y1^(n-1) = x2 y2^(n-1).
struct YTildePoint {
  int n = 1;
  Complex y1, y2, x1, x2;
};

inline constexpr double kRelationTol = 1e-12;

inline double tot_relation_residual(const TotPoint& p) {
  const Complex lhs = p.u1 * ipow(p.y1, p.n), rhs = p.u2 * ipow(p.y2, p.n);
  const double ref = std::abs(lhs) + std::abs(rhs);
  return ref == 0.0 ? 0.0 : std::abs(lhs - rhs) / ref;
}

inline double ytilde_relation_residual(const YTildePoint& p) {
  const Complex lhs = p.x1 * ipow(p.y1, p.n - 1), rhs = p.x2 * ipow(p.y2, p.n - 1);
  const double ref = std::abs(lhs) + std::abs(rhs);
  return ref == 0.0 ? 0.0 : std::abs(lhs - rhs) / ref;
}

/// Same C^*-class: equal u, proportional y.
inline bool tot_equivalent(const TotPoint& a, const TotPoint& b, double rel_tol) {
  if (a.n != b.n) return false;
  const double scale = std::max({1.0, std::abs(a.u1), std::abs(a.u2), std::abs(b.u1), std::abs(b.u2)});
  if (std::abs(a.u1 - b.u1) > rel_tol * scale || std::abs(a.u2 - b.u2) > rel_tol * scale) return false;
  const ProjPoint ya = ProjPoint::normalized(a.y1, a.y2), yb = ProjPoint::normalized(b.y1, b.y2);
  return ya.distance(yb) <= rel_tol;
}

/// Y~_n -> P^n(1) through the chart y_i != 0 with the larger |y_i| (ties to i = 1):
///   i = 1: C_q = (y2/y1)^(n-q) x2,   i = 2: C_q = (y1/y2)^(q-1) x1.
inline HirzADHM ytilde_to_p1(const YTildePoint& p) {
  if (p.n < 1) throw DomainError("ytilde_to_p1: n must be >= 1");
  if (p.y1 == Complex{0.0} && p.y2 == Complex{0.0}) throw DomainError("ytilde_to_p1: (y1, y2) = (0, 0)");
  if (ytilde_relation_residual(p) > kRelationTol) throw DomainError("ytilde_to_p1: x1 y1^(n-1) != x2 y2^(n-1)");
  auto scalar = [](Complex z) { return Matrix::Constant(1, 1, z); };
  HirzADHM d;
  d.n = p.n;
  d.A1 = scalar(p.y1);
  d.A2 = scalar(p.y2);
  d.e = RowVector::Ones(1);
  const bool first = std::abs(p.y1) >= std::abs(p.y2);
  for (int q = 1; q <= p.n; ++q) {
    const Complex cq = first ? ipow(p.y2 / p.y1, p.n - q) * p.x2 : ipow(p.y1 / p.y2, q - 1) * p.x1;
    d.C.push_back(scalar(cq));
  }
  return d;
}

/// P^n(1) -> Tot: gauge e to 1, then ((A1, A2), (C1 A2, Cn A1)).
inline TotPoint p1_to_tot(const HirzADHM& d, const Tolerance& tol = {}) {
  check_shape(d);
  if (d.c() != 1) throw ShapeError("p1_to_tot: requires c = 1");
  require_valid(d, tol, "p1_to_tot");
  const Complex e = d.e(0);
  const Complex a1 = d.A1(0, 0) / e, a2 = d.A2(0, 0) / e;
  const Complex c1 = d.C.front()(0, 0) * e, cn = d.C.back()(0, 0) * e;
  return {d.n, a1, a2, c1 * a2, cn * a1};
}

}  // namespace adhmkit
