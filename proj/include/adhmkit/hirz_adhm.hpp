#pragma once

// ADHM data (A1, A2; C_1..C_n; e) for Hilb^c(Tot O_{P1}(-n)).
//
//   (P1) n = 1:  A1 C1 A2 = A2 C1 A1
//        n > 1:  A1 C_q = A2 C_{q+1},  C_q A1 = C_{q+1} A2   (q = 1..n-1)
//   (P2) det(nu1 A1 + nu2 A2) is not identically zero
//   (P3) co-stability, decided on any chart (see validate_p3)
//
// GL(c) x GL(c) acts by  A_i -> phi2 A_i phi1^-1,  C_j -> phi1 C_j phi2^-1,
// e -> e phi1^-1.  Chart m is the open set det(A_2m) != 0 where
//   A_1m = c_m A1 - s_m A2,   A_2m = s_m A1 + c_m A2,
// and its coordinates are (B, E, e; A_2m) with B = A_2m^-1 A_1m and
// E = D A_2m, D = sum_q binom(n-1, q-1) c_m^(n-q) s_m^(q-1) C_q.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "adhmkit/angles_sigma.hpp"
#include "adhmkit/errors.hpp"
#include "adhmkit/matrix_kernel.hpp"
#include "adhmkit/plane_adhm.hpp"
#include "adhmkit/report.hpp"

namespace adhmkit {

struct HirzADHM {
  int n = 1;
  Matrix A1;
  Matrix A2;
  std::vector<Matrix> C;
  RowVector e;

  int c() const { return static_cast<int>(A1.rows()); }
};

struct ChartCoords {
  int m = 0;
  int n = 1;
  int c = 1;
  Matrix B;
  Matrix E;
  RowVector e;
  Matrix A2m;

  PlaneADHM plane() const { return {B, E, e}; }
  /// The free parameter D = E A2m^-1.
  Matrix D() const { return E * A2m.partialPivLu().inverse(); }
};

inline void check_shape(const HirzADHM& d) {
  if (d.n < 1) throw ShapeError("hirz data: n must be >= 1");
  if (d.n > 64) throw ShapeError("hirz data: n must be <= 64");
  const auto c = d.A1.rows();
  if (c < 1) throw ShapeError("hirz data: c must be >= 1");
  auto square = [c](const Matrix& m) { return m.rows() == c && m.cols() == c; };
  if (!square(d.A1) || !square(d.A2)) throw ShapeError("hirz data: A1, A2 must be c x c");
  if (static_cast<int>(d.C.size()) != d.n) {
    throw ShapeError("hirz data: expected " + std::to_string(d.n) + " C matrices, got " + std::to_string(d.C.size()));
  }
  for (std::size_t q = 0; q < d.C.size(); ++q) {
    if (!square(d.C[q])) throw ShapeError("hirz data: C_" + std::to_string(q + 1) + " must be c x c");
    require_finite(d.C[q], "C");
  }
  if (d.e.cols() != c) throw ShapeError("hirz data: e must be 1 x c");
  require_finite(d.A1, "A1");
  require_finite(d.A2, "A2");
  require_finite(d.e, "e");
}

// ---------------------------------------------------------------------------
// (P1)
// ---------------------------------------------------------------------------

inline ValidationReport validate_p1(const HirzADHM& d, const Tolerance& tol = {}) {
  check_shape(d);
  ValidationReport report;
  if (d.n == 1) {
    const Matrix& c1 = d.C[0];
    const double res = (d.A1 * c1 * d.A2 - d.A2 * c1 * d.A1).norm();
    const double scale = 2.0 * d.A1.norm() * c1.norm() * d.A2.norm();
    report.checks.push_back(residual_check("P1", res, scale, tol.eq_rel));
    return report;
  }
  for (int q = 0; q + 1 < d.n; ++q) {
    const Matrix& cq = d.C[static_cast<std::size_t>(q)];
    const Matrix& cn = d.C[static_cast<std::size_t>(q + 1)];
    const double scale = d.A1.norm() * cq.norm() + d.A2.norm() * cn.norm();
    const std::string idx = "[" + std::to_string(q + 1) + "]";
    report.checks.push_back(residual_check("P1.left" + idx, (d.A1 * cq - d.A2 * cn).norm(), scale, tol.eq_rel));
    report.checks.push_back(residual_check("P1.right" + idx, (cq * d.A1 - cn * d.A2).norm(), scale, tol.eq_rel));
  }
  return report;
}

// ---------------------------------------------------------------------------
// charts and (P2)
// ---------------------------------------------------------------------------

inline Matrix chart_A1m(const HirzADHM& d, int m) {
  const AnglePair a = angle_pair(d.c(), m);
  return a.cos_val * d.A1 - a.sin_val * d.A2;
}

inline Matrix chart_A2m(const HirzADHM& d, int m) {
  const AnglePair a = angle_pair(d.c(), m);
  return a.sin_val * d.A1 + a.cos_val * d.A2;
}

/// Reference magnitude for invertibility decisions on the pencil.
inline double pencil_scale(const HirzADHM& d) { return std::max(op_norm(d.A1), op_norm(d.A2)); }

struct ChartSetReport {
  Verdict verdict = Verdict::indeterminate;
  std::vector<int> charts;           ///< {m : det A_2m != 0}
  std::vector<Complex> determinants;  ///< det A_2m, m = 0..c
  std::vector<double> min_singular;  ///< smallest singular value of A_2m
  double scale = 0.0;
  std::string detail;

  bool contains(int m) const { return std::find(charts.begin(), charts.end(), m) != charts.end(); }
};

/// det(nu1 A1 + nu2 A2) has degree c and the c+1 points [s_m : c_m] are
/// distinct, so it vanishes identically iff all det A_2m vanish.
inline ChartSetReport validate_p2(const HirzADHM& d, const Tolerance& tol = {}) {
  check_shape(d);
  ChartSetReport r;
  r.scale = pencil_scale(d);
  double best = 0.0;
  for (int m = 0; m <= d.c(); ++m) {
    const Matrix a2m = chart_A2m(d, m);
    const auto sv = singular_values(a2m);
    const double smin = sv(sv.size() - 1);
    r.determinants.push_back(a2m.determinant());
    r.min_singular.push_back(smin);
    best = std::max(best, smin);
    if (r.scale > 0.0 && smin > tol.rank_rel * r.scale) r.charts.push_back(m);
  }
  if (!r.charts.empty()) {
    r.verdict = Verdict::pass;
  } else if (r.scale == 0.0 || best <= 64.0 * std::numeric_limits<double>::epsilon() * d.c() * r.scale) {
    r.verdict = Verdict::fail;
    r.detail = "det(nu1 A1 + nu2 A2) vanishes identically";
  } else {
    r.verdict = Verdict::indeterminate;
    r.detail = "all det A_2m lie below the rank threshold but above round-off";
  }
  return r;
}

inline void require_chart(const HirzADHM& d, int m, const Tolerance& tol) {
  if (m < 0 || m > d.c()) throw DomainError("chart index " + std::to_string(m) + " outside 0..c");
  if (!is_invertible(chart_A2m(d, m), tol, pencil_scale(d))) {
    throw DomainError("chart " + std::to_string(m) + " is not in the chart set (det A_2m vanishes)");
  }
}

inline Matrix chart_D(const std::vector<Matrix>& C, int m, int cBase) {
  const int n = static_cast<int>(C.size());
  const AnglePair a = angle_pair(cBase, m);
  Matrix D = Matrix::Zero(C.front().rows(), C.front().cols());
  for (int q = 1; q <= n; ++q) {
    const double w = static_cast<double>(binomial(n - 1, q - 1)) * std::pow(a.cos_val, n - q) * std::pow(a.sin_val, q - 1);
    D += w * C[static_cast<std::size_t>(q - 1)];
  }
  return D;
}

/// zeta_m: (A1, A2; C; e) -> (B, E, e; A_2m).
inline ChartCoords to_chart(const HirzADHM& d, int m, const Tolerance& tol = {}) {
  check_shape(d);
  require_chart(d, m, tol);
  const Matrix a2m = chart_A2m(d, m);
  const auto lu = a2m.partialPivLu();
  ChartCoords cc;
  cc.m = m;
  cc.n = d.n;
  cc.c = d.c();
  cc.B = lu.solve(chart_A1m(d, m));
  cc.E = chart_D(d.C, m, d.c()) * a2m;
  cc.e = d.e;
  cc.A2m = a2m;
  return cc;
}

/// General solution of A1 C_q = A2 C_{q+1} on chart m:
///   C_{p+1} = sum_q sigma^{n-1}_{m;p,q} B^q D.
inline std::vector<Matrix> reconstruct_C(const Matrix& B, const Matrix& D, int m, int n, int cBase) {
  require_square(B, "B");
  if (D.rows() != B.rows() || D.cols() != B.cols()) throw ShapeError("reconstruct_C: B and D differ in shape");
  if (n < 1) throw DomainError("reconstruct_C: n must be >= 1");
  const SigmaMatrix sigma = sigma_matrix(n - 1, m, cBase);
  std::vector<Matrix> powers_times_d{D};
  for (int q = 1; q < n; ++q) powers_times_d.push_back(B * powers_times_d.back());
  std::vector<Matrix> C;
  for (int p = 0; p < n; ++p) {
    Matrix cp = Matrix::Zero(B.rows(), B.cols());
    for (int q = 0; q < n; ++q) cp += sigma.entries(p, q) * powers_times_d[static_cast<std::size_t>(q)];
    C.push_back(std::move(cp));
  }
  return C;
}

/// zeta_m^-1 without checking the plane data; used where invalid plane data
/// is wanted on purpose.
inline HirzADHM assemble_from_chart(int m, const PlaneADHM& plane, const Matrix& A, int n, const Tolerance& tol = {}) {
  check_shape(plane);
  const int c = plane.c();
  if (A.rows() != c || A.cols() != c) throw ShapeError("from_chart: A must be c x c");
  if (n < 1 || n > 64) throw DomainError("from_chart: n must lie in 1..64");
  if (m < 0 || m > c) throw DomainError("from_chart: chart index outside 0..c");
  const Matrix a_inv = checked_inverse(A, tol, "A");
  const AnglePair a = angle_pair(c, m);
  HirzADHM d;
  d.n = n;
  d.A1 = A * (a.cos_val * plane.b1 + a.sin_val * identity(c));
  d.A2 = A * (-a.sin_val * plane.b1 + a.cos_val * identity(c));
  d.C = reconstruct_C(plane.b1, plane.b2 * a_inv, m, n, c);
  d.e = plane.e;
  return d;
}

/// zeta_m^-1: A1 = A(c_m b1 + s_m), A2 = A(-s_m b1 + c_m), C = (sigma^{n-1}_m x 1)(1; b1; ..; b1^{n-1}) b2 A^-1.
inline HirzADHM from_chart(int m, const PlaneADHM& plane, const Matrix& A, int n, const Tolerance& tol = {}) {
  if (!validate_plane(plane, tol).passed()) throw DomainError("from_chart: plane data is not valid");
  return assemble_from_chart(m, plane, A, n, tol);
}

inline HirzADHM from_chart(const ChartCoords& cc, const Tolerance& tol = {}) {
  return from_chart(cc.m, cc.plane(), cc.A2m, cc.n, tol);
}

// ---------------------------------------------------------------------------
// (P3)
// ---------------------------------------------------------------------------

/// (P3) on the smallest chart of the chart set: it holds iff (T2) holds for
/// the chart's (B, E, e).
inline ValidationReport validate_p3(const HirzADHM& d, const Tolerance& tol = {}) {
  check_shape(d);
  if (!validate_p1(d, tol).passed()) throw DomainError("validate_p3: (P1) fails");
  const ChartSetReport p2 = validate_p2(d, tol);
  if (p2.charts.empty()) throw DomainError("validate_p3: empty chart set, (P2) fails");
  const int m = p2.charts.front();
  const ValidationReport plane = validate_plane(to_chart(d, m, tol).plane(), tol);
  Check p3 = *plane.find("T2");
  p3.name = "P3";
  p3.detail = "chart " + std::to_string(m) + ": " + p3.detail;
  if (plane.verdict_of("T1") != Verdict::pass) {
    p3.verdict = Verdict::indeterminate;
    p3.detail = "chart " + std::to_string(m) + ": [B, E] does not vanish within tolerance";
  }
  ValidationReport r;
  r.checks.push_back(std::move(p3));
  return r;
}

/// Independent (P3) check on the pencil roots. At a simple root [l1 : l2] of
/// det(l2 A1 + l1 A2) with kernel vector v, (P3) is violated iff e v = 0,
/// C1 A2 v = a v, Cn A1 v = b v and l1^n a - (-1)^n l2^n b = 0 (the last
/// relation eliminates mu1, mu2). Multiple roots are reported indeterminate.
inline ValidationReport validate_p3_direct(const HirzADHM& d, const Tolerance& tol = {}) {
  check_shape(d);
  if (!validate_p1(d, tol).passed()) throw DomainError("validate_p3_direct: (P1) fails");
  if (validate_p2(d, tol).charts.empty()) throw DomainError("validate_p3_direct: (P2) fails");
  const int n = d.n;
  const double scale = pencil_scale(d);
  const Matrix k1 = d.C.front() * d.A2;
  const Matrix kn = d.C.back() * d.A1;
  const double k1n = op_norm(k1), knn = op_norm(kn), en = d.e.norm();

  const auto roots = binary_form_roots(pencil_form(d.A2, d.A1), tol);  // nu = (l1, l2)
  ValidationReport report;
  std::vector<bool> done(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (done[i]) continue;
    int mult = 0;
    for (std::size_t j = i; j < roots.size(); ++j) {
      if (roots[j].lam1 == roots[i].lam1 && roots[j].lam2 == roots[i].lam2) {
        done[j] = true;
        ++mult;
      }
    }
    const Complex l1 = roots[i].lam1, l2 = roots[i].lam2;
    Check chk;
    chk.name = "root[" + std::to_string(report.checks.size()) + "]";
    if (mult > 1) {
      chk.verdict = Verdict::indeterminate;
      chk.detail = "multiple root: use the chart method";
      report.checks.push_back(std::move(chk));
      continue;
    }
    const Matrix pencil = l2 * d.A1 + l1 * d.A2;
    Eigen::JacobiSVD<Matrix> svd(pencil, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Eigen::Index c = sv.size();
    if (sv(c - 1) > tol.root_cluster * scale || (c > 1 && sv(c - 2) <= tol.root_cluster * scale)) {
      chk.verdict = Verdict::indeterminate;
      chk.detail = "pencil kernel at the root is not cleanly one-dimensional";
      report.checks.push_back(std::move(chk));
      continue;
    }
    const Vector v = svd.matrixV().col(c - 1);
    const Complex ev = (d.e * v)(0, 0);
    if (std::abs(ev) > tol.eq_rel * en) {
      chk.verdict = Verdict::pass;
      chk.residual = std::abs(ev);
      chk.detail = "e v != 0";
      report.checks.push_back(std::move(chk));
      continue;
    }
    const Complex a = (v.adjoint() * k1 * v)(0, 0);
    const Complex b = (v.adjoint() * kn * v)(0, 0);
    const bool aligned = (k1 * v - a * v).norm() <= tol.eq_rel * k1n && (kn * v - b * v).norm() <= tol.eq_rel * knn;
    if (!aligned) {
      chk.verdict = Verdict::pass;
      chk.detail = "v is not a common eigenvector of C1 A2 and Cn A1";
      report.checks.push_back(std::move(chk));
      continue;
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const Complex rel = ipow(l1, n) * a - sign * ipow(l2, n) * b;
    const double ref = (std::pow(std::abs(l1), n) + std::pow(std::abs(l2), n)) * (k1n + knn);
    chk.residual = std::abs(rel);
    chk.scale = ref;
    if (std::abs(rel) <= tol.eq_rel * ref) {
      chk.verdict = Verdict::fail;
      chk.detail = "violating vector found";
    } else {
      chk.verdict = Verdict::pass;
      chk.detail = "mu-constraint not satisfiable";
    }
    report.checks.push_back(std::move(chk));
  }
  return report;
}

/// (P1), (P2) and, when both hold, (P3).
inline ValidationReport validate(const HirzADHM& d, const Tolerance& tol = {}) {
  ValidationReport r = validate_p1(d, tol);
  const ChartSetReport p2 = validate_p2(d, tol);
  Check p2c;
  p2c.name = "P2";
  p2c.verdict = p2.verdict;
  p2c.detail = p2.detail;
  r.checks.push_back(p2c);
  if (r.passed()) {
    r.append(validate_p3(d, tol));
  } else {
    Check p3;
    p3.name = "P3";
    p3.verdict = Verdict::indeterminate;
    p3.detail = "not checked: (P1) or (P2) does not hold";
    r.checks.push_back(std::move(p3));
  }
  return r;
}

// ---------------------------------------------------------------------------
// group action and transitions
// ---------------------------------------------------------------------------

inline HirzADHM act_gl2(const HirzADHM& d, const Matrix& phi1, const Matrix& phi2, const Tolerance& tol = {}) {
  check_shape(d);
  const int c = d.c();
  if (phi1.rows() != c || phi1.cols() != c || phi2.rows() != c || phi2.cols() != c) {
    throw ShapeError("act_gl2: gauges must be c x c");
  }
  const Matrix inv1 = checked_inverse(phi1, tol, "gauge phi1");
  const Matrix inv2 = checked_inverse(phi2, tol, "gauge phi2");
  HirzADHM out;
  out.n = d.n;
  out.A1 = phi2 * d.A1 * inv1;
  out.A2 = phi2 * d.A2 * inv1;
  for (const auto& cj : d.C) out.C.push_back(phi1 * cj * inv2);
  out.e = d.e * inv1;
  return out;
}

/// omega_lm: chart-m coordinates to chart-l coordinates on the overlap.
inline ChartCoords transition_omega(const ChartCoords& cc, int l, const Tolerance& tol = {}) {
  if (l < 0 || l > cc.c) throw DomainError("transition_omega: chart index outside 0..c");
  const PlaneADHM moved = transition_plane(cc.plane(), cc.m, l, cc.n, cc.c, tol);
  ChartCoords out = cc;
  out.m = l;
  out.B = moved.b1;
  out.E = moved.b2;
  out.e = moved.e;
  out.A2m = cc.A2m * overlap_factor(cc.B, cc.m, l, cc.c);
  return out;
}

// ---------------------------------------------------------------------------
// the linear system for the C's, Jacobian dimension
// ---------------------------------------------------------------------------

/// Block matrix of A1 C_q - A2 C_{q+1} = 0 (q = 1..n-1) acting on the
/// column-major vectorizations of C_1..C_n.
inline Matrix syst_matrix(const Matrix& A1, const Matrix& A2, int n) {
  require_square(A1, "A1");
  if (A2.rows() != A1.rows() || A2.cols() != A1.cols()) throw ShapeError("syst_matrix: A1 and A2 differ in shape");
  if (n < 2) throw DomainError("syst_rank: n must be >= 2");
  const Eigen::Index c = A1.rows(), c2 = c * c;
  Matrix sys = Matrix::Zero((n - 1) * c2, n * c2);
  for (int q = 0; q + 1 < n; ++q) {
    for (Eigen::Index col = 0; col < c; ++col) {  // I (x) A acts column by column
      sys.block(q * c2 + col * c, q * c2 + col * c, c, c) = A1;
      sys.block(q * c2 + col * c, (q + 1) * c2 + col * c, c, c) = -A2;
    }
  }
  return sys;
}

inline int syst_rank(const Matrix& A1, const Matrix& A2, int n, const Tolerance& tol = {}) {
  return rank_tol(syst_matrix(A1, A2, n), tol);
}

/// Jacobian of the (P1) residual map over (A1, A2, C_1..C_n, e).
inline Matrix p1_jacobian(const HirzADHM& d) {
  check_shape(d);
  const int n = d.n;
  const Eigen::Index c = d.c(), c2 = c * c;
  const Eigen::Index unknowns = (n + 2) * c2 + c;
  const Eigen::Index equations = n == 1 ? c2 : 2 * (n - 1) * c2;
  Matrix jac = Matrix::Zero(equations, unknowns);

  auto flat = [](const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); };
  const Matrix zero = Matrix::Zero(c, c);
  // slot 0: A1, slot 1: A2, slot 2+q: C_{q+1}; e does not enter (P1)
  for (int slot = 0; slot < n + 2; ++slot) {
    for (Eigen::Index k = 0; k < c2; ++k) {
      Matrix dir = zero;
      dir(k % c, k / c) = 1.0;
      const Matrix& dA1 = slot == 0 ? dir : zero;
      const Matrix& dA2 = slot == 1 ? dir : zero;
      auto dC = [&](int q) -> const Matrix& { return slot == 2 + q ? dir : zero; };
      const Eigen::Index col = slot * c2 + k;
      if (n == 1) {
        const Matrix& C1 = d.C[0];
        const Matrix diff = dA1 * C1 * d.A2 + d.A1 * dC(0) * d.A2 + d.A1 * C1 * dA2 - dA2 * C1 * d.A1 -
                            d.A2 * dC(0) * d.A1 - d.A2 * C1 * dA1;
        jac.col(col) = flat(diff);
        continue;
      }
      for (int q = 0; q + 1 < n; ++q) {
        const Matrix& cq = d.C[static_cast<std::size_t>(q)];
        const Matrix& cn = d.C[static_cast<std::size_t>(q + 1)];
        const Matrix left = dA1 * cq + d.A1 * dC(q) - dA2 * cn - d.A2 * dC(q + 1);
        const Matrix right = dC(q) * d.A1 + cq * dA1 - dC(q + 1) * d.A2 - cn * dA2;
        jac.col(col).segment(2 * q * c2, c2) = flat(left);
        jac.col(col).segment((2 * q + 1) * c2, c2) = flat(right);
      }
    }
  }
  return jac;
}

struct NullityResult {
  int nullity = 0;
  int rank = 0;
  int ambient = 0;
  double gap = std::numeric_limits<double>::infinity();  ///< kept / first discarded singular value
  Eigen::VectorXd singular_values;
};

/// Numerical nullity of the (P1) Jacobian; throws IndeterminateError unless
/// the kept and discarded singular values are separated by at least 1e3.
inline NullityResult jacobian_nullity(const HirzADHM& d, const Tolerance& tol = {}) {
  const Matrix jac = p1_jacobian(d);
  NullityResult r;
  r.ambient = static_cast<int>(jac.cols());
  r.singular_values = singular_values(jac);
  const auto& sv = r.singular_values;
  r.rank = (sv.size() == 0 || sv(0) == 0.0) ? 0 : rank_tol(jac, tol);
  if (r.rank > 0 && r.rank < sv.size()) {
    const double discarded = sv(r.rank);
    r.gap = discarded == 0.0 ? std::numeric_limits<double>::infinity() : sv(r.rank - 1) / discarded;
  }
  r.nullity = r.ambient - r.rank;
  if (r.gap < 1e3) {
    throw IndeterminateError("jacobian_nullity: singular-value gap " + std::to_string(r.gap) + " below 1e3");
  }
  return r;
}

// ---------------------------------------------------------------------------
// orbits
// ---------------------------------------------------------------------------

struct CanonicalHirz {
  HirzADHM rep;
  int chart = 0;
  Matrix phi1;  ///< act_gl2(input, phi1, phi2) == rep
  Matrix phi2;
};

/// Largest modulus of the base points in the affine coordinate of chart m
/// (the spectral radius of B_m). Gauge invariant; small means the chart is
/// far from every base point's pole.
inline double chart_reach(const HirzADHM& d, int m, const Tolerance& tol = {}) {
  const ChartCoords cc = to_chart(d, m, tol);
  double r = 0.0;
  for (Complex z : eigenvalues(cc.B)) r = std::max(r, std::abs(z));
  return r;
}

/// The smallest chart whose reach is within a factor 2 of the best one.
/// The slack keeps the choice stable under round-off in the eigenvalues.
inline int preferred_chart(const HirzADHM& d, const Tolerance& tol = {}) {
  const auto charts = validate_p2(d, tol).charts;
  if (charts.empty()) throw DomainError("preferred_chart: empty chart set");
  std::vector<double> reach;
  for (int m : charts) reach.push_back(chart_reach(d, m, tol));
  const double best = *std::min_element(reach.begin(), reach.end());
  for (std::size_t k = 0; k < charts.size(); ++k) {
    if (reach[k] <= 2.0 * best) return charts[k];
  }
  return charts.front();
}

/// Gauge A_2m to 1 on chart m, then fix the residual diagonal GL(c) with
/// the plane canonical form.
inline CanonicalHirz canonicalize_on(const HirzADHM& d, int m, const Tolerance& tol = {}) {
  const ChartCoords cc = to_chart(d, m, tol);
  const CanonicalPlane canon = canonical_form(cc.plane(), tol);
  CanonicalHirz out;
  out.chart = m;
  out.rep = assemble_from_chart(m, canon.form, identity(d.c()), d.n, tol);
  out.phi1 = canon.gauge;
  out.phi2 = canon.gauge * cc.A2m.partialPivLu().inverse();
  return out;
}

inline CanonicalHirz canonicalize(const HirzADHM& d, const Tolerance& tol = {}) {
  if (!validate(d, tol).passed()) throw DomainError("canonicalize: input is not valid");
  return canonicalize_on(d, preferred_chart(d, tol), tol);
}

/// Largest entrywise difference relative to max(1, largest entry).
inline double hirz_distance(const HirzADHM& a, const HirzADHM& b) {
  double scale = 1.0, diff = 0.0;
  auto visit = [&](const auto& x, const auto& y) {
    scale = std::max({scale, x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff()});
    diff = std::max(diff, (x - y).cwiseAbs().maxCoeff());
  };
  visit(a.A1, b.A1);
  visit(a.A2, b.A2);
  for (std::size_t q = 0; q < a.C.size(); ++q) visit(a.C[q], b.C[q]);
  visit(a.e, b.e);
  return diff / scale;
}

inline bool orbit_equal(const HirzADHM& d1, const HirzADHM& d2, const Tolerance& tol = {}) {
  check_shape(d1);
  check_shape(d2);
  if (d1.n != d2.n || d1.c() != d2.c()) throw ShapeError("orbit_equal: (n, c) differ");
  const auto k1 = canonicalize(d1, tol);
  if (!validate(d2, tol).passed()) throw DomainError("orbit_equal: second input is not valid");
  if (!validate_p2(d2, tol).contains(k1.chart)) return false;
  const auto k2 = canonicalize_on(d2, k1.chart, tol);
  return hirz_distance(k1.rep, k2.rep) <= tol.eq_rel;
}

}  // namespace adhmkit
