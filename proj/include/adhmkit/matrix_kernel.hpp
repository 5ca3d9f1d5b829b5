#pragma once

// Dense complex linear algebra shared by every other module: tolerances,
// SVD-based rank and kernels, spectra, binary forms and their roots on P^1.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adhmkit/errors.hpp"

namespace adhmkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RowVector = Eigen::RowVectorXcd;

/// Numerical thresholds. All three are relative and must lie in (0, 1).
struct Tolerance {
  double rank_rel = 1e-9;      ///< singular values below rank_rel * scale count as zero
  double eq_rel = 1e-8;        ///< relative equality of residuals and entries
  double root_cluster = 1e-6;  ///< radius under which roots/eigenvalues are merged

  void check() const {
    for (double t : {rank_rel, eq_rel, root_cluster}) {
      if (!(t > 0.0 && t < 1.0)) {
        throw DomainError("tolerances must lie strictly between 0 and 1");
      }
    }
  }
};

// ---------------------------------------------------------------------------
// basic helpers
// ---------------------------------------------------------------------------

inline bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

inline void require_finite(const Matrix& m, std::string_view what = "matrix") {
  if (!all_finite(m)) throw DomainError(std::string(what) + " has non-finite entries");
}

inline void require_square(const Matrix& m, std::string_view what = "matrix") {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw ShapeError(std::string(what) + " must be square and non-empty");
  }
}

inline Matrix identity(Eigen::Index c) { return Matrix::Identity(c, c); }

/// z^k by repeated squaring (std::pow on complex goes through exp/log).
inline Complex ipow(Complex z, int k) {
  if (k < 0) return Complex{1.0} / ipow(z, -k);
  Complex r{1.0};
  while (k > 0) {
    if (k & 1) r *= z;
    k >>= 1;
    if (k > 0) z *= z;
  }
  return r;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

inline Matrix matrix_power(const Matrix& m, int k) {
  require_square(m);
  if (k < 0) throw DomainError("negative matrix power");
  Matrix result = identity(m.rows());
  Matrix base = m;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

/// Singular values in decreasing order.
inline Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.size() == 0) throw ShapeError("singular values of an empty matrix");
  require_finite(m);
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

/// Spectral norm (0 for the zero matrix).
inline double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  auto sv = singular_values(m);
  return sv.size() ? sv(0) : 0.0;
}

/// Number of singular values strictly above `threshold`.
inline int rank_above(const Matrix& m, double threshold) {
  auto sv = singular_values(m);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++r;
  }
  return r;
}

/// Numerical rank relative to the largest singular value; 0 for the zero matrix.
inline int rank_tol(const Matrix& m, const Tolerance& tol = {}) {
  auto sv = singular_values(m);
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double threshold = tol.rank_rel * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++r;
  }
  return r;
}

/// Orthonormal null-space basis (as columns) at an absolute singular-value threshold.
inline Matrix kernel_matrix(const Matrix& m, double threshold) {
  require_finite(m);
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return identity(cols);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++r;
  }
  return svd.matrixV().rightCols(cols - r);
}

/// Orthonormal basis of the numerical null space, consistent with rank_tol.
inline std::vector<Vector> kernel_basis(const Matrix& m, const Tolerance& tol = {}) {
  require_finite(m);
  auto sv = singular_values(m);
  const double threshold = (sv.size() && sv(0) > 0.0) ? tol.rank_rel * sv(0) : 0.0;
  Matrix k = kernel_matrix(m, threshold);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(k.cols()));
  for (Eigen::Index j = 0; j < k.cols(); ++j) out.emplace_back(k.col(j));
  return out;
}

/// Eigenvalues with algebraic multiplicity, in solver order.
inline std::vector<Complex> eigenvalues(const Matrix& m) {
  require_square(m);
  require_finite(m);
  Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw IndeterminateError("eigenvalue iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

inline Complex determinant(const Matrix& m) {
  require_square(m);
  return m.determinant();
}

/// True when the smallest singular value exceeds rank_rel * scale. A
/// non-positive scale means "relative to the matrix's own norm".
inline bool is_invertible(const Matrix& m, const Tolerance& tol, double scale = -1.0) {
  require_square(m);
  auto sv = singular_values(m);
  const double ref = scale > 0.0 ? scale : sv(0);
  return sv(sv.size() - 1) > tol.rank_rel * ref;
}

/// Inverse with a singularity check; `what` names the matrix in the error.
inline Matrix checked_inverse(const Matrix& m, const Tolerance& tol, std::string_view what = "matrix",
                              double scale = -1.0) {
  require_finite(m, what);
  if (!is_invertible(m, tol, scale)) throw DomainError(std::string(what) + " is singular");
  return m.partialPivLu().inverse();
}

// ---------------------------------------------------------------------------
// multisets
// ---------------------------------------------------------------------------

/// Greedy nearest-pair matching of two equal-size point sets. Returns the
/// largest matched distance, or +inf when the sizes differ.
template <typename T, typename Dist>
double greedy_match(std::span<const T> a, std::span<const T> b, Dist dist) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  struct Pair {
    double d;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) pairs.push_back({dist(a[i], b[j]), i, j});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });
  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  double worst = 0.0;
  std::size_t matched = 0;
  for (const auto& p : pairs) {
    if (used_a[p.i] || used_b[p.j]) continue;
    used_a[p.i] = used_b[p.j] = true;
    worst = std::max(worst, p.d);
    if (++matched == a.size()) break;
  }
  return worst;
}

/// Complex multisets equal up to rel_tol * max(1, largest modulus).
inline bool multisets_close(std::span<const Complex> a, std::span<const Complex> b, double rel_tol) {
  double scale = 1.0;
  for (auto z : a) scale = std::max(scale, std::abs(z));
  for (auto z : b) scale = std::max(scale, std::abs(z));
  const double d = greedy_match<Complex>(a, b, [](Complex x, Complex y) { return std::abs(x - y); });
  return d <= rel_tol * scale;
}

// ---------------------------------------------------------------------------
// P^1 and binary forms
// ---------------------------------------------------------------------------

/// A point [lam1 : lam2] of P^1, stored with its larger-modulus coordinate
/// equal to 1 (lam2 wins ties). Normalizing twice equals normalizing once.
struct ProjPoint {
  Complex lam1{0.0};
  Complex lam2{1.0};

  static ProjPoint normalized(Complex l1, Complex l2) {
    if (l1 == Complex{0.0} && l2 == Complex{0.0}) throw DomainError("[0:0] is not a point of P^1");
    // near-ties go to lam2 so that [-1:1] does not flip with round-off
    if (std::abs(l2) >= std::abs(l1) * (1.0 - 1e-12)) return {l1 / l2, Complex{1.0}};
    return {Complex{1.0}, l2 / l1};
  }

  ProjPoint normalized() const { return normalized(lam1, lam2); }

  /// Chordal distance, in [0, 1].
  double distance(const ProjPoint& o) const {
    const double num = std::abs(lam1 * o.lam2 - lam2 * o.lam1);
    const double den = std::hypot(std::abs(lam1), std::abs(lam2)) * std::hypot(std::abs(o.lam1), std::abs(o.lam2));
    return num / den;
  }
};

inline bool proj_multisets_close(std::span<const ProjPoint> a, std::span<const ProjPoint> b, double tol) {
  return greedy_match<ProjPoint>(a, b, [](const ProjPoint& x, const ProjPoint& y) { return x.distance(y); }) <= tol;
}

/// f(nu1, nu2) = sum_p coeffs[p] * nu1^(degree - p) * nu2^p.
struct BinaryForm {
  std::vector<Complex> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  Complex operator()(Complex nu1, Complex nu2) const {
    // Horner in whichever coordinate is smaller keeps powers bounded.
    const int d = degree();
    Complex acc{0.0};
    if (std::abs(nu1) >= std::abs(nu2)) {
      const Complex t = nu2 / nu1;
      for (int p = d; p >= 0; --p) acc = acc * t + coeffs[static_cast<std::size_t>(p)];
      return acc * ipow(nu1, d);
    }
    const Complex t = nu1 / nu2;
    for (int p = 0; p <= d; ++p) acc = acc * t + coeffs[static_cast<std::size_t>(p)];
    return acc * ipow(nu2, d);
  }

  double max_abs() const {
    double m = 0.0;
    for (auto a : coeffs) m = std::max(m, std::abs(a));
    return m;
  }

  bool identically_zero() const { return max_abs() == 0.0; }

  /// The form divided by its largest-modulus coefficient.
  BinaryForm normalized() const {
    if (identically_zero()) throw DomainError("cannot normalize the zero form");
    std::size_t k = 0;
    for (std::size_t p = 1; p < coeffs.size(); ++p) {
      if (std::abs(coeffs[p]) > std::abs(coeffs[k])) k = p;
    }
    BinaryForm out = *this;
    for (auto& a : out.coeffs) a /= coeffs[k];
    return out;
  }
};

namespace detail {

// Roots of sum_{i=0}^{d} poly[i] x^i via the companion matrix; poly[d] != 0.
inline std::vector<Complex> companion_roots(const std::vector<Complex>& poly) {
  const int d = static_cast<int>(poly.size()) - 1;
  if (d <= 0) return {};
  if (d == 1) return {-poly[0] / poly[1]};
  Matrix comp = Matrix::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -poly[static_cast<std::size_t>(i)] / poly[static_cast<std::size_t>(d)];
  return eigenvalues(comp);
}

// Single-linkage clusters of `pts` under the chordal distance; each member is
// replaced by the cluster mean taken in a common affine chart.
inline void merge_clusters(std::vector<ProjPoint>& pts, double radius) {
  const std::size_t k = pts.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (pts[i].distance(pts[j]) < radius) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> groups(k);
  for (std::size_t i = 0; i < k; ++i) groups[find(i)].push_back(i);
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    // Chart of the first member: affine coordinate t = lam1/lam2 or lam2/lam1.
    const bool by_lam2 = std::abs(pts[g[0]].lam2) >= std::abs(pts[g[0]].lam1);
    Complex mean{0.0};
    for (auto i : g) mean += by_lam2 ? pts[i].lam1 / pts[i].lam2 : pts[i].lam2 / pts[i].lam1;
    mean /= static_cast<double>(g.size());
    const ProjPoint merged = by_lam2 ? ProjPoint::normalized(mean, 1.0) : ProjPoint::normalized(1.0, mean);
    for (auto i : g) pts[i] = merged;
  }
}

}  // namespace detail

/// Coefficients of det(nu1 a1 + nu2 a2) in the basis nu1^(c-p) nu2^p. The
/// determinant is sampled at nu = (1, w^k), w = exp(2 pi i/(c+1)), so the
/// interpolation system is a unitary DFT.
inline BinaryForm pencil_form(const Matrix& a1, const Matrix& a2) {
  require_square(a1, "A1");
  if (a2.rows() != a1.rows() || a2.cols() != a1.cols()) throw ShapeError("pencil_form: A1 and A2 differ in shape");
  require_finite(a1, "A1");
  require_finite(a2, "A2");
  const int c = static_cast<int>(a1.rows());
  const int samples = c + 1;
  std::vector<Complex> values(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * k / samples);
    values[static_cast<std::size_t>(k)] = (a1 + w * a2).determinant();
  }
  BinaryForm f;
  f.coeffs.assign(static_cast<std::size_t>(samples), Complex{0.0});
  for (int p = 0; p < samples; ++p) {
    Complex acc{0.0};
    for (int k = 0; k < samples; ++k) {
      acc += values[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * std::numbers::pi * k * p / samples);
    }
    f.coeffs[static_cast<std::size_t>(p)] = acc / static_cast<double>(samples);
  }
  return f;
}

/// The `degree` roots of a binary form on P^1, with multiplicity. Vanishing
/// low-index coefficients contribute [1:0], vanishing high-index ones [0:1];
/// the rest are found by dehomogenizing at the coordinate whose leading
/// coefficient is larger and solving the companion eigenproblem.
inline std::vector<ProjPoint> binary_form_roots(const BinaryForm& f, const Tolerance& tol = {}) {
  if (f.coeffs.empty()) throw ShapeError("binary form without coefficients");
  for (auto a : f.coeffs) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw DomainError("binary form has non-finite coefficients");
  }
  if (f.identically_zero()) throw DomainError("binary form is identically zero");
  const int d = f.degree();
  const double noise = tol.eq_rel * f.max_abs();
  auto vanishes = [&](int p) { return std::abs(f.coeffs[static_cast<std::size_t>(p)]) <= noise; };

  int low = 0;
  while (low <= d && vanishes(low)) ++low;
  int high = 0;
  while (high <= d - low && vanishes(d - high)) ++high;

  std::vector<ProjPoint> roots;
  roots.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < low; ++i) roots.push_back({Complex{1.0}, Complex{0.0}});
  for (int i = 0; i < high; ++i) roots.push_back({Complex{0.0}, Complex{1.0}});

  const int first = low, last = d - high;  // both coefficients nonzero
  if (last > first) {
    const auto& a = f.coeffs;
    std::vector<Complex> poly;
    if (std::abs(a[static_cast<std::size_t>(first)]) >= std::abs(a[static_cast<std::size_t>(last)])) {
      // t = nu1/nu2: sum_p a_p t^(last - p)
      for (int p = last; p >= first; --p) poly.push_back(a[static_cast<std::size_t>(p)]);
      for (auto t : detail::companion_roots(poly)) roots.push_back(ProjPoint::normalized(t, 1.0));
    } else {
      // u = nu2/nu1: sum_p a_p u^(p - first)
      for (int p = first; p <= last; ++p) poly.push_back(a[static_cast<std::size_t>(p)]);
      for (auto u : detail::companion_roots(poly)) roots.push_back(ProjPoint::normalized(1.0, u));
    }
  }
  detail::merge_clusters(roots, tol.root_cluster);
  return roots;
}

}  // namespace adhmkit
