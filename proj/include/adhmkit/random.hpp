#pragma once

// Seeded generators of valid ADHM data.
//
// Draws are taken straight from the raw mt19937_64 stream (53-bit uniforms,
// Box-Muller normals) so that a seed produces bit-identical data with any
// standard library.

#include <Eigen/QR>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "adhmkit/errors.hpp"
#include "adhmkit/hirz_adhm.hpp"
#include "adhmkit/matrix_kernel.hpp"
#include "adhmkit/plane_adhm.hpp"

namespace adhmkit {

struct GenConfig {
  std::uint64_t seed = 0;
  int n = 1;
  int c = 1;
  double cond_cap = 1e4;
  int samples = 100;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    while (u == 0.0) u = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double t = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  /// Standard complex normal (unit variance).
  Complex cnormal() { return Complex{normal(), normal()} * std::numbers::sqrt2 * 0.5; }

  /// Uniform integer in [lo, hi].
  int index(int lo, int hi) { return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  bool coin() { return (eng_() >> 63) != 0; }

  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 finalizer, used to derive independent per-case seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.cnormal();
  }
  return m;
}

inline Matrix random_unitary(Rng& rng, Eigen::Index c) {
  const Matrix g = random_matrix(rng, c, c);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < c; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

/// U diag(sigma) V* with log-uniform sigma in [1, cond_cap]: condition number
/// below cond_cap by construction.
inline Matrix random_gauge(Rng& rng, Eigen::Index c, double cond_cap) {
  if (!(cond_cap > 1.0)) throw DomainError("random_gauge: cond_cap must exceed 1");
  const Matrix u = random_unitary(rng, c);
  const Matrix v = random_unitary(rng, c);
  Eigen::VectorXcd sigma(c);
  for (Eigen::Index k = 0; k < c; ++k) sigma(k) = std::pow(cond_cap, rng.uniform());
  return u * sigma.asDiagonal() * v.adjoint();
}

/// `count` complex normals, pairwise at least `min_sep` apart.
inline std::vector<Complex> distinct_complex(Rng& rng, int count, double min_sep) {
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < count) {
    const Complex z = rng.cnormal() * std::numbers::sqrt2;
    bool ok = true;
    for (auto w : out) ok = ok && std::abs(z - w) >= min_sep;
    if (ok) out.push_back(z);
  }
  return out;
}

inline constexpr double kMinEigenSeparation = 0.2;

/// Each random factor inside a generated point gets condition number at most
/// cond_cap^(1/4), so a point stays well inside the tolerance budget after a
/// further two-sided gauge of condition number cond_cap^(1/2) per side.
inline double generator_cond(double cond_cap) { return std::max(std::pow(cond_cap, 0.25), 1.0 + 1e-9); }

/// Commuting pair P diag(beta) P^-1, P diag(eps) P^-1 with distinct beta and
/// a random covector, retried until co-stable.
inline PlaneADHM gen_plane_valid(Rng& rng, int c, double cond_cap, const Tolerance& tol = {}) {
  if (c < 1) throw DomainError("gen_plane_valid: c must be >= 1");
  for (int attempt = 0; attempt < 10; ++attempt) {
    const auto beta = distinct_complex(rng, c, kMinEigenSeparation);
    const Matrix p = random_gauge(rng, c, generator_cond(cond_cap));
    const Matrix p_inv = p.inverse();
    Eigen::VectorXcd b(c), w(c);
    for (int k = 0; k < c; ++k) {
      b(k) = beta[static_cast<std::size_t>(k)];
      w(k) = rng.cnormal() * std::numbers::sqrt2;
    }
    PlaneADHM d{p * b.asDiagonal() * p_inv, p * w.asDiagonal() * p_inv, random_matrix(rng, 1, c)};
    if (validate_plane(d, tol).passed()) return d;
  }
  throw Error("gen_plane_valid: no valid point after 10 attempts");
}

inline PlaneADHM gen_plane_valid(const GenConfig& cfg, const Tolerance& tol = {}) {
  Rng rng(cfg.seed);
  return gen_plane_valid(rng, cfg.c, cfg.cond_cap, tol);
}

struct GeneratedHirz {
  HirzADHM data;
  int chart = 0;   ///< the chart it was built on
  PlaneADHM plane;  ///< chart coordinates before any extra gauge
  Matrix A;
};

/// from_chart(m, plane, A, n) for random m, plane and well-conditioned A,
/// followed on half of the seeds by a random GL(c) x GL(c) gauge.
inline GeneratedHirz generate_hirz(Rng& rng, int n, int c, double cond_cap, const Tolerance& tol = {}) {
  GeneratedHirz g;
  g.chart = rng.index(0, c);
  g.plane = gen_plane_valid(rng, c, cond_cap, tol);
  g.A = random_gauge(rng, c, generator_cond(cond_cap));
  g.data = from_chart(g.chart, g.plane, g.A, n, tol);
  if (rng.coin()) {
    const Matrix phi1 = random_gauge(rng, c, generator_cond(cond_cap));
    const Matrix phi2 = random_gauge(rng, c, generator_cond(cond_cap));
    g.data = act_gl2(g.data, phi1, phi2, tol);
  }
  return g;
}

inline HirzADHM gen_hirz_valid(const GenConfig& cfg, const Tolerance& tol = {}) {
  Rng rng(cfg.seed);
  return generate_hirz(rng, cfg.n, cfg.c, cfg.cond_cap, tol).data;
}

}  // namespace adhmkit
