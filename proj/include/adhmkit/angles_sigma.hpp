#pragma once

// Fibre angles c_m = cos(pi m/(c+1)), s_m = sin(pi m/(c+1)) and the
// coefficient matrices sigma^h_m of rotated monomial bases of binary forms.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "adhmkit/errors.hpp"

namespace adhmkit {

/// Exact binomial coefficient; n <= 64.
inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || n > 64) throw DomainError("binomial coefficient: n must lie in [0, 64]");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(r);
}

struct AnglePair {
  int cBase = 1;
  long m = 0;
  double cos_val = 1.0;
  double sin_val = 0.0;
};

/// (cos, sin) of pi*m/(cBase+1). The angle is reduced to [-pi, pi] first so
/// that angle_pair(c, -m) is the exact mirror of angle_pair(c, m) and the
/// quarter turns come out as exact 0/1.
inline AnglePair angle_pair(int cBase, long m) {
  if (cBase < 1) throw DomainError("angle_pair: cBase must be >= 1");
  const long n = cBase + 1;
  long k = m % (2 * n);
  if (k < 0) k += 2 * n;
  const long r = k <= n ? k : k - 2 * n;
  const long a = r < 0 ? -r : r;

  double cv = 0.0, sv = 0.0;
  if (a == 0) {
    cv = 1.0;
  } else if (2 * a == n) {
    sv = 1.0;
  } else if (a == n) {
    cv = -1.0;
  } else if (2 * a < n) {
    const double t = std::numbers::pi * static_cast<double>(a) / static_cast<double>(n);
    cv = std::cos(t);
    sv = std::sin(t);
  } else {
    const double t = std::numbers::pi * static_cast<double>(n - a) / static_cast<double>(n);
    cv = -std::cos(t);
    sv = std::sin(t);
  }
  if (r < 0) sv = -sv;
  return {cBase, m, cv, sv};
}

/// sigma^h_m: row p holds the coefficients of
///   (s mu1 + c mu2)^p (c mu1 - s mu2)^(h-p)
/// in the monomials mu2^q mu1^(h-q), q = 0..h.
struct SigmaMatrix {
  int h = 0;
  long m = 0;
  int cBase = 1;
  Eigen::MatrixXd entries;
};

inline SigmaMatrix sigma_matrix(int h, long m, int cBase) {
  if (h < 0) throw DomainError("sigma_matrix: h must be >= 0");
  if (h > 64) throw DomainError("sigma_matrix: h must be <= 64");
  const AnglePair ang = angle_pair(cBase, m);
  const double c = ang.cos_val, s = ang.sin_val;

  SigmaMatrix out{h, m, cBase, Eigen::MatrixXd::Zero(h + 1, h + 1)};
  std::vector<double> first, second;
  for (int p = 0; p <= h; ++p) {
    // (s mu1 + c mu2)^p = sum_j binom(p, j) c^j s^(p-j) mu2^j mu1^(p-j)
    first.assign(static_cast<std::size_t>(p + 1), 0.0);
    for (int j = 0; j <= p; ++j) {
      first[static_cast<std::size_t>(j)] = static_cast<double>(binomial(p, j)) * std::pow(c, j) * std::pow(s, p - j);
    }
    // (c mu1 - s mu2)^(h-p) = sum_i binom(h-p, i) (-s)^i c^(h-p-i) mu2^i mu1^(h-p-i)
    second.assign(static_cast<std::size_t>(h - p + 1), 0.0);
    for (int i = 0; i <= h - p; ++i) {
      second[static_cast<std::size_t>(i)] =
          static_cast<double>(binomial(h - p, i)) * std::pow(-s, i) * std::pow(c, h - p - i);
    }
    for (int j = 0; j <= p; ++j) {
      for (int i = 0; i <= h - p; ++i) {
        out.entries(p, j + i) += first[static_cast<std::size_t>(j)] * second[static_cast<std::size_t>(i)];
      }
    }
  }
  return out;
}

}  // namespace adhmkit
