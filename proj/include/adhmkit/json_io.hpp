#pragma once

// JSON encoding of every value the library exchanges.
//
// A complex scalar is [re, im] (a bare number is accepted as a real), a
// matrix is an array of rows, a covector e is a one-row matrix (a flat list
// is accepted on input). Doubles are written with round-trip precision.

#include "json.hpp"

#include <cmath>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "adhmkit/angles_sigma.hpp"
#include "adhmkit/errors.hpp"
#include "adhmkit/geometry_bridge.hpp"
#include "adhmkit/hirz_adhm.hpp"
#include "adhmkit/matrix_kernel.hpp"
#include "adhmkit/plane_adhm.hpp"
#include "adhmkit/report.hpp"

namespace adhmkit {

using json = nlohmann::json;

/// Malformed input; `path` locates the offending node ("/C/1/0").
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what) : Error(what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

namespace jsonio {

inline std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const json& field(const json& j, std::string_view key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(child(path, key), "missing field");
  return *it;
}

inline double real_from(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

inline long integer_from(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<long>();
}

inline int count_from(const json& j, const std::string& path, int lo = 1) {
  const long v = integer_from(j, path);
  if (v < lo || v > 4096) throw ParseError(path, "integer out of range");
  return static_cast<int>(v);
}

inline json complex_to(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected a complex scalar [re, im]");
  return {real_from(j[0], child(path, 0)), real_from(j[1], child(path, 1))};
}

inline json matrix_to(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw ParseError(child(path, 0), "expected a non-empty row");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = child(path, i);
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError(rp, "ragged matrix row");
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from(j[i][k], child(rp, k));
    }
  }
  if (!all_finite(m)) throw ParseError(path, "non-finite entry");
  return m;
}

inline Matrix square_from(const json& j, const std::string& path, int c) {
  Matrix m = matrix_from(j, path);
  if (m.rows() != c || m.cols() != c) {
    throw ParseError(path, "expected a " + std::to_string(c) + " x " + std::to_string(c) + " matrix");
  }
  return m;
}

/// Accepts a one-row matrix or a flat list of c scalars; the expected c
/// disambiguates [[1, 2]] (a 1 x 2 real row) from [[1, 2]] read as 1 + 2i.
inline RowVector covector_from(const json& j, const std::string& path, int c) {
  if (j.is_array() && j.size() == 1 && j[0].is_array() && static_cast<int>(j[0].size()) == c) {
    return matrix_from(j, path);
  }
  if (j.is_array() && static_cast<int>(j.size()) == c) return matrix_from(json::array({j}), path);
  throw ParseError(path, "expected a 1 x " + std::to_string(c) + " covector");
}

inline void expect_kind(const json& j, std::string_view kind, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  const auto it = j.find("kind");
  if (it == j.end()) return;
  if (!it->is_string() || it->get<std::string>() != kind) {
    throw ParseError(child(path, "kind"), "expected kind \"" + std::string(kind) + "\"");
  }
}

inline std::string kind_of(const json& j) {
  if (!j.is_object()) throw ParseError("", "expected an object");
  const auto it = j.find("kind");
  if (it == j.end() || !it->is_string()) throw ParseError("/kind", "missing kind");
  return it->get<std::string>();
}

}  // namespace jsonio

// ---- plane_adhm -----------------------------------------------------------

inline json to_json(const PlaneADHM& d) {
  return {{"kind", "plane_adhm"},
          {"c", d.c()},
          {"b1", jsonio::matrix_to(d.b1)},
          {"b2", jsonio::matrix_to(d.b2)},
          {"e", jsonio::matrix_to(d.e)}};
}

inline PlaneADHM plane_from_json(const json& j, const std::string& path = "") {
  using namespace jsonio;
  expect_kind(j, "plane_adhm", path);
  const int c = count_from(field(j, "c", path), child(path, "c"));
  PlaneADHM d;
  d.b1 = square_from(field(j, "b1", path), child(path, "b1"), c);
  d.b2 = square_from(field(j, "b2", path), child(path, "b2"), c);
  d.e = covector_from(field(j, "e", path), child(path, "e"), c);
  return d;
}

// ---- hirz_adhm ------------------------------------------------------------

inline json to_json(const HirzADHM& d) {
  json cs = json::array();
  for (const auto& cq : d.C) cs.push_back(jsonio::matrix_to(cq));
  return {{"kind", "hirz_adhm"},          {"n", d.n},
          {"c", d.c()},                    {"A1", jsonio::matrix_to(d.A1)},
          {"A2", jsonio::matrix_to(d.A2)}, {"C", std::move(cs)},
          {"e", jsonio::matrix_to(d.e)}};
}

inline HirzADHM hirz_from_json(const json& j, const std::string& path = "") {
  using namespace jsonio;
  expect_kind(j, "hirz_adhm", path);
  HirzADHM d;
  d.n = count_from(field(j, "n", path), child(path, "n"));
  if (d.n > 64) throw ParseError(child(path, "n"), "n must be <= 64");
  const int c = count_from(field(j, "c", path), child(path, "c"));
  d.A1 = square_from(field(j, "A1", path), child(path, "A1"), c);
  d.A2 = square_from(field(j, "A2", path), child(path, "A2"), c);
  const json& cs = field(j, "C", path);
  if (!cs.is_array()) throw ParseError(child(path, "C"), "expected an array of matrices");
  if (cs.size() != static_cast<std::size_t>(d.n)) {
    throw ParseError(child(path, "C"),
                     "expected " + std::to_string(d.n) + " C matrices, got " + std::to_string(cs.size()));
  }
  for (std::size_t q = 0; q < cs.size(); ++q) d.C.push_back(square_from(cs[q], child(child(path, "C"), q), c));
  d.e = covector_from(field(j, "e", path), child(path, "e"), c);
  return d;
}

// ---- chart_coords ---------------------------------------------------------

inline json to_json(const ChartCoords& cc) {
  return {{"kind", "chart_coords"},       {"m", cc.m},
          {"n", cc.n},                     {"c", cc.c},
          {"B", jsonio::matrix_to(cc.B)},  {"E", jsonio::matrix_to(cc.E)},
          {"e", jsonio::matrix_to(cc.e)},  {"A2m", jsonio::matrix_to(cc.A2m)}};
}

inline ChartCoords chart_from_json(const json& j, const std::string& path = "") {
  using namespace jsonio;
  expect_kind(j, "chart_coords", path);
  ChartCoords cc;
  cc.n = count_from(field(j, "n", path), child(path, "n"));
  cc.c = count_from(field(j, "c", path), child(path, "c"));
  cc.m = count_from(field(j, "m", path), child(path, "m"), 0);
  if (cc.m > cc.c) throw ParseError(child(path, "m"), "chart index outside 0..c");
  cc.B = square_from(field(j, "B", path), child(path, "B"), cc.c);
  cc.E = square_from(field(j, "E", path), child(path, "E"), cc.c);
  cc.e = covector_from(field(j, "e", path), child(path, "e"), cc.c);
  cc.A2m = square_from(field(j, "A2m", path), child(path, "A2m"), cc.c);
  return cc;
}

// ---- c = 1 points ---------------------------------------------------------

inline json to_json(const TotPoint& p) {
  using jsonio::complex_to;
  return {{"kind", "tot_point"},
          {"n", p.n},
          {"y", json::array({complex_to(p.y1), complex_to(p.y2)})},
          {"u", json::array({complex_to(p.u1), complex_to(p.u2)})}};
}

inline json to_json(const YTildePoint& p) {
  using jsonio::complex_to;
  return {{"kind", "ytilde_point"},
          {"n", p.n},
          {"y", json::array({complex_to(p.y1), complex_to(p.y2)})},
          {"x", json::array({complex_to(p.x1), complex_to(p.x2)})}};
}

namespace jsonio {
inline std::pair<Complex, Complex> complex_pair(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected a pair of complex scalars");
  return {complex_from(j[0], child(path, 0)), complex_from(j[1], child(path, 1))};
}
}  // namespace jsonio

inline TotPoint tot_from_json(const json& j, const std::string& path = "") {
  using namespace jsonio;
  expect_kind(j, "tot_point", path);
  TotPoint p;
  p.n = count_from(field(j, "n", path), child(path, "n"));
  std::tie(p.y1, p.y2) = complex_pair(field(j, "y", path), child(path, "y"));
  std::tie(p.u1, p.u2) = complex_pair(field(j, "u", path), child(path, "u"));
  return p;
}

inline YTildePoint ytilde_from_json(const json& j, const std::string& path = "") {
  using namespace jsonio;
  expect_kind(j, "ytilde_point", path);
  YTildePoint p;
  p.n = count_from(field(j, "n", path), child(path, "n"));
  std::tie(p.y1, p.y2) = complex_pair(field(j, "y", path), child(path, "y"));
  std::tie(p.x1, p.x2) = complex_pair(field(j, "x", path), child(path, "x"));
  return p;
}

// ---- derived values -------------------------------------------------------

inline json to_json(const SigmaMatrix& s) {
  json rows = json::array();
  for (Eigen::Index p = 0; p < s.entries.rows(); ++p) {
    json row = json::array();
    for (Eigen::Index q = 0; q < s.entries.cols(); ++q) row.push_back(s.entries(p, q));
    rows.push_back(std::move(row));
  }
  return {{"kind", "sigma_matrix"}, {"h", s.h}, {"m", s.m}, {"c", s.cBase}, {"entries", std::move(rows)}};
}

inline json to_json(const BinaryForm& f) {
  json cs = json::array();
  for (auto a : f.coeffs) cs.push_back(jsonio::complex_to(a));
  return {{"kind", "binary_form"}, {"degree", f.degree()}, {"coeffs", std::move(cs)}};
}

inline BinaryForm binary_form_from_json(const json& j, const std::string& path = "") {
  using namespace jsonio;
  expect_kind(j, "binary_form", path);
  const json& cs = field(j, "coeffs", path);
  if (!cs.is_array() || cs.size() < 2) throw ParseError(child(path, "coeffs"), "expected at least two coefficients");
  BinaryForm f;
  for (std::size_t p = 0; p < cs.size(); ++p) f.coeffs.push_back(complex_from(cs[p], child(child(path, "coeffs"), p)));
  return f;
}

inline json to_json(const ProjPoint& p) { return json::array({jsonio::complex_to(p.lam1), jsonio::complex_to(p.lam2)}); }

inline json to_json(const std::vector<ProjPoint>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

inline json to_json(const std::vector<JointPair>& pairs) {
  json out = json::array();
  for (const auto& [b, e] : pairs) out.push_back(json::array({jsonio::complex_to(b), jsonio::complex_to(e)}));
  return out;
}

inline json to_json(const SupportMultiset& s) {
  json out = {{"kind", "support"}, {"base", to_json(s.base)}};
  if (s.chart_pairs) out["chart_pairs"] = {{"m", s.chart_pairs->m}, {"pairs", to_json(s.chart_pairs->pairs)}};
  return out;
}

namespace jsonio {
/// Infinite residuals (a refused check) are written as null.
inline json real_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
}  // namespace jsonio

inline json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"verdict", std::string(to_string(c.verdict))},
                      {"residual", jsonio::real_or_null(c.residual)},
                      {"scale", jsonio::real_or_null(c.scale)},
                      {"detail", c.detail}});
  }
  return {{"kind", "report"}, {"verdict", std::string(to_string(r.overall()))}, {"checks", std::move(checks)}};
}

inline json to_json(const ChartSetReport& r) {
  json dets = json::array();
  for (auto z : r.determinants) dets.push_back(jsonio::complex_to(z));
  return {{"kind", "chart_set"},   {"verdict", std::string(to_string(r.verdict))},
          {"charts", r.charts},    {"determinants", std::move(dets)},
          {"min_singular", r.min_singular}, {"scale", r.scale},
          {"detail", r.detail}};
}

}  // namespace adhmkit
