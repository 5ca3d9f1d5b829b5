#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adhmkit {

enum class Verdict { pass, fail, indeterminate };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

/// Outcome of one named condition, e.g. "T1" or "P1.left[2]".
struct Check {
  std::string name;
  Verdict verdict = Verdict::indeterminate;
  double residual = 0.0;  ///< norm of the defining residual, when one exists
  double scale = 0.0;     ///< reference magnitude the residual was judged against
  std::string detail;
};

struct ValidationReport {
  std::vector<Check> checks;

  /// fail if any check failed, else indeterminate if any is, else pass.
  Verdict overall() const {
    bool undecided = false;
    for (const auto& c : checks) {
      if (c.verdict == Verdict::fail) return Verdict::fail;
      if (c.verdict == Verdict::indeterminate) undecided = true;
    }
    return undecided ? Verdict::indeterminate : Verdict::pass;
  }

  bool passed() const { return overall() == Verdict::pass; }

  const Check* find(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  Verdict verdict_of(std::string_view name) const {
    const Check* c = find(name);
    return c ? c->verdict : Verdict::indeterminate;
  }

  void append(const ValidationReport& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

/// pass when residual <= rel * scale (a zero residual always passes).
inline Check residual_check(std::string name, double residual, double scale, double rel) {
  Check c;
  c.name = std::move(name);
  c.residual = residual;
  c.scale = scale;
  c.verdict = (residual == 0.0 || residual <= rel * scale) ? Verdict::pass : Verdict::fail;
  return c;
}

}  // namespace adhmkit
