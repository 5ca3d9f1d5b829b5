// Build a point of P^n(c) from two points of the plane, check it, and look at
// it on every chart.

#include <iostream>

#include "adhmkit/adhmkit.hpp"

using namespace adhmkit;

int main() {
  const int n = 2;
  const std::vector<JointPair> points{{1.0, 3.0}, {2.0, 4.0}};
  const HirzADHM d = from_chart(0, from_points(points), identity(2), n);

  const ValidationReport r = validate(d);
  std::cout << "validate: " << to_string(r.overall()) << "\n";
  for (const auto& chk : r.checks) std::cout << "  " << chk.name << " " << to_string(chk.verdict) << "\n";

  std::cout << "base support:\n";
  for (const auto& p : base_support(d).base) std::cout << "  [" << p.lam1 << " : " << p.lam2 << "]\n";

  for (int m : validate_p2(d).charts) {
    const auto pairs = chart_support(d, m).chart_pairs->pairs;
    std::cout << "chart " << m << ":";
    for (const auto& [b, e] : pairs) std::cout << " (" << b << ", " << e << ")";
    std::cout << "\n";
  }

  // a random gauge does not change the orbit
  Rng rng(1);
  const HirzADHM moved = act_gl2(d, random_gauge(rng, 2, 10.0), random_gauge(rng, 2, 10.0));
  std::cout << "orbit_equal after gauge: " << std::boolalpha << orbit_equal(d, moved) << "\n";
  std::cout << to_json(canonicalize(d).rep).dump() << "\n";
}
