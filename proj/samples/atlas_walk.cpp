// Move random chart data around the atlas and back, printing how far the
// round trip drifts.

#include <cstdio>
#include <cstdlib>

#include "adhmkit/adhmkit.hpp"

using namespace adhmkit;

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 3;
  const int c = argc > 2 ? std::atoi(argv[2]) : 4;
  const HirzADHM d = gen_hirz_valid(GenConfig{2024, n, c});
  const auto charts = validate_p2(d).charts;

  ChartCoords cc = to_chart(d, charts.front());
  for (std::size_t k = 1; k < charts.size(); ++k) {
    cc = transition_omega(cc, charts[k]);
    const ChartCoords direct = to_chart(d, charts[k]);
    const double drift = (cc.B - direct.B).norm() / std::max(1.0, direct.B.norm());
    std::printf("chart %d: |B - B_direct| / |B| = %.3e\n", charts[k], drift);
  }
  const HirzADHM back = from_chart(cc);
  std::printf("A1 drift after the walk: %.3e\n", (back.A1 - d.A1).norm() / d.A1.norm());
}
