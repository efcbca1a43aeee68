// Greedy best packing on [0, 1] started at 1: the sequence fills dyadic
// levels left to right, so the fraction of points in [0, 1/2] oscillates
// and n * delta swings between 1/2 and 1.

#include <cstdio>

#include "greedy_energy/greedy_energy.hpp"

namespace ge = greedy_energy;

int main() {
  const auto trace = ge::greedy_packing_sequence(ge::Domain::interval(0.0, 1.0), 257, ge::PointVec{1.0},
                                                 ge::GridPolicy{1.0 / 1024.0, 0, 16});
  std::printf("%6s %10s %12s %10s\n", "n", "x_n", "n*delta", "left frac");
  std::size_t left = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double x = trace.points[i][0];
    if (x <= 0.5) ++left;
    const bool show = i < 10 || (i & (i - 1)) == 0 || (i > 2 && ((i - 1) & (i - 2)) == 0) || i % 48 == 0;
    if (i > 0 && show)
      std::printf("%6zu %10.6f %12.6f %10.6f\n", i, x, static_cast<double>(i) * trace.delta_at(i + 1),
                  static_cast<double>(left) / static_cast<double>(i + 1));
  }
  const auto rep = ge::packing_report(trace);
  std::printf("\nliminf estimate %.6f, limsup estimate %.6f, bound %.6f\n", *rep.summary_value("liminf_estimate"),
              *rep.summary_value("limsup_estimate"), *rep.summary_value("liminf_bound"));
  return 0;
}
