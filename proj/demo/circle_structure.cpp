// Greedy Riesz points on the unit circle: the first 2^m points are equally
// spaced, and the first 3 * 2^m points are the 2^{m+2}-th roots of unity with
// one coset removed. Prints both facts and the second-order statistic.

#include <cmath>
#include <cstdio>

#include "greedy_energy/greedy_energy.hpp"

namespace ge = greedy_energy;

int main() {
  const double s = 0.5;
  const std::size_t grid = 1024;
  const auto trace = ge::greedy_energy_sequence(ge::Domain::circle(), ge::KernelSpec::riesz(s), 768, std::nullopt,
                                                ge::GridPolicy{ge::detail::kTwoPi / grid, 0, 16});

  std::printf("first 12 grid indices (grid of %zu):", grid);
  for (std::size_t i = 0; i < 12; ++i) std::printf(" %td", trace.grid_indices[i]);
  std::printf("\n\n%8s %14s %12s %12s\n", "N", "structure", "gap sum", "2nd order");

  const double lead = ge::sphere_constant(1, s);
  const auto gaps = ge::gap_sum_report(trace);
  for (const auto& row : gaps.rows) {
    if (row.subsequence == "all") continue;
    const auto idx = ge::chosen_indices(trace, row.n);
    const bool ok = row.subsequence == "2^n" ? ge::is_equally_spaced(idx, grid)
                                             : ge::is_dyadic_complement_structure(idx, grid);
    const double n = static_cast<double>(row.n);
    const double second = (trace.energy_at(row.n) - lead * n * n) / std::pow(n, 1.0 + s);
    std::printf("%8zu %14s %12.6f %12.6f\n", row.n, ok ? "yes" : "no", row.statistic, second);
  }
  std::printf("\nreference constants: 2^n -> %.6f, 3*2^n -> %.6f\n", ge::circle_second_order_constant(s),
              ge::f_factor(s) * ge::circle_second_order_constant(s));
  return 0;
}
