#pragma once

// Independent checks: direct O(N^2) energies and small-N optimal
// configurations by seeded multistart coordinate search.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "greedy_energy/detail/numeric.hpp"
#include "greedy_energy/domain.hpp"
#include "greedy_energy/kernel.hpp"

namespace greedy_energy {

struct DirectEnergy {
  double value = 0.0;
  bool coincident = false;  // true when two points coincide under a singular kernel
};

/// sum_{i != j} k(x_i, x_j) by a full pair loop with compensated summation.
inline DirectEnergy direct_energy(const std::vector<PointVec>& config, const KernelSpec& spec) {
  DirectEnergy out;
  if (config.size() < 2) return out;
  const std::size_t dim = config.front().size();
  for (const auto& x : config)
    if (x.size() != dim) throw InvalidArgument("direct_energy: mixed dimensions");
  detail::with_kernel(spec, dim, [&](const auto& kernel) {
    detail::CompensatedSum sum;
    for (std::size_t i = 0; i < config.size(); ++i)
      for (std::size_t j = i + 1; j < config.size(); ++j) {
        const double k = kernel(config[i].data(), config[j].data());
        if (std::isinf(k)) {
          out.coincident = true;
          out.value = detail::kInf;
          return;
        }
        sum.add(k);
      }
    out.value = 2.0 * sum.value();
  });
  return out;
}

struct OptimizationResult {
  std::vector<PointVec> points;
  double energy = detail::kInf;
  int restarts_used = 0;
  bool converged = false;  // final step fell below the threshold
  std::uint64_t seed = 0;
};

struct SearchOptions {
  double step_threshold = 1e-10;
  long max_evaluations = 20'000'000;
};

namespace detail {

/// Chart coordinates of N points, flattened point-major.
class ChartConfig {
 public:
  ChartConfig(const Domain& domain, std::size_t n) : domain_(domain), axes_(domain.chart_axes()), n_(n) {}

  [[nodiscard]] std::size_t dims() const noexcept { return axes_.size(); }
  [[nodiscard]] const std::vector<ChartAxis>& axes() const noexcept { return axes_; }

  [[nodiscard]] std::vector<PointVec> points(const std::vector<double>& q) const {
    std::vector<PointVec> out;
    out.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i)
      out.push_back(domain_.chart_point(std::span<const double>(q.data() + i * dims(), dims())));
    return out;
  }

  /// Moves coordinate c by delta: periodic axes wrap, others clamp.
  [[nodiscard]] double moved(std::size_t c, double value, double delta) const {
    const ChartAxis& ax = axes_[c % dims()];
    double v = value + delta;
    if (ax.periodic) {
      const double span = ax.hi - ax.lo;
      v = ax.lo + std::fmod(v - ax.lo, span);
      if (v < ax.lo) v += span;
    } else {
      v = std::clamp(v, ax.lo, ax.hi);
    }
    return v;
  }

 private:
  const Domain& domain_;
  std::vector<ChartAxis> axes_;
  std::size_t n_;
};

inline double uniform01(std::minstd_rand& gen) {
  // portable across standard libraries, unlike uniform_real_distribution
  return static_cast<double>(gen() - std::minstd_rand::min()) /
         (static_cast<double>(std::minstd_rand::max() - std::minstd_rand::min()) + 1.0);
}

}  // namespace detail

/// Best of `restarts` seeded random starts, each refined by cyclic
/// coordinate search on chart parameters with step halving until the step
/// drops below 1e-10. Ties between restarts go to the earlier restart.
inline OptimizationResult optimize_small(const Domain& domain, const KernelSpec& spec, std::size_t n, int restarts,
                                         std::uint64_t seed, SearchOptions options = {}) {
  if (n < 2 || n > 12) throw InvalidArgument("optimize_small supports 2 <= N <= 12");
  if (restarts < 1) throw InvalidArgument("optimize_small needs restarts >= 1");
  const detail::ChartConfig chart(domain, n);
  const std::size_t nc = n * chart.dims();

  auto energy_of = [&](const std::vector<double>& q) {
    const DirectEnergy e = direct_energy(chart.points(q), spec);
    return e.coincident ? detail::kInf : e.value;
  };

  OptimizationResult best;
  best.seed = seed;
  for (int r = 0; r < restarts; ++r) {
    std::seed_seq sseq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(r)};
    std::minstd_rand gen(sseq);
    std::vector<double> q(nc);
    for (std::size_t c = 0; c < nc; ++c) {
      const ChartAxis& ax = chart.axes()[c % chart.dims()];
      q[c] = ax.lo + (ax.hi - ax.lo) * detail::uniform01(gen);
    }
    double e = energy_of(q);
    double step = 0.0;
    for (const auto& ax : chart.axes()) step = std::max(step, 0.25 * (ax.hi - ax.lo));
    long evals = 1;
    while (step >= options.step_threshold && evals < options.max_evaluations) {
      bool improved = false;
      for (std::size_t c = 0; c < nc; ++c) {
        for (double sign : {1.0, -1.0}) {
          const double old = q[c];
          q[c] = chart.moved(c, old, sign * step);
          const double trial = energy_of(q);
          ++evals;
          if (trial < e) {
            e = trial;
            improved = true;
            break;
          }
          q[c] = old;
        }
      }
      if (!improved) step *= 0.5;
    }
    const bool converged = step < options.step_threshold;
    if (e < best.energy) {
      best.points = chart.points(q);
      best.energy = e;
      best.converged = converged;
    }
    best.restarts_used = r + 1;
  }
  best.energy = direct_energy(best.points, spec).value;
  return best;
}

}  // namespace greedy_energy
