#pragma once

// Greedy k-energy (Leja) sequences and greedy best-packing (Leja-Bos)
// sequences on a candidate grid with optional local refinement.
//
// Each step maintains, for every grid candidate x, the running potential
// U(x) = sum_j k(x, a_j) in compensated form. The next point is the
// unoccupied minimizer; candidates whose potential is within
// kTieRelative * sum_j |k(x, a_j)| of the minimum are treated as tied and
// the smallest grid index wins (grid order = parameter, then coordinates).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "greedy_energy/detail/numeric.hpp"
#include "greedy_energy/domain.hpp"
#include "greedy_energy/kernel.hpp"

namespace greedy_energy {

struct GridPolicy {
  /// Coarse grid spacing; <= 0 picks a size from the domain and N.
  double resolution = 0.0;
  int refine_rounds = 3;
  int refine_factor = 16;
};

struct GridMeta {
  double resolution = 0.0;
  std::size_t grid_size = 0;
  int refine_rounds = 0;
  int refine_factor = 0;
};

enum class TraceKind { energy, packing };

/// Ordered greedy sequence with its ledgers. Arrays are aligned with
/// `points`: entry i belongs to the configuration of the first i + 1 points.
/// potentials[i] = U(a_i) over the previous points (NaN at i = 0),
/// energies[i] = E(alpha_{i+1}), min_dists[i] = delta(alpha_{i+1}) (inf at i = 0).
/// Packing traces leave potentials and energies empty.
struct GreedyTrace {
  TraceKind kind = TraceKind::energy;
  std::size_t first_index = 1;  // 1 for energy sequences (a_1, ...), 0 for packing (a_0, ...)
  std::vector<PointVec> points;
  std::vector<double> params;                // scalar parameters when the domain has them
  std::vector<std::ptrdiff_t> grid_indices;  // coarse grid index, -1 for refined points
  std::vector<double> potentials;
  std::vector<double> energies;
  std::vector<double> min_dists;
  std::optional<KernelSpec> spec;
  Domain domain = Domain::circle();
  GridMeta grid_meta;

  [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
  /// E(alpha_n) for the configuration of the first n points.
  [[nodiscard]] double energy_at(std::size_t n) const { return energies.at(n - 1); }
  [[nodiscard]] double delta_at(std::size_t n) const { return min_dists.at(n - 1); }
  [[nodiscard]] std::vector<PointVec> prefix(std::size_t n) const {
    return {points.begin(), points.begin() + static_cast<std::ptrdiff_t>(std::min(n, points.size()))};
  }
};

class GridExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr double kTieRelative = 1e-13;
inline constexpr double kPackingTieRelative = 1e-12;

inline double auto_resolution(const Domain& domain, std::size_t n_points) {
  const double target = std::max<double>(4096.0, 16.0 * static_cast<double>(n_points));
  switch (domain.kind()) {
    case DomainKind::circle: {
      const std::size_t m = std::max<std::size_t>(8, std::bit_ceil(n_points));
      return kTwoPi / static_cast<double>(m);
    }
    case DomainKind::interval:
    case DomainKind::curve: return *domain.param_length() / target;
    case DomainKind::sphere: {
      const double d = static_cast<double>(domain.intrinsic_dim());
      if (domain.intrinsic_dim() == 2) return std::sqrt(1.5 * 4.0 * kPi / target);
      const double m = std::pow(target / (2.0 * (d + 1.0)), 1.0 / d);
      return 2.0 / std::max(2.0, std::floor(m));
    }
    case DomainKind::box: return std::pow(domain.measure() / target, 1.0 / static_cast<double>(domain.ambient_dim()));
  }
  return 0.0;
}

inline std::size_t locate(const CandidateGrid& grid, const PointVec& p) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto q = grid.point(i);
    if (std::equal(q.begin(), q.end(), p.begin())) return i;
  }
  double best = kInf;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d2 = squared_distance(grid.point(i).data(), p.data(), grid.dim);
    if (d2 < best) {
      best = d2;
      arg = i;
    }
  }
  if (best > 1e-24) throw InvalidArgument("anchor point is not a grid point");
  return arg;
}

/// Running compensated potentials over a fixed candidate grid.
class PotentialField {
 public:
  explicit PotentialField(std::size_t n) : hi_(n, 0.0), lo_(n, 0.0), mass_(n, 0.0), occupied_(n, 0) {}

  [[nodiscard]] std::size_t size() const noexcept { return hi_.size(); }
  [[nodiscard]] double value(std::size_t i) const noexcept { return hi_[i] + lo_[i]; }
  [[nodiscard]] double mass(std::size_t i) const noexcept { return mass_[i]; }
  [[nodiscard]] bool occupied(std::size_t i) const noexcept { return occupied_[i] != 0; }
  void occupy(std::size_t i) noexcept { occupied_[i] = 1; }

  template <class Kernel>
  void add_point(const CandidateGrid& grid, const Kernel& kernel, const double* a) {
    parallel_chunks(size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        if (occupied_[i]) continue;
        const double t = kernel(grid.coords.data() + i * grid.dim, a);
        double h = 0.0;
        double err = 0.0;
        two_sum(hi_[i], t, h, err);
        hi_[i] = h;
        lo_[i] += err;
        mass_[i] += std::abs(t);
      }
    });
  }

  /// Cyclic grid: candidate i receives table[(i - offset) mod M].
  void add_cyclic(const std::vector<double>& table, const std::vector<double>& abs_table, std::size_t offset) {
    const std::size_t m = size();
    parallel_chunks(m, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        const std::size_t j = i >= offset ? i - offset : i + m - offset;
        double h = 0.0;
        double err = 0.0;
        two_sum(hi_[i], table[j], h, err);
        hi_[i] = h;
        lo_[i] += err;
        mass_[i] += abs_table[j];
      }
    });
  }

  /// Smallest index among unoccupied candidates within tolerance of the minimum; -1 if none.
  [[nodiscard]] std::ptrdiff_t argmin(double tie_rel) const {
    double best = kInf;
    std::size_t arg = size();
    for (std::size_t i = 0; i < size(); ++i) {
      const double v = occupied_[i] ? kInf : hi_[i] + lo_[i];
      if (v < best) {
        best = v;
        arg = i;
      }
    }
    if (arg == size()) {
      for (std::size_t i = 0; i < size(); ++i)
        if (!occupied_[i]) return static_cast<std::ptrdiff_t>(i);  // all remaining potentials are +inf
      return -1;
    }
    const double threshold = best + tie_rel * mass_[arg];
    for (std::size_t i = 0; i < arg; ++i)
      if (!occupied_[i] && hi_[i] + lo_[i] <= threshold) return static_cast<std::ptrdiff_t>(i);
    return static_cast<std::ptrdiff_t>(arg);
  }

 private:
  std::vector<double> hi_;
  std::vector<double> lo_;
  std::vector<double> mass_;
  std::vector<unsigned char> occupied_;
};

struct Choice {
  PointVec point;
  double param = kNaN;
  std::ptrdiff_t grid_index = -1;
  double value = 0.0;
};

inline void validate_request(const Domain& domain, std::size_t n_points, const PointVec& first) {
  if (n_points < 2) throw InvalidArgument("greedy sequences need n_points >= 2");
  if (first.size() != domain.ambient_dim()) throw InvalidArgument("first point has the wrong dimension");
  if (!domain.contains(first)) throw InvalidArgument("first point is not on the domain");
}

inline GridMeta meta_for(const CandidateGrid& grid, int rounds, int factor) {
  return {grid.resolution, grid.size(), rounds, factor};
}

inline double param_or_nan(const Domain& domain, const CandidateGrid& grid, std::size_t i) {
  if (grid.has_params()) return grid.params[i];
  (void)domain;
  return kNaN;
}

}  // namespace detail

/// Greedy k-energy sequence: a_1 given, each a_{n+1} minimizes
/// U_{n+1}(x) = sum_{j <= n} k(x, a_j) over the candidate grid, refined
/// locally for `policy.refine_rounds` rounds (the dyadic circle grid is exact
/// and is not refined).
inline GreedyTrace greedy_energy_sequence(const Domain& domain, const KernelSpec& spec, std::size_t n_points,
                                          const std::optional<PointVec>& a1 = std::nullopt,
                                          GridPolicy policy = {}) {
  using namespace detail;
  const PointVec first = a1.value_or(domain.default_anchor());
  validate_request(domain, n_points, first);
  const double resolution = policy.resolution > 0.0 ? policy.resolution : auto_resolution(domain, n_points);
  const CandidateGrid grid = domain.build_grid(resolution, first);
  if (n_points > grid.size() && grid.cyclic_size != 0)
    throw GridExhausted("circle grid has " + std::to_string(grid.size()) + " candidates, fewer than n_points");
  const bool cyclic = grid.cyclic_size != 0 && !spec.weighted();
  const int rounds = grid.cyclic_size != 0 ? 0 : std::max(0, policy.refine_rounds);
  const std::size_t dim = domain.ambient_dim();

  GreedyTrace trace;
  trace.kind = TraceKind::energy;
  trace.first_index = 1;
  trace.spec = spec;
  trace.domain = domain;
  trace.grid_meta = meta_for(grid, rounds, policy.refine_factor);

  PotentialField field(grid.size());
  std::vector<double> table;
  std::vector<double> abs_table;
  std::set<std::size_t> chosen_cyclic;
  if (cyclic) {
    const std::size_t m = grid.cyclic_size;
    table.assign(m, 0.0);
    for (std::size_t d = 1; d < m; ++d) {
      const double chord = dyadic_chord(d, m);
      table[d] = spec.s() == 0.0 ? -std::log(chord) : std::pow(chord, -spec.s());
    }
    abs_table.resize(m);
    for (std::size_t d = 0; d < m; ++d) abs_table[d] = std::abs(table[d]);
  }

  with_kernel(spec, dim, [&](const auto& kernel) {
    CompensatedSum energy;
    double delta = kInf;

    auto record = [&](const Choice& c, double potential) {
      const std::size_t n = trace.points.size();
      double nearest = kInf;
      if (cyclic && c.grid_index >= 0 && n > 0) {
        const auto idx = static_cast<std::size_t>(c.grid_index);
        const std::size_t m = grid.cyclic_size;
        auto it = chosen_cyclic.lower_bound(idx);
        const std::size_t next = it == chosen_cyclic.end() ? *chosen_cyclic.begin() + m : *it;
        const std::size_t prev = it == chosen_cyclic.begin() ? *chosen_cyclic.rbegin() : *std::prev(it);
        const std::size_t gap = std::min(next - idx, idx >= prev ? idx - prev : idx + m - prev);
        nearest = dyadic_chord(gap, m);
      } else {
        for (const auto& q : trace.points)
          nearest = std::min(nearest, std::sqrt(squared_distance(q.data(), c.point.data(), dim)));
      }
      if (n > 0) {
        delta = std::min(delta, nearest);
        energy.add(2.0 * potential);
      }
      trace.points.push_back(c.point);
      trace.params.push_back(c.param);
      trace.grid_indices.push_back(c.grid_index);
      trace.potentials.push_back(n == 0 ? kNaN : potential);
      trace.energies.push_back(energy.value());
      trace.min_dists.push_back(delta);
      if (cyclic) chosen_cyclic.insert(static_cast<std::size_t>(c.grid_index));
    };

    auto absorb = [&](const Choice& c) {
      if (c.grid_index >= 0) field.occupy(static_cast<std::size_t>(c.grid_index));
      if (cyclic) {
        field.add_cyclic(table, abs_table, static_cast<std::size_t>(c.grid_index));
      } else {
        field.add_point(grid, kernel, c.point.data());
      }
    };

    auto direct_potential = [&](PointView y) {
      CompensatedSum u;
      for (const auto& q : trace.points) u.add(kernel(y.data(), q.data()));
      return std::pair{u.value(), u.mass()};
    };

    const std::size_t i0 = locate(grid, first);
    Choice c0{grid.point_vec(i0), param_or_nan(domain, grid, i0), static_cast<std::ptrdiff_t>(i0), 0.0};
    record(c0, 0.0);
    absorb(c0);

    for (std::size_t n = 1; n < n_points; ++n) {
      const std::ptrdiff_t best = field.argmin(kTieRelative);
      if (best < 0) throw GridExhausted("candidate grid exhausted after " + std::to_string(n) + " points");
      const auto bi = static_cast<std::size_t>(best);
      Choice c{grid.point_vec(bi), param_or_nan(domain, grid, bi), best, field.value(bi)};
      double mass = field.mass(bi);

      double radius = grid.resolution;
      for (int r = 0; r < rounds; ++r) {
        const CandidateGrid local = domain.refine_near(c.point, radius, policy.refine_factor);
        double lbest = kInf;
        std::size_t larg = local.size();
        std::vector<double> vals(local.size());
        std::vector<double> masses(local.size());
        for (std::size_t i = 0; i < local.size(); ++i) {
          auto [v, w] = direct_potential(local.point(i));
          vals[i] = v;
          masses[i] = w;
          if (v < lbest) {
            lbest = v;
            larg = i;
          }
        }
        if (larg < local.size()) {
          const double threshold = lbest + kTieRelative * masses[larg];
          for (std::size_t i = 0; i < larg; ++i)
            if (vals[i] <= threshold) {
              larg = i;
              break;
            }
          if (vals[larg] < c.value - kTieRelative * mass) {
            c.point = local.point_vec(larg);
            c.param = local.has_params() ? local.params[larg] : kNaN;
            c.grid_index = -1;
            c.value = vals[larg];
            mass = masses[larg];
          }
        }
        radius /= policy.refine_factor;
      }
      record(c, c.value);
      absorb(c);
    }
  });
  return trace;
}

/// Greedy best-packing (Leja-Bos) sequence: each a_n maximizes the minimum
/// distance to a_0..a_{n-1}; ties go to the smallest grid index.
inline GreedyTrace greedy_packing_sequence(const Domain& domain, std::size_t n_points,
                                           const std::optional<PointVec>& a0 = std::nullopt, GridPolicy policy = {}) {
  using namespace detail;
  const PointVec first = a0.value_or(domain.default_anchor());
  validate_request(domain, n_points, first);
  const double resolution = policy.resolution > 0.0 ? policy.resolution : auto_resolution(domain, n_points);
  const CandidateGrid grid = domain.build_grid(resolution, first);
  const int rounds = grid.cyclic_size != 0 ? 0 : std::max(0, policy.refine_rounds);
  const std::size_t dim = domain.ambient_dim();
  const std::size_t g = grid.size();

  GreedyTrace trace;
  trace.kind = TraceKind::packing;
  trace.first_index = 0;
  trace.domain = domain;
  trace.grid_meta = meta_for(grid, rounds, policy.refine_factor);

  std::vector<double> mind(g, kInf);
  std::vector<unsigned char> occupied(g, 0);
  double delta = kInf;

  auto absorb = [&](const PointVec& a, std::ptrdiff_t gi, double param, double dist_to_prev) {
    if (!trace.points.empty()) delta = std::min(delta, dist_to_prev);
    trace.points.push_back(a);
    trace.params.push_back(param);
    trace.grid_indices.push_back(gi);
    trace.min_dists.push_back(delta);
    if (gi >= 0) occupied[static_cast<std::size_t>(gi)] = 1;
    parallel_chunks(g, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i)
        mind[i] = std::min(mind[i], std::sqrt(squared_distance(grid.coords.data() + i * dim, a.data(), dim)));
    });
  };

  auto direct_min = [&](PointView y) {
    double m = kInf;
    for (const auto& q : trace.points) m = std::min(m, std::sqrt(squared_distance(y.data(), q.data(), dim)));
    return m;
  };

  const std::size_t i0 = locate(grid, first);
  absorb(grid.point_vec(i0), static_cast<std::ptrdiff_t>(i0), param_or_nan(domain, grid, i0), kInf);

  for (std::size_t n = 1; n < n_points; ++n) {
    double best = -1.0;
    std::size_t arg = g;
    for (std::size_t i = 0; i < g; ++i) {
      if (!occupied[i] && mind[i] > best) {
        best = mind[i];
        arg = i;
      }
    }
    if (arg == g || !(best > 0.0)) throw GridExhausted("candidate grid exhausted after " + std::to_string(n) + " points");
    const double threshold = best - kPackingTieRelative * best;
    for (std::size_t i = 0; i < arg; ++i)
      if (!occupied[i] && mind[i] >= threshold) {
        arg = i;
        break;
      }
    PointVec point = grid.point_vec(arg);
    double param = param_or_nan(domain, grid, arg);
    std::ptrdiff_t gi = static_cast<std::ptrdiff_t>(arg);
    double value = mind[arg];

    double radius = grid.resolution;
    for (int r = 0; r < rounds; ++r) {
      const CandidateGrid local = domain.refine_near(point, radius, policy.refine_factor);
      double lbest = -1.0;
      std::size_t larg = local.size();
      std::vector<double> vals(local.size());
      for (std::size_t i = 0; i < local.size(); ++i) {
        vals[i] = direct_min(local.point(i));
        if (vals[i] > lbest) {
          lbest = vals[i];
          larg = i;
        }
      }
      if (larg < local.size()) {
        const double thr = lbest - kPackingTieRelative * lbest;
        for (std::size_t i = 0; i < larg; ++i)
          if (vals[i] >= thr) {
            larg = i;
            break;
          }
        if (vals[larg] > value + kPackingTieRelative * value) {
          point = local.point_vec(larg);
          param = local.has_params() ? local.params[larg] : kNaN;
          gi = -1;
          value = vals[larg];
        }
      }
      radius /= policy.refine_factor;
    }
    absorb(point, gi, param, value);
  }
  return trace;
}

/// Explicit greedy best-packing sequence on [0, 1]: a_0 = 1, a_1 = 0,
/// a_2 = 1/2, then level by level a_{2^n + i} = (2i - 1) / 2^{n+1}.
/// Produces the first 2^levels + 1 points.
inline GreedyTrace counterexample_interval_sequence(int n_levels) {
  if (n_levels < 1) throw InvalidArgument("n_levels must be >= 1");
  GreedyTrace trace;
  trace.kind = TraceKind::packing;
  trace.first_index = 0;
  trace.domain = Domain::interval(0.0, 1.0);
  std::vector<double> xs{1.0, 0.0, 0.5};
  for (int n = 1; n < n_levels; ++n) {
    const double denom = std::ldexp(1.0, n + 1);
    for (std::size_t i = 1; i <= (std::size_t{1} << n); ++i) xs.push_back(static_cast<double>(2 * i - 1) / denom);
  }
  double delta = detail::kInf;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    double nearest = detail::kInf;
    for (std::size_t j = 0; j < k; ++j) nearest = std::min(nearest, std::abs(xs[k] - xs[j]));
    if (k > 0) delta = std::min(delta, nearest);
    trace.points.push_back({xs[k]});
    trace.params.push_back(xs[k]);
    trace.grid_indices.push_back(-1);
    trace.min_dists.push_back(delta);
  }
  return trace;
}

/// Explicit greedy best-packing sequence on [0, 1]^2: the four corners, then
/// for each level n >= 1 the centers of the 4^{n-1} squares of side 2^{1-n}
/// followed by the edge midpoints grouped by abscissa 0, 2^{-n}, ..., 1.
/// Within a group points are taken in increasing ordinate. Emits the
/// (2^{n_levels} + 1)^2 points completing level n_levels.
inline GreedyTrace counterexample_square_sequence(int n_levels) {
  if (n_levels < 1) throw InvalidArgument("n_levels must be >= 1");
  if (n_levels > 12) throw InvalidArgument("n_levels above 12 is too large");
  GreedyTrace trace;
  trace.kind = TraceKind::packing;
  trace.first_index = 1;
  trace.domain = Domain::unit_box(2);
  // Distance from each new point to its nearest predecessor is known from
  // the construction: side / sqrt(2) for centers, side / 2 for midpoints.
  std::vector<PointVec> pts{{1.0, 1.0}, {0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}};
  std::vector<double> nearest{detail::kInf, std::sqrt(2.0), 1.0, 1.0};
  for (int n = 1; n <= n_levels; ++n) {
    const std::size_t cells = std::size_t{1} << (n - 1);  // squares per side
    const std::size_t fine = std::size_t{1} << n;         // fine lattice intervals per side
    const double h = 1.0 / static_cast<double>(fine);
    const double side = 2.0 * h;
    for (std::size_t i = 0; i < cells; ++i)
      for (std::size_t j = 0; j < cells; ++j) {
        pts.push_back({static_cast<double>(2 * i + 1) * h, static_cast<double>(2 * j + 1) * h});
        nearest.push_back(side / std::sqrt(2.0));
      }
    for (std::size_t col = 0; col <= fine; ++col) {
      const double x = static_cast<double>(col) * h;
      const std::size_t count = col % 2 == 0 ? cells : cells + 1;
      for (std::size_t j = 0; j < count; ++j) {
        const double y = static_cast<double>(col % 2 == 0 ? 2 * j + 1 : 2 * j) * h;
        pts.push_back({x, y});
        nearest.push_back(h);
      }
    }
  }
  double delta = detail::kInf;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    delta = std::min(delta, nearest[k]);
    trace.points.push_back(pts[k]);
    trace.params.push_back(detail::kNaN);
    trace.grid_indices.push_back(-1);
    trace.min_dists.push_back(delta);
  }
  return trace;
}

/// Checks the greedy best-packing property of a trace against a grid: every
/// point's distance to its predecessors equals the grid maximum of that
/// quantity (to tol). Returns the first violating position, or nullopt.
inline std::optional<std::size_t> audit_packing_property(const std::vector<PointVec>& points, const CandidateGrid& grid,
                                                         double tol = 1e-12) {
  const std::size_t g = grid.size();
  const std::size_t dim = grid.dim;
  std::vector<double> mind(g, detail::kInf);
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (k > 0) {
      double best = 0.0;
      for (std::size_t i = 0; i < g; ++i) best = std::max(best, mind[i]);
      double own = detail::kInf;
      for (std::size_t j = 0; j < k; ++j)
        own = std::min(own, std::sqrt(detail::squared_distance(points[k].data(), points[j].data(), dim)));
      if (std::abs(own - best) > tol * std::max(1.0, best)) return k;
    }
    for (std::size_t i = 0; i < g; ++i)
      mind[i] = std::min(mind[i], std::sqrt(detail::squared_distance(grid.coords.data() + i * dim, points[k].data(), dim)));
  }
  return std::nullopt;
}

}  // namespace greedy_energy
