#pragma once

// Continuum constants and report builders tabulating measured statistics of
// greedy traces against them.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "greedy_energy/detail/numeric.hpp"
#include "greedy_energy/domain.hpp"
#include "greedy_energy/greedy.hpp"
#include "greedy_energy/kernel.hpp"
#include "greedy_energy/special.hpp"

namespace greedy_energy {

/// I_s(sigma_d), the s-energy of normalized surface measure on S^d (0 <= s < d).
inline double sphere_constant(int d, double s) {
  if (d < 1) throw InvalidArgument("sphere_constant: d must be >= 1");
  if (!(s >= 0.0) || !(s < d)) throw InvalidArgument("sphere_constant: need 0 <= s < d");
  const double dd = d;
  if (s == 0.0) return -std::log(2.0) + 0.5 * (digamma(dd).value - digamma(0.5 * dd).value);
  // lgamma keeps large d finite; all arguments are positive here
  const double lg = std::lgamma(0.5 * (dd + 1.0)) + std::lgamma(dd - s) - std::lgamma(0.5 * (dd - s + 1.0)) -
                    std::lgamma(dd - 0.5 * s);
  return std::exp(lg);
}

/// Equilibrium s-energy of [-1, 1]: log 2 for s = 0, otherwise
/// sqrt(pi) Gamma(1 + s/2) / (cos(pi s / 2) Gamma((1 + s)/2)).
inline double interval_constant(double s) {
  if (!(s >= 0.0)) throw InvalidArgument("interval_constant: s must be >= 0");
  if (s > 1.0 - 1e-9) throw InvalidArgument("interval_constant: s must be < 1 (pole at s = 1)");
  if (s == 0.0) return std::log(2.0);
  return std::sqrt(detail::kPi) * gamma_fn(1.0 + 0.5 * s).value /
         (std::cos(0.5 * detail::kPi * s) * gamma_fn(0.5 * (1.0 + s)).value);
}

/// f(s) = (1/2)(4/3)^{1+s} + (1/3)^{1+s}.
inline double f_factor(double s) {
  if (!(s > 0.0)) throw InvalidArgument("f_factor: s must be positive");
  // one division by 3^{1+s} keeps integer s exact to the last bit
  return (0.5 * std::pow(4.0, 1.0 + s) + 1.0) / std::pow(3.0, 1.0 + s);
}

/// Next-order constant of E_s(S^1, N): 2 zeta(s) / (2 pi)^s for s != 1 and
/// (1/pi)(gamma - log(pi/2)) for s = 1.
inline double circle_second_order_constant(double s) {
  if (!(s > 0.0)) throw InvalidArgument("circle_second_order_constant: s must be positive");
  if (s == 1.0) return (euler_gamma().value - std::log(detail::kPi / 2.0)) / detail::kPi;
  return 2.0 * zeta(s).value / std::pow(detail::kTwoPi, s);
}

/// Next-order constant of the greedy s = 1 energy along N = 3 * 2^n.
inline double greedy_s1_second_order_constant() {
  const double extra = (16.0 / 9.0) * std::log(2.0) - std::log(3.0);
  return (euler_gamma().value - std::log(detail::kPi / 2.0) + extra) / detail::kPi;
}

enum class StatisticKind { first_order, second_order, gap_sum, packing_ndelta, growth_ratio, density_stat };

inline std::string to_string(StatisticKind k) {
  switch (k) {
    case StatisticKind::first_order: return "first_order";
    case StatisticKind::second_order: return "second_order";
    case StatisticKind::gap_sum: return "gap_sum";
    case StatisticKind::packing_ndelta: return "packing_ndelta";
    case StatisticKind::growth_ratio: return "growth_ratio";
    case StatisticKind::density_stat: return "density_stat";
  }
  return "";
}

struct ReportRow {
  std::size_t n = 0;
  double statistic = 0.0;
  double reference = detail::kNaN;  // NaN when no constant applies
  double ratio = detail::kNaN;      // statistic / reference when reference is finite and nonzero
  std::string subsequence = "all";  // "2^n", "3*2^n" or "all"
};

struct ReportMeta {
  std::string domain;
  double s = detail::kNaN;
  std::string kernel;
  std::string scaling;  // human-readable normalization of the statistic
};

struct AsymptoticReport {
  StatisticKind kind = StatisticKind::first_order;
  std::vector<ReportRow> rows;
  ReportMeta meta;
  /// Named scalars in a fixed order (packing bounds, liminf/limsup estimates).
  std::vector<std::pair<std::string, double>> summary;

  [[nodiscard]] const ReportRow* row_at(std::size_t n) const {
    for (const auto& r : rows)
      if (r.n == n) return &r;
    return nullptr;
  }
  [[nodiscard]] std::optional<double> summary_value(const std::string& key) const {
    for (const auto& [k, v] : summary)
      if (k == key) return v;
    return std::nullopt;
  }
};

/// Leading-order normalization of E(alpha_N): E / N^beta, or E / (N^2 log N).
struct Scaling {
  bool log_term = false;
  double beta = 2.0;
  double constant = detail::kNaN;
  std::string label;

  [[nodiscard]] double normalize(double energy, std::size_t n) const {
    const double nd = static_cast<double>(n);
    if (log_term) return energy / (nd * nd * std::log(nd));
    return energy / std::pow(nd, beta);
  }
};

namespace detail {

inline ReportRow make_row(std::size_t n, double statistic, double reference, std::string sub = "all") {
  ReportRow r;
  r.n = n;
  r.statistic = statistic;
  r.reference = reference;
  if (std::isfinite(reference) && reference != 0.0) r.ratio = statistic / reference;
  r.subsequence = std::move(sub);
  return r;
}

inline ReportMeta meta_of(const GreedyTrace& trace, std::string scaling) {
  ReportMeta m;
  m.domain = trace.domain.name();
  if (trace.spec) {
    m.s = trace.spec->s();
    m.kernel = trace.spec->name();
  } else {
    m.kernel = "packing";
  }
  m.scaling = std::move(scaling);
  return m;
}

inline Scaling power_scaling(double beta, double constant) {
  Scaling sc;
  sc.beta = beta;
  sc.constant = constant;
  char buf[64];
  std::snprintf(buf, sizeof buf, "E/N^%.6g", beta);
  sc.label = buf;
  return sc;
}

inline Scaling log_scaling(double constant) {
  Scaling sc;
  sc.log_term = true;
  sc.constant = constant;
  sc.label = "E/(N^2 log N)";
  return sc;
}

/// H_d^{s,w}(A) = integral of w(x, x)^{-d/s} over A. The arc-chord weight has
/// w(x, x) = 1, so the integral is the parameter length.
inline double weighted_hausdorff(const Domain& domain, const WeightFn& w, double s) {
  const double d = static_cast<double>(domain.intrinsic_dim());
  if (w.name == "arc_chord") return domain.measure();
  return domain.integrate([&](PointView x) { return std::pow(w.self_trace(x), -d / s); });
}

/// Scalar length of an interval [a, b] (1-D box included).
inline std::optional<double> segment_length(const Domain& domain) {
  if (domain.kind() == DomainKind::interval || (domain.kind() == DomainKind::box && domain.ambient_dim() == 1))
    return domain.upper()[0] - domain.lower()[0];
  return std::nullopt;
}

inline double zeta_over_length(double s, double len) {
  return 2.0 * zeta(s).value / std::pow(len, s);
}

}  // namespace detail

/// Reference selection by (domain kind, s vs dimension, weighted). Regimes
/// without a known constant get a NaN constant but still the right scaling.
inline Scaling first_order_scaling(const Domain& domain, const KernelSpec& spec) {
  using detail::kNaN;
  const double s = spec.s();
  const double d = static_cast<double>(domain.intrinsic_dim());

  if (spec.weighted()) {
    const double h = detail::weighted_hausdorff(domain, *spec.weight(), s);
    if (s == d) return detail::log_scaling(vol_ball(static_cast<int>(d)).value / h);
    if (s > d && d == 1.0) return detail::power_scaling(1.0 + s, 2.0 * zeta(s).value / std::pow(h, s));
    if (s > d) return detail::power_scaling(1.0 + s / d, kNaN);
    return detail::power_scaling(2.0, kNaN);
  }

  switch (domain.kind()) {
    case DomainKind::circle:
      if (s < 1.0) return detail::power_scaling(2.0, sphere_constant(1, s));
      if (s == 1.0) return detail::log_scaling(1.0 / detail::kPi);
      return detail::power_scaling(1.0 + s, detail::zeta_over_length(s, detail::kTwoPi));
    case DomainKind::sphere: {
      const int di = static_cast<int>(domain.intrinsic_dim());
      if (s < d) return detail::power_scaling(2.0, sphere_constant(di, s));
      if (s == d) return detail::log_scaling(vol_ball(di).value / sphere_area(di));
      return detail::power_scaling(1.0 + s / d, kNaN);
    }
    case DomainKind::interval:
    case DomainKind::box: {
      const auto len = detail::segment_length(domain);
      if (len) {
        // affine image of [-1, 1] scaled by len / 2
        if (s == 0.0) return detail::power_scaling(2.0, interval_constant(0.0) - std::log(*len / 2.0));
        if (s < 1.0) return detail::power_scaling(2.0, interval_constant(s) * std::pow(2.0 / *len, s));
        if (s == 1.0) return detail::log_scaling(2.0 / *len);
        return detail::power_scaling(1.0 + s, detail::zeta_over_length(s, *len));
      }
      if (s == d) return detail::log_scaling(vol_ball(static_cast<int>(d)).value / domain.measure());
      if (s > d) return detail::power_scaling(1.0 + s / d, kNaN);
      return detail::power_scaling(2.0, kNaN);
    }
    case DomainKind::curve: {
      const double len = domain.measure();
      if (s < 1.0) return detail::power_scaling(2.0, kNaN);
      if (s == 1.0) return detail::log_scaling(2.0 / len);
      return detail::power_scaling(1.0 + s, detail::zeta_over_length(s, len));
    }
  }
  return detail::power_scaling(2.0, kNaN);
}

/// Rows E(alpha_N) under the leading-order scaling for N = 2 .. trace size.
inline AsymptoticReport first_order_report(const GreedyTrace& trace) {
  if (trace.kind != TraceKind::energy || !trace.spec || trace.size() == 0)
    throw InvalidArgument("first_order_report needs a nonempty energy trace");
  const Scaling sc = first_order_scaling(trace.domain, *trace.spec);
  AsymptoticReport rep;
  rep.kind = StatisticKind::first_order;
  rep.meta = detail::meta_of(trace, sc.label);
  for (std::size_t n = 2; n <= trace.size(); ++n)
    rep.rows.push_back(detail::make_row(n, sc.normalize(trace.energy_at(n), n), sc.constant));
  return rep;
}

namespace detail {

/// N = 2^k and N = 3 * 2^k up to n_max, ascending, with their labels.
inline std::vector<std::pair<std::size_t, std::string>> dyadic_subsequences(std::size_t n_max, std::size_t n_min = 2) {
  std::vector<std::pair<std::size_t, std::string>> out;
  for (std::size_t p = 1; p <= n_max; p *= 2) {
    if (p >= n_min) out.emplace_back(p, "2^n");
    if (3 * p <= n_max && 3 * p >= n_min) out.emplace_back(3 * p, "3*2^n");
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Gap statistic of a circle trace computed in integer grid units when every
/// point is a dyadic grid point: sum_k |N g_k - M| * 2 pi / (N M).
inline std::optional<double> cyclic_gap_sum(const GreedyTrace& trace, std::size_t n) {
  const std::size_t m = trace.grid_meta.grid_size;
  if (trace.domain.kind() != DomainKind::circle || m == 0 || !std::has_single_bit(m)) return std::nullopt;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (trace.grid_indices[i] < 0) return std::nullopt;
    idx.push_back(static_cast<std::size_t>(trace.grid_indices[i]));
  }
  std::sort(idx.begin(), idx.end());
  unsigned long long total = 0;
  auto add_gap = [&](std::size_t g) {
    const long long diff = static_cast<long long>(n * g) - static_cast<long long>(m);
    total += static_cast<unsigned long long>(diff < 0 ? -diff : diff);
  };
  for (std::size_t i = 1; i < n; ++i) add_gap(idx[i] - idx[i - 1]);
  add_gap(m - (idx.back() - idx.front()));
  return static_cast<double>(total) * (kTwoPi / (static_cast<double>(n) * static_cast<double>(m)));
}

}  // namespace detail

/// Second-order rows on the circle along N = 2^n and N = 3 * 2^n.
inline AsymptoticReport second_order_report(const GreedyTrace& trace) {
  if (trace.domain.kind() != DomainKind::circle) throw InvalidArgument("second_order_report needs a circle trace");
  if (trace.kind != TraceKind::energy || !trace.spec || trace.spec->weighted())
    throw InvalidArgument("second_order_report needs an unweighted energy trace");
  const double s = trace.spec->s();
  if (!(s > 0.0) || s > 1.0) throw InvalidArgument("second_order_report needs 0 < s <= 1");

  AsymptoticReport rep;
  rep.kind = StatisticKind::second_order;
  rep.meta = detail::meta_of(trace, s == 1.0 ? "(E - N^2 log N / pi)/N^2" : "(E - I_s N^2)/N^(1+s)");
  const double c2 = circle_second_order_constant(s);
  const double c3 = s == 1.0 ? greedy_s1_second_order_constant() : f_factor(s) * c2;
  const double lead = s == 1.0 ? 0.0 : sphere_constant(1, s);

  for (const auto& [n, label] : detail::dyadic_subsequences(trace.size())) {
    const double nd = static_cast<double>(n);
    const double e = trace.energy_at(n);
    const double stat = s == 1.0 ? (e - nd * nd * std::log(nd) / detail::kPi) / (nd * nd)
                                 : (e - lead * nd * nd) / std::pow(nd, 1.0 + s);
    rep.rows.push_back(detail::make_row(n, stat, label == "2^n" ? c2 : c3, label));
  }
  return rep;
}

/// Gap statistic sum_k |d_k - L / #gaps| of each prefix. Defaults to the
/// dyadic subsequences plus the full trace.
inline AsymptoticReport gap_sum_report(const GreedyTrace& trace, std::vector<std::size_t> ns = {}) {
  const DomainKind k = trace.domain.kind();
  if (k != DomainKind::circle && k != DomainKind::interval && k != DomainKind::curve)
    throw InvalidArgument("gap_sum_report needs a circle, interval or curve trace");
  if (trace.size() < 2) throw InvalidArgument("gap_sum_report needs at least 2 points");
  if (ns.empty()) {
    for (const auto& entry : detail::dyadic_subsequences(trace.size())) ns.push_back(entry.first);
    ns.push_back(trace.size());
  }
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  AsymptoticReport rep;
  rep.kind = StatisticKind::gap_sum;
  rep.meta = detail::meta_of(trace, "sum |d_k - L/#gaps|");
  for (std::size_t n : ns) {
    if (n < 2 || n > trace.size()) throw InvalidArgument("gap_sum_report: N outside the trace");
    std::string label = "all";
    if (std::has_single_bit(n)) label = "2^n";
    else if (n % 3 == 0 && std::has_single_bit(n / 3)) label = "3*2^n";
    if (const auto exact = detail::cyclic_gap_sum(trace, n)) {
      rep.rows.push_back(detail::make_row(n, *exact, 0.0, label));
      continue;
    }
    std::vector<double> ts(trace.params.begin(), trace.params.begin() + static_cast<std::ptrdiff_t>(n));
    const GapVector g = trace.domain.gaps_from_params(std::move(ts));
    const double mean = g.total / static_cast<double>(g.gaps.size());
    detail::CompensatedSum sum;
    for (double d : g.gaps) sum.add(std::abs(d - mean));
    rep.rows.push_back(detail::make_row(n, sum.value(), 0.0, label));
  }
  return rep;
}

/// Packing rows n * delta(X_n) against L, where X_n = {x_0, ..., x_n}.
/// Summary: running liminf/limsup over the last complete dyadic level
/// (2^{k-1}, 2^k] and the two upper bounds for liminf n delta.
inline AsymptoticReport packing_report(const GreedyTrace& trace) {
  if (trace.kind != TraceKind::packing) throw InvalidArgument("packing_report needs a packing trace");
  const DomainKind k = trace.domain.kind();
  if (k != DomainKind::circle && k != DomainKind::interval && k != DomainKind::curve)
    throw InvalidArgument("packing_report needs a circle, interval or curve trace");
  if (trace.size() < 2) throw InvalidArgument("packing_report needs at least 2 points");
  const double len = trace.domain.measure();

  AsymptoticReport rep;
  rep.kind = StatisticKind::packing_ndelta;
  rep.meta = detail::meta_of(trace, "n*delta(X_n)");
  // index n counts from the first point: X_n has n + 1 points
  for (std::size_t m = 2; m <= trace.size(); ++m) {
    const std::size_t n = m - 1;
    rep.rows.push_back(detail::make_row(n, static_cast<double>(n) * trace.delta_at(m), len));
  }

  const std::size_t n_max = trace.size() - 1;
  const std::size_t top = std::bit_floor(n_max);
  const std::size_t lo = top / 2;
  double liminf = detail::kInf;
  double limsup = -detail::kInf;
  for (const auto& r : rep.rows)
    if (r.n > lo && r.n <= top) {
      liminf = std::min(liminf, r.statistic);
      limsup = std::max(limsup, r.statistic);
    }
  rep.summary.emplace_back("window_lo", static_cast<double>(lo + 1));
  rep.summary.emplace_back("window_hi", static_cast<double>(top));
  rep.summary.emplace_back("liminf_estimate", liminf);
  rep.summary.emplace_back("limsup_estimate", limsup);
  rep.summary.emplace_back("length", len);
  const double r2 = std::sqrt(2.0);
  rep.summary.emplace_back("liminf_bound", (4.0 + 3.0 * r2) / (4.0 + 4.0 * r2) * len);
  rep.summary.emplace_back("liminf_threshold", (2.0 + r2) / 4.0 * len);
  // the sharper bound applies when limsup c exceeds the threshold
  double sharper = detail::kNaN;
  const double c = std::min(limsup, len);
  if (c > (2.0 + r2) / 4.0 * len) sharper = 0.5 * len + std::sqrt(c * (len - c));
  rep.summary.emplace_back("liminf_bound_given_limsup", sharper);
  return rep;
}

/// Without a subinterval: E / N^{1+s/d} (E / (N^2 log N) at s = d) to show
/// two-sided boundedness. With [c, d] inside an interval domain:
/// (#{n <= N : a_n in [c, d]})^{1+1/s} / N.
inline AsymptoticReport growth_and_density_report(const GreedyTrace& trace,
                                                  std::optional<std::pair<double, double>> subinterval = std::nullopt) {
  if (trace.kind != TraceKind::energy || !trace.spec) throw InvalidArgument("growth_and_density_report needs an energy trace");
  const DomainKind k = trace.domain.kind();
  if (k != DomainKind::interval && k != DomainKind::curve && k != DomainKind::box && k != DomainKind::circle)
    throw InvalidArgument("growth_and_density_report needs an interval, curve or box trace");
  const double s = trace.spec->s();
  AsymptoticReport rep;

  if (!subinterval) {
    const double d = static_cast<double>(trace.domain.intrinsic_dim());
    Scaling sc = s > d ? detail::power_scaling(1.0 + s / d, detail::kNaN)
                       : (s == d ? detail::log_scaling(detail::kNaN) : detail::power_scaling(2.0, detail::kNaN));
    const Scaling ref = first_order_scaling(trace.domain, *trace.spec);
    if (ref.log_term == sc.log_term && ref.beta == sc.beta) sc.constant = ref.constant;
    rep.kind = StatisticKind::growth_ratio;
    rep.meta = detail::meta_of(trace, sc.label);
    for (std::size_t n = 2; n <= trace.size(); ++n)
      rep.rows.push_back(detail::make_row(n, sc.normalize(trace.energy_at(n), n), sc.constant));
    return rep;
  }

  if (k != DomainKind::interval) throw InvalidArgument("density statistic needs an interval trace");
  const auto [c, dd] = *subinterval;
  const double a = trace.domain.lower()[0];
  const double b = trace.domain.upper()[0];
  if (!(c < dd) || c < a || dd > b) throw InvalidArgument("subinterval must satisfy a <= c < d <= b");
  if (!(s > 0.0)) throw InvalidArgument("density statistic needs s > 0");
  rep.kind = StatisticKind::density_stat;
  char buf[96];
  std::snprintf(buf, sizeof buf, "count([%.6g,%.6g])^(1+1/s)/N", c, dd);
  rep.meta = detail::meta_of(trace, buf);
  std::size_t count = 0;
  for (std::size_t n = 1; n <= trace.size(); ++n) {
    const double x = trace.points[n - 1][0];
    if (x >= c && x <= dd) ++count;
    rep.rows.push_back(
        detail::make_row(n, std::pow(static_cast<double>(count), 1.0 + 1.0 / s) / static_cast<double>(n), detail::kNaN));
  }
  return rep;
}

}  // namespace greedy_energy
