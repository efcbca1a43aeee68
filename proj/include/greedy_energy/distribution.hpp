#pragma once

// Empirical distribution of configurations against equilibrium laws:
// Kolmogorov-Smirnov distance for one-parameter laws and binned histograms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "greedy_energy/detail/numeric.hpp"
#include "greedy_energy/domain.hpp"
#include "greedy_energy/kernel.hpp"
#include "greedy_energy/special.hpp"

namespace greedy_energy {

namespace detail {

/// Normalized integral of (1 - t^2)^{(e-1)/2} over [-1, x], e > -1. With
/// t = sin u the integrand becomes cos^e u, bounded on [-pi/2, pi/2].
inline double beta_sin_cdf(double e, double x) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double u = std::asin(x);
  if (e == 0.0) return 0.5 + u / kPi;
  // c_e = 1 / B(1/2, (e+1)/2)
  const double c = std::exp(std::lgamma(1.0 + 0.5 * e) - std::lgamma(0.5 * (e + 1.0))) / std::sqrt(kPi);
  auto f = [e](double v) { return std::pow(std::cos(v), e); };
  const double half = adaptive_simpson(f, 0.0, std::abs(u), 1e-13);
  const double signed_half = u < 0.0 ? -half : half;
  return std::clamp(0.5 + c * signed_half, 0.0, 1.0);
}

}  // namespace detail

/// Equilibrium density c_s (1 - t^2)^{(s-1)/2} of [-1, 1] integrated over [-1, x].
inline double interval_equilibrium_cdf(double s, double x) {
  if (!(s >= 0.0) || !(s < 1.0)) throw InvalidArgument("interval_equilibrium_cdf: s must lie in [0, 1)");
  if (!(x >= -1.0) || !(x <= 1.0)) throw InvalidArgument("interval_equilibrium_cdf: x must lie in [-1, 1]");
  return detail::beta_sin_cdf(s, x);
}

/// Equilibrium density itself, for 0 <= s < 1 and |x| < 1.
inline double interval_equilibrium_density(double s, double x) {
  if (!(s >= 0.0) || !(s < 1.0)) throw InvalidArgument("interval_equilibrium_density: s must lie in [0, 1)");
  if (!(std::abs(x) < 1.0)) throw InvalidArgument("interval_equilibrium_density: |x| must be < 1");
  const double c = gamma_fn(1.0 + 0.5 * s).value / (std::sqrt(detail::kPi) * gamma_fn(0.5 * (s + 1.0)).value);
  return c * std::pow(1.0 - x * x, 0.5 * (s - 1.0));
}

enum class LawKind { sphere_uniform, interval_arcsine_type, curve_uniform, weighted_hausdorff };

/// Limit law of (near-)minimal configurations. One-parameter laws (circle,
/// interval, curve) expose a CDF in the domain parameter.
class EquilibriumLaw {
 public:
  /// Normalized surface measure on S^d; d = 1 is the uniform law on the circle.
  static EquilibriumLaw sphere_uniform(int d) {
    EquilibriumLaw law(LawKind::sphere_uniform, Domain::sphere(d));
    law.d_ = d;
    return law;
  }

  /// Arcsine-type law on [a, b] (affine image of the [-1, 1] law).
  static EquilibriumLaw interval_arcsine_type(double s, double a = -1.0, double b = 1.0) {
    if (!(s >= 0.0) || !(s < 1.0)) throw InvalidArgument("interval law needs 0 <= s < 1");
    EquilibriumLaw law(LawKind::interval_arcsine_type, Domain::interval(a, b));
    law.s_ = s;
    return law;
  }

  /// Normalized arc length on a circle, interval or curve.
  static EquilibriumLaw curve_uniform(const Domain& domain) {
    if (!domain.has_scalar_param()) throw InvalidArgument("curve_uniform needs a one-parameter domain");
    return EquilibriumLaw(LawKind::curve_uniform, domain);
  }

  /// H_1^{s,w} normalized, on a one-parameter domain: density w(x,x)^{-1/s}.
  static EquilibriumLaw weighted_hausdorff(const Domain& domain, std::shared_ptr<const WeightFn> w, double s) {
    if (!domain.has_scalar_param()) throw InvalidArgument("weighted_hausdorff law needs a one-parameter domain");
    if (!w || !(s > 0.0)) throw InvalidArgument("weighted_hausdorff law needs a weight and s > 0");
    EquilibriumLaw law(LawKind::weighted_hausdorff, domain);
    law.s_ = s;
    law.weight_ = std::move(w);
    law.d_ = 1;
    return law;
  }

  [[nodiscard]] LawKind kind() const noexcept { return kind_; }
  [[nodiscard]] const Domain& domain() const noexcept { return domain_; }
  [[nodiscard]] double s() const noexcept { return s_; }
  [[nodiscard]] int d() const noexcept { return d_; }

  [[nodiscard]] bool one_dimensional() const noexcept { return domain_.has_scalar_param(); }

  /// Parameter range of one-dimensional laws.
  [[nodiscard]] std::pair<double, double> param_range() const {
    if (!one_dimensional()) throw InvalidArgument("law has no scalar parameter");
    if (domain_.kind() == DomainKind::interval) return {domain_.lower()[0], domain_.upper()[0]};
    return {0.0, *domain_.param_length()};
  }

  [[nodiscard]] double param_of(PointView x) const { return domain_.param_of(x); }

  /// CDF in the domain parameter.
  [[nodiscard]] double cdf(double t) const {
    const auto [lo, hi] = param_range();
    if (t <= lo) return 0.0;
    if (t >= hi) return 1.0;
    switch (kind_) {
      case LawKind::interval_arcsine_type: return detail::beta_sin_cdf(s_, (2.0 * t - lo - hi) / (hi - lo));
      case LawKind::sphere_uniform:
      case LawKind::curve_uniform: return (t - lo) / (hi - lo);
      case LawKind::weighted_hausdorff: {
        const double total = weighted_mass(lo, hi);
        return std::clamp(weighted_mass(lo, t) / total, 0.0, 1.0);
      }
    }
    return detail::kNaN;
  }

  /// Law mass of the band lo <= x_last <= hi on S^d (d >= 2); the height
  /// marginal of sigma_d has density proportional to (1 - z^2)^{(d-2)/2}.
  [[nodiscard]] double band_mass(double z_lo, double z_hi) const {
    if (kind_ != LawKind::sphere_uniform || d_ < 2) throw InvalidArgument("band_mass needs sphere_uniform with d >= 2");
    const double e = static_cast<double>(d_ - 1);
    return detail::beta_sin_cdf(e, z_hi) - detail::beta_sin_cdf(e, z_lo);
  }

 private:
  EquilibriumLaw(LawKind k, Domain dom) : kind_(k), domain_(std::move(dom)) {}

  [[nodiscard]] double weighted_mass(double a, double b) const {
    auto f = [this](double t) {
      const PointVec p = domain_.point_at(t);
      return std::pow(weight_->self_trace(PointView{p}), -1.0 / s_);
    };
    return detail::adaptive_simpson(f, a, b, 1e-12);
  }

  LawKind kind_;
  Domain domain_;
  double s_ = 0.0;
  int d_ = 1;
  std::shared_ptr<const WeightFn> weight_;
};

/// sup_t |F_N(t) - F(t)| over the sorted sample, two-sided step convention:
/// max_i max(i/N - F(t_i), F(t_i) - (i-1)/N).
inline double ks_distance(const std::vector<PointVec>& config, const EquilibriumLaw& law) {
  if (!law.one_dimensional()) throw InvalidArgument("ks_distance needs a one-parameter law");
  if (config.empty()) throw InvalidArgument("ks_distance needs a nonempty configuration");
  std::vector<double> u;
  u.reserve(config.size());
  for (const auto& x : config) u.push_back(law.cdf(law.param_of(x)));
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double above = static_cast<double>(i + 1) / n - u[i];
    const double below = u[i] - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return std::clamp(d, 0.0, 1.0);
}

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  double empirical = 0.0;
  double reference = 0.0;
};

/// Equal-width bins in the domain parameter (one-parameter laws) or in the
/// height coordinate x_{d+1} (spheres, d >= 2), with empirical and law mass.
inline std::vector<HistogramBin> histogram_report(const std::vector<PointVec>& config, const EquilibriumLaw& law, int bins) {
  if (bins < 2) throw InvalidArgument("histogram_report needs at least 2 bins");
  if (config.empty()) throw InvalidArgument("histogram_report needs a nonempty configuration");
  const bool bands = !law.one_dimensional();
  double lo = -1.0;
  double hi = 1.0;
  if (!bands) std::tie(lo, hi) = law.param_range();
  const double width = (hi - lo) / bins;

  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    auto& bin = out[static_cast<std::size_t>(b)];
    bin.lo = lo + b * width;
    bin.hi = b + 1 == bins ? hi : lo + (b + 1) * width;
    bin.reference = bands ? law.band_mass(bin.lo, bin.hi) : law.cdf(bin.hi) - law.cdf(bin.lo);
  }
  const std::size_t height = law.domain().ambient_dim() - 1;
  for (const auto& x : config) {
    if (bands && !law.domain().contains(x)) throw InvalidArgument("histogram_report: point is off the sphere");
    const double t = bands ? x[height] : law.param_of(x);
    const auto b = static_cast<std::size_t>(std::clamp(std::floor((t - lo) / width), 0.0, static_cast<double>(bins - 1)));
    out[b].empirical += 1.0;
  }
  for (auto& bin : out) bin.empirical /= static_cast<double>(config.size());
  return out;
}

}  // namespace greedy_energy
