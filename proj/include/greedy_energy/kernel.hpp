#pragma once

// Riesz / logarithmic kernels and weighted Riesz kernels w(x,y) |x-y|^{-s}.

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "greedy_energy/detail/numeric.hpp"
#include "greedy_energy/domain.hpp"

namespace greedy_energy {

enum class KernelFamily { riesz, log, weighted_riesz };

/// Symmetric CPD weight. `evaluator` must be stateless (it is called
/// concurrently); `self_trace(x)` gives w(x, x) > 0.
struct WeightFn {
  std::function<double(PointView, PointView)> evaluator;
  std::function<double(PointView)> self_trace;
  std::string name = "custom";
  /// Upper bound on w over A x A when known (0 = unknown).
  double sup_bound = 0.0;
};

class KernelSpec {
 public:
  /// Riesz kernel |x-y|^{-s} for s > 0; s == 0 selects the log kernel.
  static KernelSpec riesz(double s) {
    if (s == 0.0) return log();
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("Riesz exponent must be >= 0");
    return KernelSpec(KernelFamily::riesz, s, nullptr);
  }

  static KernelSpec log() { return KernelSpec(KernelFamily::log, 0.0, nullptr); }

  static KernelSpec weighted(double s, std::shared_ptr<const WeightFn> w) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("weighted Riesz kernel requires s > 0");
    if (!w || !w->evaluator || !w->self_trace) throw InvalidArgument("weighted Riesz kernel requires a weight");
    return KernelSpec(KernelFamily::weighted_riesz, s, std::move(w));
  }

  [[nodiscard]] KernelFamily family() const noexcept { return family_; }
  [[nodiscard]] double s() const noexcept { return s_; }
  [[nodiscard]] const std::shared_ptr<const WeightFn>& weight() const noexcept { return weight_; }
  [[nodiscard]] bool weighted() const noexcept { return family_ == KernelFamily::weighted_riesz; }

  [[nodiscard]] std::string name() const {
    switch (family_) {
      case KernelFamily::riesz: return "riesz";
      case KernelFamily::log: return "log";
      case KernelFamily::weighted_riesz: return "weighted_riesz(" + weight_->name + ")";
    }
    return "";
  }

 private:
  KernelSpec(KernelFamily f, double s, std::shared_ptr<const WeightFn> w) : family_(f), s_(s), weight_(std::move(w)) {}

  KernelFamily family_;
  double s_;
  std::shared_ptr<const WeightFn> weight_;
};

/// K(t; s) = t^{-s} for s > 0 and -log t for s = 0.
inline double radial_profile(double t, double s) {
  if (!(t > 0.0)) throw InvalidArgument("radial_profile: t must be positive");
  if (s < 0.0) throw InvalidArgument("radial_profile: s must be >= 0");
  return s == 0.0 ? -std::log(t) : std::pow(t, -s);
}

namespace detail {

// Profiles of the squared distance; hot loops are instantiated per profile.
struct LogProfile {
  double operator()(double d2) const noexcept { return -0.5 * std::log(d2); }
};
struct InvSqrtProfile {
  double operator()(double d2) const noexcept { return 1.0 / std::sqrt(d2); }
};
struct InvSquareProfile {
  double operator()(double d2) const noexcept { return 1.0 / d2; }
};
struct PowProfile {
  double half_s;
  double operator()(double d2) const noexcept { return std::pow(d2, -half_s); }
};

/// Calls fn(profile) with the concrete profile functor for exponent s.
template <class Fn>
decltype(auto) with_profile(double s, Fn&& fn) {
  if (s == 0.0) return fn(LogProfile{});
  if (s == 1.0) return fn(InvSqrtProfile{});
  if (s == 2.0) return fn(InvSquareProfile{});
  return fn(PowProfile{0.5 * s});
}

/// Pair kernel k(x, y) over raw coordinate rows; +inf on the diagonal.
template <class Profile>
struct RadialKernel {
  Profile profile;
  std::size_t dim;
  double operator()(const double* x, const double* y) const noexcept {
    const double d2 = squared_distance(x, y, dim);
    return d2 > 0.0 ? profile(d2) : kInf;
  }
};

template <class Profile>
struct WeightedKernel {
  Profile profile;
  std::size_t dim;
  const WeightFn* weight;
  double operator()(const double* x, const double* y) const {
    const double d2 = squared_distance(x, y, dim);
    if (!(d2 > 0.0)) return kInf;
    return weight->evaluator(PointView{x, dim}, PointView{y, dim}) * profile(d2);
  }
};

/// Calls fn(kernel) with a concrete pair-kernel functor for spec.
template <class Fn>
decltype(auto) with_kernel(const KernelSpec& spec, std::size_t dim, Fn&& fn) {
  return with_profile(spec.s(), [&](auto profile) -> decltype(auto) {
    using P = decltype(profile);
    if (spec.weighted()) return fn(WeightedKernel<P>{profile, dim, spec.weight().get()});
    return fn(RadialKernel<P>{profile, dim});
  });
}

}  // namespace detail

/// k(x, y) for the given kernel; +inf when x == y (every family is singular there).
inline double pair_energy(PointView x, PointView y, const KernelSpec& spec) {
  if (x.size() != y.size()) throw InvalidArgument("pair_energy: dimension mismatch");
  return detail::with_kernel(spec, x.size(), [&](const auto& k) { return k(x.data(), y.data()); });
}

/// w(x, y) = |x - y| / |phi(x) - phi(y)| on the arc-length parameters of a
/// curve; equals 1 at coincident parameters (|phi'| = 1).
inline double arc_chord_weight(const Domain& curve, double x_param, double y_param) {
  if (curve.kind() != DomainKind::curve && curve.kind() != DomainKind::circle && curve.kind() != DomainKind::interval)
    throw InvalidArgument("arc_chord_weight needs a 1-parameter domain");
  const double len = *curve.param_length();
  const double tol = 1e-12 * len;
  if (x_param < -tol || x_param > len + tol || y_param < -tol || y_param > len + tol)
    throw InvalidArgument("arc_chord_weight: parameter outside [0, L]");
  if (x_param == y_param) return 1.0;
  const PointVec a = curve.point_at(x_param);
  const PointVec b = curve.point_at(y_param);
  const double chord = std::sqrt(detail::squared_distance(a.data(), b.data(), a.size()));
  if (!(chord > 0.0)) return detail::kInf;
  return std::abs(x_param - y_param) / chord;
}

/// Arc-chord weight as a CPD weight on the parameter interval [0, L]: the
/// weighted greedy on [0, L] with this weight and s = 1 reproduces the greedy
/// k_1 sequence on the curve.
inline std::shared_ptr<const WeightFn> make_arc_chord_weight(const Domain& curve) {
  auto w = std::make_shared<WeightFn>();
  w->name = "arc_chord";
  w->evaluator = [curve](PointView x, PointView y) { return arc_chord_weight(curve, x[0], y[0]); };
  w->self_trace = [](PointView) { return 1.0; };
  return w;
}

inline std::shared_ptr<const WeightFn> make_constant_weight(double c) {
  if (!(c > 0.0)) throw InvalidArgument("constant weight must be positive");
  auto w = std::make_shared<WeightFn>();
  w->name = "constant";
  w->evaluator = [c](PointView, PointView) { return c; };
  w->self_trace = [c](PointView) { return c; };
  w->sup_bound = c;
  return w;
}

}  // namespace greedy_energy
