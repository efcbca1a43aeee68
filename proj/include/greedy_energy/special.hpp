#pragma once

// Special functions used by the continuum constants: Gamma, digamma, Riemann
// zeta (with the analytic continuation on (0, 1)), the Euler-Mascheroni
// constant and the volume of the unit ball.

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "greedy_energy/detail/numeric.hpp"

namespace greedy_energy {

struct SpecialValue {
  double value = 0.0;
  double abs_error_bound = 0.0;

  operator double() const noexcept { return value; }  // NOLINT(google-explicit-constructor)
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {
inline SpecialValue with_bound(double v) {
  return {v, 16.0 * kEps * std::abs(v)};
}
}  // namespace detail

inline SpecialValue gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive, got " + std::to_string(x));
  return detail::with_bound(std::tgamma(x));
}

inline SpecialValue digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: argument must be positive, got " + std::to_string(x));
  return detail::with_bound(boost::math::digamma(x));
}

/// Riemann zeta for s > 0, s != 1. Values on (0, 1) are the analytic
/// continuation (negative there). A guard band |s - 1| < 1e-6 is rejected.
inline SpecialValue zeta(double s) {
  if (!(s > 0.0)) throw DomainError("zeta: s must be positive, got " + std::to_string(s));
  if (std::abs(s - 1.0) < 1e-6) throw DomainError("zeta: s too close to the pole at 1");
  return detail::with_bound(boost::math::zeta(s));
}

inline SpecialValue euler_gamma() {
  return detail::with_bound(boost::math::constants::euler<double>());
}

/// Volume of the unit ball in R^d: pi^{d/2} / Gamma(d/2 + 1).
inline SpecialValue vol_ball(int d) {
  if (d < 1) throw DomainError("vol_ball: dimension must be >= 1");
  const double v = std::pow(detail::kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  return detail::with_bound(v);
}

/// Surface measure of the unit sphere S^d in R^{d+1}.
inline double sphere_area(int d) {
  if (d < 1) throw DomainError("sphere_area: dimension must be >= 1");
  return 2.0 * std::pow(detail::kPi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
}

}  // namespace greedy_energy
