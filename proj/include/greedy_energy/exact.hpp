#pragma once

// Closed-form references on the unit circle: the minimal N-point energy of
// equally spaced points, the dyadic structure of greedy configurations, and
// the energy identity for the 3 * 2^n greedy configurations.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "greedy_energy/detail/numeric.hpp"
#include "greedy_energy/domain.hpp"
#include "greedy_energy/greedy.hpp"
#include "greedy_energy/kernel.hpp"

namespace greedy_energy {

struct CircleEnergyValue {
  std::size_t n = 0;
  double s = 0.0;
  double value = 0.0;
};

/// E_s(S^1, N) = 2^{-s} N sum_{k=1}^{N-1} sin(pi k / N)^{-s} for s > 0 and
/// -N log N for s = 0.
inline CircleEnergyValue circle_min_energy(std::size_t n, double s) {
  if (n < 2) throw InvalidArgument("circle_min_energy needs N >= 2");
  if (s < 0.0) throw InvalidArgument("circle_min_energy needs s >= 0");
  const double nd = static_cast<double>(n);
  if (s == 0.0) return {n, s, -nd * std::log(nd)};
  // sin(pi k / N)^{-s}, with the angles pi/4 and pi/6 taken from their exact sines
  auto term = [&](std::size_t k) {
    if (4 * k == n) return std::pow(2.0, 0.5 * s);
    if (6 * k == n) return std::pow(2.0, s);
    return std::pow(std::sin(detail::kPi * static_cast<double>(k) / nd), -s);
  };
  detail::CompensatedSum sum;
  // symmetric pairs k, N - k contribute equal terms
  for (std::size_t k = 1; 2 * k < n; ++k) sum.add(2.0 * term(k));
  if (n % 2 == 0) sum.add(1.0);
  return {n, s, std::pow(2.0, -s) * nd * sum.value()};
}

/// Predicted greedy index set on the anchored dyadic grid of size M:
/// N = 2^m gives the 2^m equally spaced indices; N = 3 * 2^m gives
/// S_{2^{m+2}} minus the coset of S_{2^m} through index 3 M / 2^{m+2}
/// (the coset left out under smallest-parameter tie-breaking).
inline std::vector<std::size_t> predict_greedy_circle(std::size_t n, std::size_t grid_size) {
  if (n < 2) throw InvalidArgument("predict_greedy_circle needs N >= 2");
  if (!std::has_single_bit(grid_size)) throw InvalidArgument("grid size must be a power of two");
  std::vector<std::size_t> out;
  if (std::has_single_bit(n)) {
    if (n > grid_size) throw InvalidArgument("grid too small for prediction");
    const std::size_t step = grid_size / n;
    for (std::size_t k = 0; k < n; ++k) out.push_back(k * step);
    return out;
  }
  if (n % 3 == 0 && std::has_single_bit(n / 3)) {
    const std::size_t fine = 4 * (n / 3);  // 2^{m+2}
    if (fine > grid_size) throw InvalidArgument("grid too small for prediction");
    const std::size_t q = grid_size / fine;
    for (std::size_t k = 0; k < fine; ++k)
      if (k % 4 != 3) out.push_back(k * q);
    return out;
  }
  throw InvalidArgument("predict_greedy_circle supports N = 2^m and N = 3 * 2^m only");
}

/// True when `indices` (a subset of Z_M) equals S_{4K} minus one coset of
/// S_K with 3K = indices.size(), the structure of greedy 3 * 2^m sets.
inline bool is_dyadic_complement_structure(std::vector<std::size_t> indices, std::size_t grid_size) {
  const std::size_t n = indices.size();
  if (n % 3 != 0 || !std::has_single_bit(n / 3)) return false;
  const std::size_t k = n / 3;
  const std::size_t fine = 4 * k;
  if (fine > grid_size || grid_size % fine != 0) return false;
  std::sort(indices.begin(), indices.end());
  const std::size_t q = grid_size / fine;
  const std::size_t base = indices.front() % q;
  std::vector<int> hits(4, 0);
  for (std::size_t idx : indices) {
    if (idx % q != base) return false;
    hits[((idx - base) / q) % 4]++;
  }
  int full = 0;
  int empty = 0;
  for (int h : hits) {
    if (h == static_cast<int>(k)) ++full;
    if (h == 0) ++empty;
  }
  return full == 3 && empty == 1;
}

/// True when the indices are N equally spaced slots of Z_M.
inline bool is_equally_spaced(std::vector<std::size_t> indices, std::size_t grid_size) {
  const std::size_t n = indices.size();
  if (n == 0 || grid_size % n != 0) return false;
  std::sort(indices.begin(), indices.end());
  const std::size_t step = grid_size / n;
  for (std::size_t k = 0; k < n; ++k)
    if (indices[k] != indices[0] + k * step) return false;
  return true;
}

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// E_s(alpha_{3 * 2^n}) from a circle greedy trace versus
/// (1/2) E_s(S^1, 2^{n+2}) + E_s(S^1, 2^n).
inline IdentityCheck lemma5_identity(const GreedyTrace& trace, int n) {
  if (n < 1) throw InvalidArgument("lemma5_identity needs n >= 1");
  if (trace.domain.kind() != DomainKind::circle || !trace.spec || trace.kind != TraceKind::energy)
    throw InvalidArgument("lemma5_identity needs a circle energy trace");
  const std::size_t m = std::size_t{1} << n;
  if (trace.size() < 3 * m) throw InvalidArgument("trace shorter than 3 * 2^n");
  const double s = trace.spec->s();
  return {trace.energy_at(3 * m), 0.5 * circle_min_energy(4 * m, s).value + circle_min_energy(m, s).value};
}

/// Runs the greedy engine on the circle and evaluates the identity.
inline IdentityCheck lemma5_identity(int n, double s) {
  const std::size_t m = std::size_t{1} << n;
  const auto trace = greedy_energy_sequence(Domain::circle(), KernelSpec::riesz(s), 3 * m);
  return lemma5_identity(trace, n);
}

/// Dyadic grid indices chosen by a circle trace (coarse grid points only).
inline std::vector<std::size_t> chosen_indices(const GreedyTrace& trace, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n && i < trace.size(); ++i) {
    if (trace.grid_indices[i] < 0) throw InvalidArgument("trace contains off-grid points");
    out.push_back(static_cast<std::size_t>(trace.grid_indices[i]));
  }
  return out;
}

}  // namespace greedy_energy
