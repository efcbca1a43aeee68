#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>
#include <vector>

namespace greedy_energy::detail {

/// Neumaier-compensated running sum. Also tracks sum of magnitudes, which
/// is what rounding-tolerance decisions are scaled against.
class CompensatedSum {
 public:
  void add(double term) noexcept {
    const double t = hi_ + term;
    if (std::abs(hi_) >= std::abs(term)) {
      lo_ += (hi_ - t) + term;
    } else {
      lo_ += (term - t) + hi_;
    }
    hi_ = t;
    mass_ += std::abs(term);
  }

  [[nodiscard]] double value() const noexcept { return hi_ + lo_; }
  [[nodiscard]] double mass() const noexcept { return mass_; }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
  double mass_ = 0.0;
};

/// Branch-free error-free transformation: hi + lo == a + b exactly.
inline void two_sum(double a, double b, double& hi, double& lo) noexcept {
  hi = a + b;
  const double bb = hi - a;
  lo = (a - (hi - bb)) + (b - bb);
}

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kEps = std::numeric_limits<double>::epsilon();
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Number of worker threads, capped by GREEDY_ENERGY_THREADS when set.
inline unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GREEDY_ENERGY_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

/// Runs fn(begin, end) over contiguous chunks of [0, n). Chunk boundaries
/// depend only on n and the thread count, and every index is written by
/// exactly one chunk, so results do not depend on scheduling.
template <class Fn>
void parallel_chunks(std::size_t n, Fn&& fn, std::size_t min_parallel = std::size_t{1} << 15) {
  const unsigned threads = thread_cap();
  if (threads <= 1 || n < min_parallel) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) {
    const std::size_t b = std::min(n, t * chunk);
    const std::size_t e = std::min(n, b + chunk);
    if (b < e) pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  fn(std::size_t{0}, std::min(n, chunk));
}

/// Adaptive Simpson quadrature on [a, b] to absolute tolerance tol.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 50) {
  struct Rec {
    static double run(F& f, double a, double b, double fa, double fm, double fb, double whole,
                      double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m);
      const double rm = 0.5 * (m + b);
      const double flm = f(lm);
      const double frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      return run(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Rec::run(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

inline double squared_distance(const double* x, const double* y, std::size_t dim) noexcept {
  double acc = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    const double d = x[k] - y[k];
    acc += d * d;
  }
  return acc;
}

}  // namespace greedy_energy::detail
