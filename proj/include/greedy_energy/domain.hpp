#pragma once

// Compact candidate sets A in R^p: circle, spheres, intervals, boxes and
// polyline curves. Each domain can emit a candidate grid, a local refinement
// grid, order points along itself (1-parameter domains), and exposes a chart
// (parameters -> point) used by the local optimizer.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "greedy_energy/detail/numeric.hpp"
#include "greedy_energy/special.hpp"

namespace greedy_energy {

using PointVec = std::vector<double>;
using PointView = std::span<const double>;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class DomainKind { circle, sphere, interval, box, curve };

/// Candidate points stored row-major. `params` is filled for domains with a
/// scalar parameter (circle angle, interval abscissa, curve arc length).
/// Grid order is the tie-break order: increasing parameter, otherwise
/// lexicographic coordinates.
struct CandidateGrid {
  std::size_t dim = 0;
  std::vector<double> coords;
  std::vector<double> params;
  double resolution = 0.0;
  std::optional<PointVec> anchored_at;
  /// Non-zero for the anchored dyadic circle grid: point k is anchor * e^{2 pi i k / M}.
  std::size_t cyclic_size = 0;

  [[nodiscard]] std::size_t size() const noexcept { return dim == 0 ? 0 : coords.size() / dim; }
  [[nodiscard]] PointView point(std::size_t i) const noexcept { return {coords.data() + i * dim, dim}; }
  [[nodiscard]] PointVec point_vec(std::size_t i) const {
    auto p = point(i);
    return {p.begin(), p.end()};
  }
  [[nodiscard]] bool has_params() const noexcept { return !params.empty(); }
};

/// Consecutive arc-length gaps d_k between points taken in curve order.
struct GapVector {
  std::vector<double> gaps;
  double total = 0.0;
};

/// One coordinate of a domain chart.
struct ChartAxis {
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;
};

namespace detail {

/// (cos, sin) of 2 pi k / m computed in the first octant and mapped by
/// symmetry, so the dyadic roots of unity are exactly symmetric in double.
inline std::pair<double, double> unit_root(std::size_t k, std::size_t m) {
  k %= m;
  if (k == 0) return {1.0, 0.0};
  if (m == 2) return {-1.0, 0.0};
  if (m % 4 != 0) {
    const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(m);
    return {std::cos(a), std::sin(a)};
  }
  const std::size_t quarter = m / 4;
  const std::size_t q = k / quarter;
  const std::size_t r = k % quarter;
  double c = 0.0;
  double s = 0.0;
  if (2 * r <= quarter) {
    const double a = kTwoPi * static_cast<double>(r) / static_cast<double>(m);
    c = std::cos(a);
    s = std::sin(a);
  } else {
    const double a = kTwoPi * static_cast<double>(quarter - r) / static_cast<double>(m);
    c = std::sin(a);
    s = std::cos(a);
  }
  switch (q) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

/// Chord |e^{2 pi i d / m} - 1| = 2 sin(pi d / m), symmetric in d <-> m - d.
/// ceil(len / res), tolerant of a ratio that is an integer up to rounding.
inline double ceil_ratio(double len, double res) {
  return std::ceil(len / res * (1.0 - 1e-12));
}

inline double dyadic_chord(std::size_t d, std::size_t m) {
  d %= m;
  const std::size_t e = std::min(d, m - d);
  return 2.0 * std::sin(kPi * static_cast<double>(e) / static_cast<double>(m));
}

inline double norm(PointView x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc);
}

/// Values c + j * step for j in [-f, f] restricted to [lo, hi]; the bound is
/// added once when the stencil crosses it.
inline std::vector<double> clamped_stencil(double c, double step, int f, double lo, double hi) {
  std::vector<double> out;
  bool below = false;
  bool above = false;
  for (int j = -f; j <= f; ++j) {
    const double v = c + j * step;
    if (v < lo) {
      below = true;
    } else if (v > hi) {
      above = true;
    } else {
      out.push_back(v);
    }
  }
  if (below && (out.empty() || out.front() != lo)) out.insert(out.begin(), lo);
  if (above && (out.empty() || out.back() != hi)) out.push_back(hi);
  return out;
}

template <class F>
double integrate_1d(F&& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 8, 1e-11);
}

}  // namespace detail

class Domain {
 public:
  static Domain circle() {
    Domain d(DomainKind::circle);
    d.ambient_ = 2;
    d.intrinsic_ = 1;
    return d;
  }

  /// Unit sphere S^d in R^{d+1}. sphere(1) behaves as the circle.
  static Domain sphere(int dim) {
    if (dim < 1) throw InvalidArgument("sphere dimension must be >= 1");
    if (dim == 1) return circle();
    Domain d(DomainKind::sphere);
    d.ambient_ = static_cast<std::size_t>(dim) + 1;
    d.intrinsic_ = static_cast<std::size_t>(dim);
    return d;
  }

  static Domain interval(double a, double b) {
    if (!(b > a)) throw InvalidArgument("interval requires a < b");
    Domain d(DomainKind::interval);
    d.ambient_ = 1;
    d.intrinsic_ = 1;
    d.lo_ = {a};
    d.hi_ = {b};
    return d;
  }

  static Domain box(std::vector<double> lo, std::vector<double> hi) {
    if (lo.empty() || lo.size() != hi.size()) throw InvalidArgument("box bounds must have equal positive length");
    for (std::size_t k = 0; k < lo.size(); ++k)
      if (!(hi[k] > lo[k])) throw InvalidArgument("box requires lo < hi on every axis");
    Domain d(DomainKind::box);
    d.ambient_ = lo.size();
    d.intrinsic_ = lo.size();
    d.lo_ = std::move(lo);
    d.hi_ = std::move(hi);
    return d;
  }

  static Domain unit_box(int p) {
    if (p < 1) throw InvalidArgument("box dimension must be >= 1");
    return box(std::vector<double>(static_cast<std::size_t>(p), 0.0), std::vector<double>(static_cast<std::size_t>(p), 1.0));
  }

  /// Polyline through `samples`, reparametrized by cumulative chord length.
  /// A closed curve gets the segment from the last sample back to the first.
  static Domain curve(const std::vector<PointVec>& samples, bool closed) {
    if (samples.size() < 2) throw InvalidArgument("curve needs at least two samples");
    const std::size_t p = samples.front().size();
    if (p == 0) throw InvalidArgument("curve samples must be non-empty coordinate rows");
    auto data = std::make_shared<CurveData>();
    data->closed = closed;
    for (const auto& s : samples) {
      if (s.size() != p) throw InvalidArgument("curve samples have inconsistent dimension");
      data->pts.insert(data->pts.end(), s.begin(), s.end());
    }
    if (closed) data->pts.insert(data->pts.end(), samples.front().begin(), samples.front().end());
    const std::size_t nv = data->pts.size() / p;
    data->cum.assign(nv, 0.0);
    for (std::size_t i = 1; i < nv; ++i) {
      const double len = std::sqrt(detail::squared_distance(&data->pts[(i - 1) * p], &data->pts[i * p], p));
      if (!(len > 0.0)) throw InvalidArgument("curve has repeated consecutive samples");
      data->cum[i] = data->cum[i - 1] + len;
    }
    Domain d(DomainKind::curve);
    d.ambient_ = p;
    d.intrinsic_ = 1;
    d.curve_ = std::move(data);
    return d;
  }

  /// Convenience: samples phi(t) at n + 1 equally spaced t in [t0, t1].
  static Domain curve_from(const std::function<PointVec(double)>& phi, double t0, double t1, std::size_t n,
                           bool closed) {
    std::vector<PointVec> samples;
    const std::size_t count = closed ? n : n + 1;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) samples.push_back(phi(t0 + (t1 - t0) * static_cast<double>(i) / n));
    return curve(samples, closed);
  }

  [[nodiscard]] DomainKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t ambient_dim() const noexcept { return ambient_; }
  /// Hausdorff dimension of the set (1 for circle/interval/curve).
  [[nodiscard]] std::size_t intrinsic_dim() const noexcept { return intrinsic_; }
  [[nodiscard]] bool closed() const noexcept {
    return kind_ == DomainKind::circle || (kind_ == DomainKind::curve && curve_->closed);
  }
  [[nodiscard]] bool has_scalar_param() const noexcept {
    return kind_ == DomainKind::circle || kind_ == DomainKind::interval || kind_ == DomainKind::curve;
  }
  [[nodiscard]] const std::vector<double>& lower() const noexcept { return lo_; }
  [[nodiscard]] const std::vector<double>& upper() const noexcept { return hi_; }

  /// Total arc length for 1-parameter domains.
  [[nodiscard]] std::optional<double> param_length() const {
    switch (kind_) {
      case DomainKind::circle: return detail::kTwoPi;
      case DomainKind::interval: return hi_[0] - lo_[0];
      case DomainKind::curve: return curve_->cum.back();
      default: return std::nullopt;
    }
  }

  /// H_d(A) with d = intrinsic_dim().
  [[nodiscard]] double measure() const {
    switch (kind_) {
      case DomainKind::sphere: return sphere_area(static_cast<int>(intrinsic_));
      case DomainKind::box: {
        double v = 1.0;
        for (std::size_t k = 0; k < lo_.size(); ++k) v *= hi_[k] - lo_[k];
        return v;
      }
      default: return *param_length();
    }
  }

  [[nodiscard]] std::string name() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
      case DomainKind::circle: os << "circle"; break;
      case DomainKind::sphere: os << "sphere" << intrinsic_; break;
      case DomainKind::interval: os << "interval[" << lo_[0] << "," << hi_[0] << "]"; break;
      case DomainKind::box: os << "box" << ambient_; break;
      case DomainKind::curve: os << (curve_->closed ? "closed_curve" : "arc") << "(L=" << curve_->cum.back() << ")"; break;
    }
    return os.str();
  }

  /// Canonical first point: circle (1,0), sphere north pole, interval left
  /// endpoint, box lower corner, curve phi(0).
  [[nodiscard]] PointVec default_anchor() const {
    switch (kind_) {
      case DomainKind::circle: return {1.0, 0.0};
      case DomainKind::sphere: {
        PointVec p(ambient_, 0.0);
        p.back() = 1.0;
        return p;
      }
      case DomainKind::interval:
      case DomainKind::box: return lo_;
      case DomainKind::curve: return point_at(0.0);
    }
    return {};
  }

  [[nodiscard]] bool contains(PointView x, double tol = 1e-9) const {
    if (x.size() != ambient_) return false;
    switch (kind_) {
      case DomainKind::circle:
      case DomainKind::sphere: return std::abs(detail::norm(x) - 1.0) <= tol;
      case DomainKind::interval:
      case DomainKind::box:
        for (std::size_t k = 0; k < ambient_; ++k)
          if (x[k] < lo_[k] - tol || x[k] > hi_[k] + tol) return false;
        return true;
      case DomainKind::curve: return project(x).second <= tol;
    }
    return false;
  }

  /// Point at scalar parameter t (angle, abscissa, or arc length).
  [[nodiscard]] PointVec point_at(double t) const {
    switch (kind_) {
      case DomainKind::circle: return {std::cos(t), std::sin(t)};
      case DomainKind::interval: return {t};
      case DomainKind::curve: {
        const auto& c = *curve_;
        const double len = c.cum.back();
        if (t < -1e-12 * len || t > len * (1 + 1e-12)) throw InvalidArgument("curve parameter outside [0, L]");
        t = std::clamp(t, 0.0, len);
        const std::size_t nv = c.cum.size();
        auto it = std::upper_bound(c.cum.begin(), c.cum.end(), t);
        std::size_t seg = it == c.cum.begin() ? 0 : static_cast<std::size_t>(it - c.cum.begin()) - 1;
        if (seg >= nv - 1) seg = nv - 2;
        const double u = (t - c.cum[seg]) / (c.cum[seg + 1] - c.cum[seg]);
        PointVec p(ambient_);
        for (std::size_t k = 0; k < ambient_; ++k)
          p[k] = c.pts[seg * ambient_ + k] + u * (c.pts[(seg + 1) * ambient_ + k] - c.pts[seg * ambient_ + k]);
        return p;
      }
      default: throw InvalidArgument("point_at: domain has no scalar parameter");
    }
  }

  /// Scalar parameter of a point on a 1-parameter domain (circle angle in [0, 2 pi)).
  [[nodiscard]] double param_of(PointView x, double tol = 1e-9) const {
    if (x.size() != ambient_) throw InvalidArgument("param_of: dimension mismatch");
    switch (kind_) {
      case DomainKind::circle: {
        if (std::abs(detail::norm(x) - 1.0) > tol) throw InvalidArgument("param_of: point is off the circle");
        double a = std::atan2(x[1], x[0]);
        if (a < 0.0) a += detail::kTwoPi;
        if (a >= detail::kTwoPi) a -= detail::kTwoPi;
        return a;
      }
      case DomainKind::interval:
        if (x[0] < lo_[0] - tol || x[0] > hi_[0] + tol) throw InvalidArgument("param_of: point is off the interval");
        return x[0];
      case DomainKind::curve: {
        auto [t, dist] = project(x);
        if (dist > tol) throw InvalidArgument("param_of: point is off the curve");
        return t;
      }
      default: throw InvalidArgument("param_of: domain has no scalar parameter");
    }
  }

  /// Candidate grid with spacing <= target_resolution. The circle grid is the
  /// dyadic set {anchor * e^{2 pi i k / 2^K}} with 2^K >= 2 pi / resolution.
  [[nodiscard]] CandidateGrid build_grid(double target_resolution, const std::optional<PointVec>& anchor = std::nullopt) const {
    if (!(target_resolution > 0.0)) throw InvalidArgument("grid resolution must be positive");
    if (anchor && !contains(*anchor)) throw InvalidArgument("grid anchor is not on the domain");
    constexpr double kMaxCandidates = 2147483648.0;  // 2^31
    CandidateGrid g;
    g.dim = ambient_;
    g.anchored_at = anchor;
    switch (kind_) {
      case DomainKind::circle: {
        const double need = detail::ceil_ratio(detail::kTwoPi, target_resolution);
        if (need > kMaxCandidates) throw InvalidArgument("grid resolution too small");
        const std::size_t m = std::bit_ceil(static_cast<std::size_t>(std::max(1.0, need)));
        const PointVec a = anchor.value_or(default_anchor());
        const double theta0 = param_of(a);
        g.cyclic_size = m;
        g.resolution = detail::kTwoPi / static_cast<double>(m);
        g.coords.resize(2 * m);
        g.params.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
          const auto [c, s] = detail::unit_root(k, m);
          g.coords[2 * k] = a[0] * c - a[1] * s;
          g.coords[2 * k + 1] = a[0] * s + a[1] * c;
          g.params[k] = theta0 + detail::kTwoPi * static_cast<double>(k) / static_cast<double>(m);
        }
        g.anchored_at = a;
        return g;
      }
      case DomainKind::interval:
      case DomainKind::curve: {
        const double a = kind_ == DomainKind::interval ? lo_[0] : 0.0;
        const double b = kind_ == DomainKind::interval ? hi_[0] : curve_->cum.back();
        const double cells = detail::ceil_ratio(b - a, target_resolution);
        if (cells > kMaxCandidates) throw InvalidArgument("grid resolution too small");
        const auto n = static_cast<std::size_t>(std::max(1.0, cells));
        std::vector<double> ts;
        const std::size_t count = closed() ? n : n + 1;
        ts.reserve(count + 1);
        for (std::size_t i = 0; i < count; ++i) ts.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n));
        if (anchor) {
          const double ta = param_of(*anchor);
          auto it = std::lower_bound(ts.begin(), ts.end(), ta);
          if (it == ts.end() || *it != ta) ts.insert(it, ta);
        }
        g.resolution = (b - a) / static_cast<double>(n);
        fill_from_params(g, ts);
        return g;
      }
      case DomainKind::sphere: return sphere_grid(target_resolution, anchor, g);
      case DomainKind::box: {
        std::vector<std::vector<double>> axes(ambient_);
        double total = 1.0;
        double res = 0.0;
        for (std::size_t k = 0; k < ambient_; ++k) {
          const double cells = detail::ceil_ratio(hi_[k] - lo_[k], target_resolution);
          const auto n = static_cast<std::size_t>(std::max(1.0, cells));
          total *= static_cast<double>(n + 1);
          for (std::size_t i = 0; i <= n; ++i)
            axes[k].push_back(lo_[k] + (hi_[k] - lo_[k]) * static_cast<double>(i) / static_cast<double>(n));
          res = std::max(res, (hi_[k] - lo_[k]) / static_cast<double>(n));
        }
        if (total > kMaxCandidates) throw InvalidArgument("grid resolution too small");
        std::vector<double> coords = tensor(axes);
        if (anchor) coords = insert_sorted(std::move(coords), *anchor);
        g.coords = std::move(coords);
        g.resolution = res;
        return g;
      }
    }
    return g;
  }

  /// Local grid of spacing radius / factor covering the geodesic ball of the
  /// given radius around `center`; points outside the domain are dropped and
  /// the domain boundary is added where the stencil crosses it.
  [[nodiscard]] CandidateGrid refine_near(PointView center, double radius, int factor) const {
    if (factor < 2) throw InvalidArgument("refine factor must be >= 2");
    if (!(radius > 0.0)) throw InvalidArgument("refine radius must be positive");
    if (!contains(center)) throw InvalidArgument("refine center is not on the domain");
    CandidateGrid g;
    g.dim = ambient_;
    g.resolution = radius / factor;
    const double step = radius / factor;
    switch (kind_) {
      case DomainKind::circle: {
        const double c = param_of(center);
        std::vector<double> ts;
        for (int j = -factor; j <= factor; ++j) ts.push_back(c + j * step);
        fill_from_params(g, ts);
        return g;
      }
      case DomainKind::interval:
        fill_from_params(g, detail::clamped_stencil(center[0], step, factor, lo_[0], hi_[0]));
        return g;
      case DomainKind::curve: {
        const double c = param_of(center);
        const double len = curve_->cum.back();
        if (closed()) {
          std::vector<double> ts;
          for (int j = -factor; j <= factor; ++j) {
            double t = c + j * step;
            t = std::fmod(t, len);
            if (t < 0.0) t += len;
            ts.push_back(t);
          }
          std::sort(ts.begin(), ts.end());
          ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
          fill_from_params(g, ts);
        } else {
          fill_from_params(g, detail::clamped_stencil(c, step, factor, 0.0, len));
        }
        return g;
      }
      case DomainKind::box: {
        std::vector<std::vector<double>> axes(ambient_);
        for (std::size_t k = 0; k < ambient_; ++k) axes[k] = detail::clamped_stencil(center[k], step, factor, lo_[k], hi_[k]);
        g.coords = tensor(axes);
        return g;
      }
      case DomainKind::sphere: {
        const auto basis = tangent_basis(center);
        const std::size_t d = intrinsic_;
        const std::size_t side = 2 * static_cast<std::size_t>(factor) + 1;
        std::size_t total = 1;
        for (std::size_t k = 0; k < d; ++k) total *= side;
        std::vector<double> coords;
        coords.reserve(total * ambient_);
        std::vector<int> idx(d, -factor);
        PointVec p(ambient_);
        for (std::size_t n = 0; n < total; ++n) {
          for (std::size_t c = 0; c < ambient_; ++c) p[c] = center[c];
          for (std::size_t k = 0; k < d; ++k)
            for (std::size_t c = 0; c < ambient_; ++c) p[c] += idx[k] * step * basis[k][c];
          const double r = detail::norm(p);
          for (double& v : p) v /= r;
          coords.insert(coords.end(), p.begin(), p.end());
          for (std::size_t k = 0; k < d; ++k) {
            if (++idx[k] <= factor) break;
            idx[k] = -factor;
          }
        }
        g.coords = sort_rows(std::move(coords));
        return g;
      }
    }
    return g;
  }

  /// Sorts a configuration along the domain and returns consecutive
  /// arc-length gaps (including the wrap-around gap on closed curves).
  [[nodiscard]] GapVector order_and_gaps(const std::vector<PointVec>& config) const {
    if (!has_scalar_param()) throw InvalidArgument("order_and_gaps needs a circle, interval or curve");
    std::vector<double> ts;
    ts.reserve(config.size());
    for (const auto& x : config) ts.push_back(param_of(x));
    return gaps_from_params(std::move(ts));
  }

  [[nodiscard]] GapVector gaps_from_params(std::vector<double> ts) const {
    const double len = *param_length();
    if (kind_ == DomainKind::circle) {
      for (double& t : ts) {
        t = std::fmod(t, len);
        if (t < 0.0) t += len;
      }
    }
    std::sort(ts.begin(), ts.end());
    GapVector out;
    for (std::size_t i = 1; i < ts.size(); ++i) {
      const double gap = ts[i] - ts[i - 1];
      if (!(gap > 1e-15 * len)) throw InvalidArgument("order_and_gaps: duplicate points");
      out.gaps.push_back(gap);
    }
    if (closed() && !ts.empty()) {
      const double wrap = len - (ts.back() - ts.front());
      if (ts.size() > 1 && !(wrap > 1e-15 * len)) throw InvalidArgument("order_and_gaps: duplicate points");
      out.gaps.push_back(wrap);
    }
    detail::CompensatedSum total;
    for (double g : out.gaps) total.add(g);
    out.total = total.value();
    return out;
  }

  // Chart used by coordinate-wise local search.

  [[nodiscard]] std::vector<ChartAxis> chart_axes() const {
    switch (kind_) {
      case DomainKind::circle: return {{0.0, detail::kTwoPi, true}};
      case DomainKind::interval: return {{lo_[0], hi_[0], false}};
      case DomainKind::curve: return {{0.0, curve_->cum.back(), closed()}};
      case DomainKind::box: {
        std::vector<ChartAxis> axes;
        for (std::size_t k = 0; k < ambient_; ++k) axes.push_back({lo_[k], hi_[k], false});
        return axes;
      }
      case DomainKind::sphere: {
        std::vector<ChartAxis> axes(intrinsic_ - 1, ChartAxis{0.0, detail::kPi, false});
        axes.push_back({0.0, detail::kTwoPi, true});
        return axes;
      }
    }
    return {};
  }

  [[nodiscard]] PointVec chart_point(std::span<const double> q) const {
    switch (kind_) {
      case DomainKind::circle:
      case DomainKind::interval:
      case DomainKind::curve: return point_at(q[0]);
      case DomainKind::box: return {q.begin(), q.end()};
      case DomainKind::sphere: {
        // hyperspherical angles phi_1..phi_d
        PointVec p(ambient_);
        double sprod = 1.0;
        for (std::size_t k = 0; k < intrinsic_; ++k) {
          p[k] = sprod * std::cos(q[k]);
          sprod *= std::sin(q[k]);
        }
        p[intrinsic_] = sprod;
        return p;
      }
    }
    return {};
  }

  /// Density of H_d in chart coordinates.
  [[nodiscard]] double chart_jacobian(std::span<const double> q) const {
    if (kind_ != DomainKind::sphere) return 1.0;
    double j = 1.0;
    for (std::size_t k = 0; k + 1 < intrinsic_; ++k) j *= std::pow(std::sin(q[k]), static_cast<double>(intrinsic_ - 1 - k));
    return j;
  }

  /// Integral of f over the domain against H_d (adaptive Gauss-Kronrod per chart axis).
  [[nodiscard]] double integrate(const std::function<double(PointView)>& f) const {
    const auto axes = chart_axes();
    std::vector<double> q(axes.size());
    std::function<double(std::size_t)> rec = [&](std::size_t level) -> double {
      if (level == axes.size()) {
        const PointVec p = chart_point(q);
        return f(p) * chart_jacobian(q);
      }
      return detail::integrate_1d(
          [&](double t) {
            q[level] = t;
            return rec(level + 1);
          },
          axes[level].lo, axes[level].hi);
    };
    return rec(0);
  }

 private:
  struct CurveData {
    bool closed = false;
    std::vector<double> pts;  // vertices, row-major; closed curves repeat the first vertex
    std::vector<double> cum;  // cumulative chord length at each vertex
  };

  explicit Domain(DomainKind k) : kind_(k) {}

  void fill_from_params(CandidateGrid& g, const std::vector<double>& ts) const {
    g.params = ts;
    g.coords.clear();
    g.coords.reserve(ts.size() * ambient_);
    for (double t : ts) {
      const PointVec p = point_at(t);
      g.coords.insert(g.coords.end(), p.begin(), p.end());
    }
  }

  /// (arc-length parameter, distance) of the closest polyline point.
  [[nodiscard]] std::pair<double, double> project(PointView x) const {
    const auto& c = *curve_;
    const std::size_t p = ambient_;
    const std::size_t nv = c.cum.size();
    double best_d2 = detail::kInf;
    double best_t = 0.0;
    for (std::size_t i = 0; i + 1 < nv; ++i) {
      const double* a = &c.pts[i * p];
      const double* b = &c.pts[(i + 1) * p];
      double ab2 = 0.0;
      double ax_ab = 0.0;
      for (std::size_t k = 0; k < p; ++k) {
        ab2 += (b[k] - a[k]) * (b[k] - a[k]);
        ax_ab += (x[k] - a[k]) * (b[k] - a[k]);
      }
      const double u = std::clamp(ax_ab / ab2, 0.0, 1.0);
      double d2 = 0.0;
      for (std::size_t k = 0; k < p; ++k) {
        const double v = a[k] + u * (b[k] - a[k]) - x[k];
        d2 += v * v;
      }
      if (d2 < best_d2) {
        best_d2 = d2;
        best_t = c.cum[i] + u * (c.cum[i + 1] - c.cum[i]);
      }
    }
    if (c.closed && best_t >= c.cum.back()) best_t = 0.0;
    return {best_t, std::sqrt(best_d2)};
  }

  [[nodiscard]] std::vector<double> tensor(const std::vector<std::vector<double>>& axes) const {
    std::size_t total = 1;
    for (const auto& a : axes) total *= a.size();
    std::vector<double> coords;
    coords.reserve(total * axes.size());
    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
      for (std::size_t k = 0; k < axes.size(); ++k) coords.push_back(axes[k][idx[k]]);
      for (std::size_t k = axes.size(); k-- > 0;) {
        if (++idx[k] < axes[k].size()) break;
        idx[k] = 0;
      }
    }
    return coords;
  }

  [[nodiscard]] std::vector<double> sort_rows(std::vector<double> coords) const {
    const std::size_t p = ambient_;
    const std::size_t n = coords.size() / p;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return std::lexicographical_compare(coords.begin() + i * p, coords.begin() + (i + 1) * p, coords.begin() + j * p,
                                          coords.begin() + (j + 1) * p);
    });
    std::vector<double> out;
    out.reserve(coords.size());
    for (std::size_t i : order) {
      if (!out.empty() && std::equal(out.end() - p, out.end(), coords.begin() + i * p)) continue;
      out.insert(out.end(), coords.begin() + i * p, coords.begin() + (i + 1) * p);
    }
    return out;
  }

  [[nodiscard]] std::vector<double> insert_sorted(std::vector<double> coords, const PointVec& extra) const {
    coords.insert(coords.end(), extra.begin(), extra.end());
    return sort_rows(std::move(coords));
  }

  [[nodiscard]] std::vector<PointVec> tangent_basis(PointView center) const {
    std::vector<PointVec> basis;
    for (std::size_t e = 0; e < ambient_ && basis.size() < intrinsic_; ++e) {
      PointVec v(ambient_, 0.0);
      v[e] = 1.0;
      auto orth = [&](const PointVec& u, PointView w) {
        double dot = 0.0;
        for (std::size_t k = 0; k < ambient_; ++k) dot += u[k] * w[k];
        for (std::size_t k = 0; k < ambient_; ++k) v[k] -= dot * w[k];
      };
      orth(v, center);
      for (const auto& b : basis) orth(v, b);
      const double r = detail::norm(v);
      if (r < 1e-6) continue;
      for (double& x : v) x /= r;
      basis.push_back(v);
    }
    return basis;
  }

  CandidateGrid& sphere_grid(double h, const std::optional<PointVec>& anchor, CandidateGrid& g) const {
    std::vector<double> coords;
    if (intrinsic_ == 2) {
      // Fibonacci spiral net; 1.5 * 4 pi / h^2 points keeps nearest-neighbour spacing below h.
      const double count = std::ceil(1.5 * 4.0 * detail::kPi / (h * h));
      if (count > 2147483648.0) throw InvalidArgument("grid resolution too small");
      const auto n = static_cast<std::size_t>(std::max(8.0, count));
      const double golden = detail::kPi * (3.0 - std::sqrt(5.0));
      coords.reserve(3 * (n + 2));
      for (std::size_t i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * static_cast<double>(i);
        coords.push_back(r * std::cos(phi));
        coords.push_back(r * std::sin(phi));
        coords.push_back(z);
      }
    } else {
      // radial projection of the cube surface lattice (1-Lipschitz outside the ball)
      const auto m = static_cast<std::size_t>(std::max(2.0, std::ceil(2.0 / h)));
      const std::size_t side = m + 1;
      std::size_t total = 1;
      for (std::size_t k = 0; k < ambient_; ++k) total *= side;
      if (static_cast<double>(total) > 2147483648.0) throw InvalidArgument("grid resolution too small");
      std::vector<std::size_t> idx(ambient_, 0);
      PointVec p(ambient_);
      for (std::size_t n = 0; n < total; ++n) {
        bool on_face = false;
        for (std::size_t k = 0; k < ambient_; ++k) {
          p[k] = -1.0 + 2.0 * static_cast<double>(idx[k]) / static_cast<double>(m);
          on_face = on_face || idx[k] == 0 || idx[k] == m;
        }
        if (on_face) {
          const double r = detail::norm(p);
          for (double v : p) coords.push_back(v / r);
        }
        for (std::size_t k = 0; k < ambient_; ++k) {
          if (++idx[k] <= m) break;
          idx[k] = 0;
        }
      }
    }
    const PointVec a = anchor.value_or(default_anchor());
    coords.insert(coords.end(), a.begin(), a.end());
    for (double v : a) coords.push_back(-v);
    g.coords = sort_rows(std::move(coords));
    g.anchored_at = a;
    g.resolution = h;
    return g;
  }

  DomainKind kind_;
  std::size_t ambient_ = 0;
  std::size_t intrinsic_ = 0;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::shared_ptr<const CurveData> curve_;
};

}  // namespace greedy_energy
