#pragma once

// CSV and JSON export of traces, reports and histograms. Numbers are written
// with 17 significant digits; non-finite values become nan/inf in CSV and
// null in JSON.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "greedy_energy/asymptotics.hpp"
#include "greedy_energy/distribution.hpp"
#include "greedy_energy/greedy.hpp"
#include "greedy_energy/version.hpp"

namespace greedy_energy {

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_number(double v) {
  return std::isfinite(v) ? format_number(v) : "null";
}

inline std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

/// Run metadata carried in every JSON export.
struct ExportMeta {
  std::string domain;
  double s = detail::kNaN;
  double grid = detail::kNaN;  // coarse grid resolution
  std::uint64_t seed = 0;
};

inline ExportMeta export_meta(const GreedyTrace& trace, std::uint64_t seed = 0) {
  return {trace.domain.name(), trace.spec ? trace.spec->s() : detail::kNaN, trace.grid_meta.resolution, seed};
}

inline void write_meta_json(std::ostream& os, const ExportMeta& m) {
  os << "{\"domain\":" << json_string(m.domain) << ",\"s\":" << json_number(m.s) << ",\"grid\":" << json_number(m.grid)
     << ",\"seed\":" << m.seed << ",\"version\":" << json_string(kVersion) << "}";
}

namespace detail {

inline std::vector<std::string> trace_columns(const GreedyTrace& trace) {
  std::vector<std::string> cols{"n", "param"};
  const std::size_t dim = trace.domain.ambient_dim();
  for (std::size_t k = 0; k < dim; ++k) cols.push_back("x" + std::to_string(k + 1));
  if (trace.kind == TraceKind::energy) {
    cols.emplace_back("potential");
    cols.emplace_back("energy");
  }
  cols.emplace_back("min_dist");
  cols.emplace_back("grid_index");
  return cols;
}

inline std::vector<double> trace_row(const GreedyTrace& trace, std::size_t i) {
  std::vector<double> row{static_cast<double>(trace.first_index + i), trace.params[i]};
  for (double x : trace.points[i]) row.push_back(x);
  if (trace.kind == TraceKind::energy) {
    row.push_back(trace.potentials[i]);
    row.push_back(trace.energies[i]);
  }
  row.push_back(trace.min_dists[i]);
  row.push_back(static_cast<double>(trace.grid_indices[i]));
  return row;
}

inline void write_csv_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << cells[k];
  os << '\n';
}

}  // namespace detail

/// One row per point: n, param, coordinates, potential, energy (energy
/// traces), min_dist, grid_index.
inline void write_trace_csv(std::ostream& os, const GreedyTrace& trace) {
  detail::write_csv_line(os, detail::trace_columns(trace));
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::vector<std::string> cells;
    for (double v : detail::trace_row(trace, i)) cells.push_back(format_number(v));
    detail::write_csv_line(os, cells);
  }
}

inline void write_trace_json(std::ostream& os, const GreedyTrace& trace, const ExportMeta& meta) {
  const auto cols = detail::trace_columns(trace);
  os << "{\"meta\":";
  write_meta_json(os, meta);
  os << ",\"kernel\":" << json_string(trace.spec ? trace.spec->name() : "packing") << ",\"columns\":[";
  for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << json_string(cols[k]);
  os << "],\"rows\":[";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    os << (i ? ",\n" : "\n") << "[";
    const auto row = detail::trace_row(trace, i);
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << json_number(row[k]);
    os << "]";
  }
  os << "\n]}\n";
}

/// Columns N, statistic, reference, ratio.
inline void write_report_csv(std::ostream& os, const AsymptoticReport& rep) {
  os << "N,statistic,reference,ratio\n";
  for (const auto& r : rep.rows)
    os << r.n << ',' << format_number(r.statistic) << ',' << format_number(r.reference) << ','
       << format_number(r.ratio) << '\n';
}

inline void write_report_json(std::ostream& os, const AsymptoticReport& rep, const ExportMeta& meta) {
  os << "{\"meta\":";
  write_meta_json(os, meta);
  os << ",\"statistic_kind\":" << json_string(to_string(rep.kind)) << ",\"kernel\":" << json_string(rep.meta.kernel)
     << ",\"scaling\":" << json_string(rep.meta.scaling) << ",\"summary\":{";
  for (std::size_t k = 0; k < rep.summary.size(); ++k)
    os << (k ? "," : "") << json_string(rep.summary[k].first) << ":" << json_number(rep.summary[k].second);
  os << "},\"rows\":[";
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& r = rep.rows[i];
    os << (i ? ",\n" : "\n") << "{\"N\":" << r.n << ",\"statistic\":" << json_number(r.statistic)
       << ",\"reference\":" << json_number(r.reference) << ",\"ratio\":" << json_number(r.ratio)
       << ",\"subsequence\":" << json_string(r.subsequence) << "}";
  }
  os << "\n]}\n";
}

/// Columns bin_lo, bin_hi, empirical, reference.
inline void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins) {
  os << "bin_lo,bin_hi,empirical,reference\n";
  for (const auto& b : bins)
    os << format_number(b.lo) << ',' << format_number(b.hi) << ',' << format_number(b.empirical) << ','
       << format_number(b.reference) << '\n';
}

inline void write_histogram_json(std::ostream& os, const std::vector<HistogramBin>& bins, const ExportMeta& meta,
                                 double ks = detail::kNaN) {
  os << "{\"meta\":";
  write_meta_json(os, meta);
  os << ",\"ks_distance\":" << json_number(ks) << ",\"rows\":[";
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const auto& b = bins[i];
    os << (i ? ",\n" : "\n") << "{\"bin_lo\":" << json_number(b.lo) << ",\"bin_hi\":" << json_number(b.hi)
       << ",\"empirical\":" << json_number(b.empirical) << ",\"reference\":" << json_number(b.reference) << "}";
  }
  os << "\n]}\n";
}

/// Minimal matplotlib script plotting the report CSV at `csv_path`.
inline std::string plot_script_for_report(const std::string& csv_path) {
  return "import csv\nimport matplotlib.pyplot as plt\n\nrows = list(csv.DictReader(open(" + json_string(csv_path) +
         ")))\nn = [int(r['N']) for r in rows]\nstat = [float(r['statistic']) for r in rows]\n"
         "ref = [float(r['reference']) for r in rows]\nplt.semilogx(n, stat, label='statistic')\n"
         "plt.semilogx(n, ref, '--', label='reference')\nplt.xlabel('N')\nplt.legend()\nplt.show()\n";
}

}  // namespace greedy_energy
