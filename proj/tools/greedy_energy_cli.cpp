// greedy-energy: command-line front end.
//
//   greedy-energy generate     --domain circle --s 1 --n 64
//   greedy-energy packing      --domain interval --a 0 --b 1 --n 257 --anchor 1
//   greedy-energy report       --kind second_order --domain circle --s 0.5 --n 3072
//   greedy-energy constants    --name f --s 2
//   greedy-energy distribution --domain interval --s 0 --n 1024 --bins 16
//   greedy-energy verify       --suite circle
//
// Exit status: 0 success, 1 invalid input, 2 when any acceptance check fails.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "greedy_energy/greedy_energy.hpp"

namespace ge = greedy_energy;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitFailed = 2;

struct Options {
  // domain
  std::string domain = "circle";
  int dim = 2;
  double a = -1.0;
  double b = 1.0;
  std::vector<double> lo;
  std::vector<double> hi;
  std::string curve_file;
  bool closed = false;
  // kernel
  std::string kernel = "riesz";
  double s = 1.0;
  std::string weight = "arc_chord";
  double weight_value = 1.0;
  // run
  std::size_t n = 64;
  std::vector<double> anchor;
  double resolution = 0.0;
  int refine_rounds = 3;
  int refine_factor = 16;
  std::string output = "-";
  std::string format = "csv";
  std::uint64_t seed = 0;
  // report / packing / distribution / constants / verify
  std::string kind = "first_order";
  std::vector<double> subinterval;
  std::string counterexample;
  int levels = 4;
  int bins = 16;
  std::string name;
  double x = 0.0;
  std::string suite = "all";
  std::vector<int> criteria;
  std::string plot_script;
};

std::vector<ge::PointVec> read_vertices(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ge::InvalidArgument("cannot read curve file '" + path + "'");
  std::vector<ge::PointVec> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    ge::PointVec p;
    double v = 0.0;
    while (row >> v) p.push_back(v);
    if (!p.empty()) pts.push_back(p);
  }
  return pts;
}

ge::Domain make_domain(const Options& o) {
  if (o.domain == "circle") return ge::Domain::circle();
  if (o.domain == "sphere") return ge::Domain::sphere(o.dim);
  if (o.domain == "interval") return ge::Domain::interval(o.a, o.b);
  if (o.domain == "box") {
    if (o.lo.empty() && o.hi.empty()) return ge::Domain::unit_box(o.dim);
    return ge::Domain::box(o.lo, o.hi);
  }
  if (o.domain == "semicircle")
    return ge::Domain::curve_from([](double t) { return ge::PointVec{std::cos(t), std::sin(t)}; }, 0.0, ge::detail::kPi,
                                  8193, false);
  if (o.domain == "curve") {
    if (o.curve_file.empty()) throw ge::InvalidArgument("--domain curve needs --curve-file");
    return ge::Domain::curve(read_vertices(o.curve_file), o.closed);
  }
  throw ge::InvalidArgument("unknown domain '" + o.domain + "' (circle, sphere, interval, box, semicircle, curve)");
}

ge::KernelSpec make_kernel(const Options& o, const ge::Domain& domain) {
  if (o.kernel == "riesz") return ge::KernelSpec::riesz(o.s);
  if (o.kernel == "log") return ge::KernelSpec::log();
  if (o.kernel == "weighted") {
    if (o.weight == "arc_chord") return ge::KernelSpec::weighted(o.s, ge::make_arc_chord_weight(domain));
    if (o.weight == "constant") return ge::KernelSpec::weighted(o.s, ge::make_constant_weight(o.weight_value));
    throw ge::InvalidArgument("unknown weight '" + o.weight + "' (arc_chord, constant)");
  }
  throw ge::InvalidArgument("unknown kernel '" + o.kernel + "' (riesz, log, weighted)");
}

ge::GridPolicy make_policy(const Options& o) {
  return ge::GridPolicy{o.resolution, o.refine_rounds, o.refine_factor};
}

std::optional<ge::PointVec> make_anchor(const Options& o) {
  if (o.anchor.empty()) return std::nullopt;
  return o.anchor;
}

/// Runs `write` against the output file, or stdout for "-".
template <class Fn>
void with_output(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ge::InvalidArgument("cannot write to '" + path + "'");
  write(out);
  if (!out) throw ge::InvalidArgument("error while writing '" + path + "'");
}

void check_format(const Options& o) {
  if (o.format != "csv" && o.format != "json") throw ge::InvalidArgument("--format must be csv or json");
}

/// Weighted kernels built from the arc-chord weight live on the parameter
/// interval [0, L] of the curve given by --domain.
ge::Domain kernel_domain(const Options& o, const ge::Domain& domain) {
  if (o.kernel == "weighted" && o.weight == "arc_chord") return ge::Domain::interval(0.0, domain.measure());
  return domain;
}

ge::GreedyTrace energy_trace(const Options& o) {
  if (o.n < 2) throw ge::InvalidArgument("--n must be >= 2");
  const ge::Domain base = make_domain(o);
  const ge::KernelSpec spec = make_kernel(o, base);
  return ge::greedy_energy_sequence(kernel_domain(o, base), spec, o.n, make_anchor(o), make_policy(o));
}

int cmd_generate(const Options& o) {
  check_format(o);
  const ge::GreedyTrace trace = energy_trace(o);
  with_output(o.output, [&](std::ostream& os) {
    if (o.format == "csv") ge::write_trace_csv(os, trace);
    else ge::write_trace_json(os, trace, ge::export_meta(trace, o.seed));
  });
  return kExitOk;
}

ge::GreedyTrace packing_trace(const Options& o) {
  if (o.counterexample == "interval") return ge::counterexample_interval_sequence(o.levels);
  if (o.counterexample == "square") return ge::counterexample_square_sequence(o.levels);
  if (!o.counterexample.empty()) throw ge::InvalidArgument("--counterexample must be interval or square");
  if (o.n < 2) throw ge::InvalidArgument("--n must be >= 2");
  return ge::greedy_packing_sequence(make_domain(o), o.n, make_anchor(o), make_policy(o));
}

int cmd_packing(const Options& o) {
  check_format(o);
  const ge::GreedyTrace trace = packing_trace(o);
  with_output(o.output, [&](std::ostream& os) {
    if (o.format == "csv") ge::write_trace_csv(os, trace);
    else ge::write_trace_json(os, trace, ge::export_meta(trace, o.seed));
  });
  return kExitOk;
}

int cmd_report(const Options& o) {
  check_format(o);
  ge::AsymptoticReport rep;
  std::optional<ge::GreedyTrace> trace;
  if (o.kind == "packing") {
    trace = packing_trace(o);
    rep = ge::packing_report(*trace);
  } else {
    trace = energy_trace(o);
    if (o.kind == "first_order") rep = ge::first_order_report(*trace);
    else if (o.kind == "second_order") rep = ge::second_order_report(*trace);
    else if (o.kind == "gap_sum") rep = ge::gap_sum_report(*trace);
    else if (o.kind == "growth") rep = ge::growth_and_density_report(*trace);
    else if (o.kind == "density") {
      if (o.subinterval.size() != 2) throw ge::InvalidArgument("--kind density needs --subinterval c d");
      rep = ge::growth_and_density_report(*trace, std::pair{o.subinterval[0], o.subinterval[1]});
    } else {
      throw ge::InvalidArgument("unknown report kind '" + o.kind +
                                "' (first_order, second_order, gap_sum, packing, growth, density)");
    }
  }
  with_output(o.output, [&](std::ostream& os) {
    if (o.format == "csv") ge::write_report_csv(os, rep);
    else ge::write_report_json(os, rep, ge::export_meta(*trace, o.seed));
  });
  if (!o.plot_script.empty()) {
    if (o.format != "csv" || o.output == "-") throw ge::InvalidArgument("--plot-script needs a CSV --output file");
    with_output(o.plot_script, [&](std::ostream& os) { os << ge::plot_script_for_report(o.output); });
  }
  return kExitOk;
}

int cmd_constants(const Options& o) {
  const std::map<std::string, std::function<double()>> table{
      {"sphere", [&] { return ge::sphere_constant(o.dim, o.s); }},
      {"interval", [&] { return ge::interval_constant(o.s); }},
      {"f", [&] { return ge::f_factor(o.s); }},
      {"circle_second_order", [&] { return ge::circle_second_order_constant(o.s); }},
      {"greedy_s1_second_order", [] { return ge::greedy_s1_second_order_constant(); }},
      {"circle_min_energy", [&] { return ge::circle_min_energy(o.n, o.s).value; }},
      {"interval_cdf", [&] { return ge::interval_equilibrium_cdf(o.s, o.x); }},
      {"gamma", [&] { return ge::gamma_fn(o.x).value; }},
      {"digamma", [&] { return ge::digamma(o.x).value; }},
      {"zeta", [&] { return ge::zeta(o.s).value; }},
      {"euler_gamma", [] { return ge::euler_gamma().value; }},
      {"vol_ball", [&] { return ge::vol_ball(o.dim).value; }},
  };
  const auto it = table.find(o.name);
  if (it == table.end()) {
    std::string names;
    for (const auto& [k, v] : table) names += (names.empty() ? "" : ", ") + k;
    throw ge::InvalidArgument("unknown constant '" + o.name + "' (" + names + ")");
  }
  std::cout << ge::format_number(it->second()) << '\n';
  return kExitOk;
}

ge::EquilibriumLaw law_for(const Options& o, const ge::Domain& domain) {
  switch (domain.kind()) {
    case ge::DomainKind::circle: return ge::EquilibriumLaw::sphere_uniform(1);
    case ge::DomainKind::sphere: return ge::EquilibriumLaw::sphere_uniform(static_cast<int>(domain.intrinsic_dim()));
    case ge::DomainKind::interval:
      if (o.kernel == "weighted") return ge::EquilibriumLaw::curve_uniform(domain);
      return ge::EquilibriumLaw::interval_arcsine_type(o.kernel == "log" ? 0.0 : o.s, domain.lower()[0],
                                                       domain.upper()[0]);
    case ge::DomainKind::curve: return ge::EquilibriumLaw::curve_uniform(domain);
    case ge::DomainKind::box: break;
  }
  throw ge::InvalidArgument("no equilibrium law available for this domain");
}

int cmd_distribution(const Options& o) {
  check_format(o);
  const ge::GreedyTrace trace = energy_trace(o);
  const ge::EquilibriumLaw law = law_for(o, trace.domain);
  const auto bins = ge::histogram_report(trace.points, law, o.bins);
  const double ks = law.one_dimensional() ? ge::ks_distance(trace.points, law) : ge::detail::kNaN;
  with_output(o.output, [&](std::ostream& os) {
    if (o.format == "csv") ge::write_histogram_csv(os, bins);
    else ge::write_histogram_json(os, bins, ge::export_meta(trace, o.seed), ks);
  });
  if (law.one_dimensional()) std::cerr << "ks_distance " << ge::format_number(ks) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o) {
  std::vector<int> ids = o.criteria;
  if (ids.empty()) ids = ge::AcceptanceSuite::select(o.suite);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (int id : ids)
    if (id < 1 || id > static_cast<int>(ge::AcceptanceSuite::criteria().size()))
      throw ge::InvalidArgument("criterion ids run from 1 to 14");
  ge::AcceptanceSuite suite;
  bool ok = true;
  std::ostringstream report;
  for (int id : ids) {
    const ge::CriterionResult r = suite.run(id);
    ok = ok && r.pass;
    const std::string line = ge::format_result(r);
    report << line << '\n';
    std::cout << line << std::endl;
  }
  if (!o.output.empty() && o.output != "-") with_output(o.output, [&](std::ostream& os) { os << report.str(); });
  return ok ? kExitOk : kExitFailed;
}

/// Turns a JSON object of option defaults into command-line tokens, skipping
/// keys the user already gave on the command line.
std::vector<std::string> config_tokens(const std::string& path, const std::vector<std::string>& user_args) {
  std::ifstream in(path);
  if (!in) throw ge::InvalidArgument("cannot read config file '" + path + "'");
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ge::InvalidArgument(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw ge::InvalidArgument("config file must hold a JSON object");
  std::vector<std::string> out;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (std::find(user_args.begin(), user_args.end(), flag) != user_args.end()) continue;
    auto scalar = [](const nlohmann::json& v) {
      if (v.is_string()) return v.get<std::string>();
      return v.dump();
    };
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_array()) {
      out.push_back(flag);
      for (const auto& v : value) out.push_back(scalar(v));
    } else {
      out.push_back(flag);
      out.push_back(scalar(value));
    }
  }
  return out;
}

void add_domain_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--domain", o.domain, "circle, sphere, interval, box, semicircle or curve")->capture_default_str();
  cmd->add_option("--dim", o.dim, "sphere dimension d (S^d) or box dimension")->capture_default_str();
  cmd->add_option("--a", o.a, "interval left end")->capture_default_str();
  cmd->add_option("--b", o.b, "interval right end")->capture_default_str();
  cmd->add_option("--lo", o.lo, "box lower corner");
  cmd->add_option("--hi", o.hi, "box upper corner");
  cmd->add_option("--curve-file", o.curve_file, "polyline vertices, one point per line");
  cmd->add_flag("--closed", o.closed, "treat the polyline as a closed curve");
}

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "number of points")->capture_default_str();
  cmd->add_option("--anchor", o.anchor, "first point (defaults to the domain anchor)");
  cmd->add_option("--resolution", o.resolution, "coarse grid spacing (0 = automatic)")->capture_default_str();
  cmd->add_option("--refine-rounds", o.refine_rounds, "local refinement rounds")->capture_default_str();
  cmd->add_option("--refine-factor", o.refine_factor, "refinement factor per round")->capture_default_str();
  cmd->add_option("--output,-o", o.output, "output path, - for stdout")->capture_default_str();
  cmd->add_option("--format", o.format, "csv or json")->capture_default_str();
  cmd->add_option("--seed", o.seed, "seed recorded in the output metadata")->capture_default_str();
}

void add_kernel_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--kernel", o.kernel, "riesz, log or weighted")->capture_default_str();
  cmd->add_option("--s", o.s, "Riesz exponent (0 selects the log kernel)")->capture_default_str();
  cmd->add_option("--weight", o.weight, "weight for --kernel weighted: arc_chord or constant")->capture_default_str();
  cmd->add_option("--weight-value", o.weight_value, "value of the constant weight")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Greedy energy and best-packing sequences on compact sets", "greedy-energy"};
  app.require_subcommand(1);
  std::string config_path;

  auto* generate = app.add_subcommand("generate", "greedy energy sequence trace");
  auto* packing = app.add_subcommand("packing", "greedy best-packing sequence trace");
  auto* report = app.add_subcommand("report", "asymptotic report of a trace");
  auto* constants = app.add_subcommand("constants", "print a constant by name");
  auto* distribution = app.add_subcommand("distribution", "histogram and KS distance against the equilibrium law");
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");

  for (auto* cmd : {generate, packing, report, constants, distribution, verify})
    cmd->add_option("--config", config_path, "JSON file of option defaults (flags override)");
  for (auto* cmd : {generate, packing, report, distribution}) {
    add_domain_options(cmd, o);
    add_run_options(cmd, o);
  }
  for (auto* cmd : {generate, report, distribution}) add_kernel_options(cmd, o);
  packing->add_option("--counterexample", o.counterexample, "explicit sequence: interval or square");
  packing->add_option("--levels", o.levels, "levels of the explicit sequence")->capture_default_str();
  report->add_option("--kind", o.kind, "first_order, second_order, gap_sum, packing, growth or density")
      ->capture_default_str();
  report->add_option("--subinterval", o.subinterval, "c d for the density statistic")->expected(2);
  report->add_option("--counterexample", o.counterexample, "packing report of an explicit sequence");
  report->add_option("--levels", o.levels, "levels of the explicit sequence")->capture_default_str();
  report->add_option("--plot-script", o.plot_script, "also write a matplotlib script for the CSV output");
  distribution->add_option("--bins", o.bins, "number of histogram bins")->capture_default_str();
  constants->add_option("--name", o.name, "constant name")->required();
  constants->add_option("--s", o.s, "exponent s")->capture_default_str();
  constants->add_option("--d", o.dim, "dimension d")->capture_default_str();
  constants->add_option("--x", o.x, "argument x")->capture_default_str();
  constants->add_option("--n", o.n, "point count N")->capture_default_str();
  verify->add_option("--suite", o.suite, "all, circle, asymptotics, packing, oracle, distribution or determinism")
      ->capture_default_str();
  verify->add_option("--criteria", o.criteria, "explicit criterion ids");
  verify->add_option("--output,-o", o.output, "also write the report to this file");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    const auto cfg = std::find(args.begin(), args.end(), "--config");
    if (cfg != args.end() && cfg + 1 != args.end() && !args.empty()) {
      const auto extra = config_tokens(*(cfg + 1), args);
      args.insert(args.begin() + 1, extra.begin(), extra.end());
    }
    std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (*generate) return cmd_generate(o);
    if (*packing) return cmd_packing(o);
    if (*report) return cmd_report(o);
    if (*constants) return cmd_constants(o);
    if (*distribution) return cmd_distribution(o);
    if (*verify) return cmd_verify(o);
  } catch (const ge::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ge::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ge::GridExhausted& e) {
    std::cerr << "error: " << e.what() << " (use a finer --resolution)\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
