#pragma once

// Command-line front end. All commands share the rational grammar of
// rational.hpp for --rho, --r, --l and --p-on, write JSON lines by default
// (--format csv for tables) and buffer their output so that nothing is
// printed on an error path.
//
// Exit codes: 0 ok, 1 parse/usage error, 2 domain or parameter error,
// 3 infeasible target.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "manetq/manetq.hpp"

namespace manetq::cli {

using Record = nlohmann::ordered_json;

enum class Format { Json, Csv };

class Emitter {
 public:
  explicit Emitter(Format f) : format_(f) {}

  void emit(const Record& r) {
    if (format_ == Format::Json) {
      out_ << r.dump() << '\n';
      return;
    }
    if (!header_written_) {
      bool first = true;
      for (const auto& [key, _] : r.items()) {
        out_ << (first ? "" : ",") << key;
        first = false;
      }
      out_ << '\n';
      header_written_ = true;
    }
    bool first = true;
    for (const auto& [_, value] : r.items()) {
      out_ << (first ? "" : ",") << csv_cell(value);
      first = false;
    }
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  // Numbers go through the same serializer as JSON so both formats carry
  // identical digits.
  static std::string csv_cell(const nlohmann::ordered_json& v) {
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    }
    return v.dump();
  }

  Format format_;
  bool header_written_ = false;
  std::ostringstream out_;
};

namespace detail {

inline std::string exact_str(const ExactRational& r) { return r.to_string(); }

// JSON has no infinities or NaN; those become null.
inline nlohmann::ordered_json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

struct RangeFlags {
  std::optional<std::string> rho, r, l;

  std::optional<ExactRational> resolve() const {
    if (rho) {
      if (r || l) throw ParseError("give either --rho or --r/--l, not both");
      return ExactRational::parse(*rho);
    }
    if (r && l) return PhysicalParams(ExactRational::parse(*r), ExactRational::parse(*l)).rho();
    if (r || l) throw ParseError("--r and --l must be given together");
    return std::nullopt;
  }

  ExactRational require() const {
    auto v = resolve();
    if (!v) throw ParseError("need --rho or both --r and --l");
    return *v;
  }

  void add_to(CLI::App* app) {
    app->add_option("--rho", rho, "normalized radio range r/l (e.g. 3/100 or 0.03)");
    app->add_option("--r", r, "radio range (same unit as --l)");
    app->add_option("--l", l, "system length");
  }
};

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw ParseError("unknown format '" + s + "'");
}

inline Boundary parse_boundary(const std::string& s) {
  if (s == "periodic") return Boundary::Periodic;
  if (s == "disconnected") return Boundary::Disconnected;
  throw ParseError("unknown boundary '" + s + "'");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::uint64_t parse_count(const std::string& s) {
  if (s.empty() || s.size() > 18 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("bad node count '" + s + "'");
  return std::stoull(s);
}

/// "a,b,c" or "lo:hi" (doubling) or "lo:hi:factor".
inline std::vector<std::uint64_t> parse_n_grid(const std::string& s) {
  std::vector<std::uint64_t> out;
  if (s.find(':') == std::string::npos) {
    for (const auto& item : split(s, ',')) out.push_back(parse_count(item));
    return out;
  }
  const auto parts = split(s, ':');
  if (parts.size() < 2 || parts.size() > 3) throw ParseError("bad n grid '" + s + "'");
  const std::uint64_t lo = parse_count(parts[0]), hi = parse_count(parts[1]);
  const std::uint64_t factor = parts.size() == 3 ? parse_count(parts[2]) : 2;
  if (lo < 1 || factor < 2) throw ParseError("bad n grid '" + s + "'");
  for (std::uint64_t n = lo; n <= hi; n *= factor) out.push_back(n);
  return out;
}

/// "a,b,c" or "lo:hi:step" (inclusive, exact arithmetic).
inline std::vector<ExactRational> parse_x_grid(const std::string& s) {
  std::vector<ExactRational> out;
  if (s.find(':') == std::string::npos) {
    for (const auto& item : split(s, ',')) out.push_back(ExactRational::parse(item));
    return out;
  }
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ParseError("x grid needs lo:hi:step");
  const auto lo = ExactRational::parse(parts[0]), hi = ExactRational::parse(parts[1]),
             step = ExactRational::parse(parts[2]);
  if (step.sign() <= 0) throw ParseError("x grid step must be positive");
  for (ExactRational x = lo; x <= hi; x += step) {
    out.push_back(x);
    if (out.size() > 100000) throw ParseError("x grid too large");
  }
  return out;
}

inline ExactRational round_to_denominator(double x, std::uint64_t den) {
  return ExactRational(mpz_class(std::to_string(std::llround(x * static_cast<double>(den)))), mpz_class(std::to_string(den)));
}

inline ExactProb exact_metric(MetricKind kind, const SystemParams& sp, const ExactOptions& opts) {
  using T = MetricKind::Tag;
  switch (kind.tag()) {
    case T::Connectedness: return p_conn_pb(sp);
    case T::Coveredness: return q_coveredness_exact(sp);
    case T::Coverage: return q_coverage_exact(sp);
    case T::Segmentation: return q_segmentation_exact(sp);
    case T::Vulnerability: return q_vulnerability_exact(sp);
    case T::Reachability: return q_reachability_exact(sp, opts);
    case T::Disconnection: return p_disc_pb(sp, kind.k());
  }
  throw DomainError("unknown metric");
}

// Asymptotic value at finite (n, rho), with the regime the metric needs.
inline double asym_at(MetricKind kind, const SystemParams& sp, double* scaling = nullptr) {
  double x = 0;
  double v = 0;
  if (kind.intensive()) {
    x = nu_from_params(sp);
    v = asym_metric(kind, AsymptoticRegime::nu(x));
  } else if (kind.tag() == MetricKind::Tag::Coveredness) {
    x = eta_from_params(sp.with_rho(ExactRational(2) * sp.rho()));
    v = asym_metric(MetricKind::connectedness(), AsymptoticRegime::eta(x));
  } else {
    x = eta_from_params(sp);
    v = asym_metric(kind, AsymptoticRegime::eta(x));
  }
  if (scaling) *scaling = x;
  return v;
}

inline unsigned threads_from_env() {
  const char* s = std::getenv("MANETQ_THREADS");
  if (!s || !*s) return 0;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (*end != '\0' || v < 1) throw ParseError("MANETQ_THREADS must be a positive integer");
  return static_cast<unsigned>(v);
}

}  // namespace detail

struct EvalFlags {
  std::string metric;
  std::optional<std::uint64_t> n;
  detail::RangeFlags range;
  std::string mode = "exact";
  std::optional<double> eta, nu;
  std::optional<std::string> p_on;
  std::uint64_t reach_max_n = ExactOptions{}.reachability_max_n;
};

inline void cmd_eval(const EvalFlags& f, Emitter& em) {
  const MetricKind kind = MetricKind::parse(f.metric);
  Record rec;
  rec["command"] = "eval";
  rec["metric"] = kind.name();
  rec["mode"] = f.mode;
  const auto rho = f.range.resolve();
  std::optional<OnProbability> p_on;
  if (f.p_on) p_on.emplace(ExactRational::parse(*f.p_on));

  if (f.mode == "exact") {
    if (!f.n || !rho) throw ParseError("exact mode needs --n and a range (--rho or --r/--l)");
    const SystemParams sp(*f.n, *rho);
    rec["n"] = sp.n();
    rec["rho"] = detail::exact_str(sp.rho());
    ExactRational value;
    if (p_on) {
      rec["p_on"] = detail::exact_str(p_on->value());
      if (kind == MetricKind::segmentation()) {
        rec["convention"] = "formula";
        value = q_segmentation_vn(sp, *p_on);
      } else {
        rec["convention"] = "simulation";
        const auto values = metric_values(kind, sp.n(), sp.rho(), ValueConvention::Simulation,
                                          ExactOptions{f.reach_max_n});
        value = mix_binomial(values, sp.n(), *p_on);
      }
    } else {
      value = detail::exact_metric(kind, sp, ExactOptions{f.reach_max_n}).value();
    }
    rec["value"] = detail::exact_str(value);
    rec["decimal"] = value.to_decimal(12);
    rec["provenance"] = "exact";
  } else if (f.mode == "asym") {
    double v = 0;
    if (f.eta && f.nu) throw ParseError("give at most one of --eta and --nu");
    if (p_on) {
      if (!kind.intensive()) throw RegimeError("varying-node limits exist only for intensive metrics");
      double nu = 0;
      if (f.nu) {
        nu = *f.nu;
      } else if (f.n && rho) {
        nu = nu_from_params(SystemParams(*f.n, *rho));
      } else {
        throw ParseError("asym mode with --p-on needs --nu or --n with a range");
      }
      rec["nu"] = nu;
      rec["p_on"] = detail::exact_str(p_on->value());
      v = asym_metric_vn(kind, nu, p_on->value().to_double());
    } else if (f.eta) {
      rec["eta"] = *f.eta;
      v = asym_metric(kind, AsymptoticRegime::eta(*f.eta));
    } else if (f.nu) {
      rec["nu"] = *f.nu;
      v = asym_metric(kind, AsymptoticRegime::nu(*f.nu));
    } else {
      if (!f.n || !rho) throw ParseError("asym mode needs --eta, --nu, or --n with a range");
      const SystemParams sp(*f.n, *rho);
      rec["n"] = sp.n();
      rec["rho"] = detail::exact_str(sp.rho());
      double x = 0;
      v = detail::asym_at(kind, sp, &x);
      rec[kind.intensive() ? "nu" : "eta"] = x;
    }
    rec["value"] = detail::real(v);
    rec["provenance"] = "asymptotic";
  } else {
    throw ParseError("unknown mode '" + f.mode + "' (exact|asym)");
  }
  em.emit(rec);
}

struct TableFlags {
  std::string l = "1000";
  std::vector<std::string> r = {"30", "10"};
  std::vector<std::string> targets = {"0.9", "0.99"};
};

inline const std::vector<MetricKind>& table_metrics() {
  static const std::vector<MetricKind> m = {MetricKind::connectedness(), MetricKind::coverage(),
                                            MetricKind::segmentation(), MetricKind::vulnerability(),
                                            MetricKind::reachability()};
  return m;
}

/// Quality target for a table row: "at least t" metrics use t itself, "at
/// most" metrics use 1 - t.
inline QualityTarget table_target(MetricKind kind, double t) {
  const QualityTarget probe(kind, t);
  return probe.direction() == Direction::AtLeast ? probe : QualityTarget(kind, 1.0 - t);
}

inline void cmd_table(const TableFlags& f, Emitter& em) {
  const auto l = ExactRational::parse(f.l);
  for (const auto& ts : f.targets) {
    const double t = ExactRational::parse(ts).to_double();
    for (const auto& kind : table_metrics()) {
      const QualityTarget target = table_target(kind, t);
      for (const auto& rs : f.r) {
        const PhysicalParams phys(ExactRational::parse(rs), l);
        const SolveResult res = min_nodes(target, phys);
        Record rec;
        rec["command"] = "table";
        rec["target"] = t;
        rec["metric"] = kind.name();
        rec["criterion"] = target.describe();
        rec["r"] = phys.r().to_decimal(12);
        rec["l"] = phys.l().to_decimal(12);
        rec["n_min"] = res.n_min;
        rec["auxiliary"] = res.auxiliary;
        rec["achieved"] = res.achieved;
        rec["provenance"] = "asymptotic";
        em.emit(rec);
      }
    }
  }
}

struct SweepFlags {
  std::string metric;
  std::string n_grid = "16:4096";
  std::string x_axis = "eta";
  std::string x_grid = "-2:4:1";
  bool compare_asym = false;
  std::uint64_t rho_den = 1000000;
  std::uint64_t reach_max_n = ExactOptions{}.reachability_max_n;
};

inline void cmd_sweep(const SweepFlags& f, Emitter& em) {
  const MetricKind kind = MetricKind::parse(f.metric);
  if (f.x_axis != "eta" && f.x_axis != "nrho") throw ParseError("--x-axis must be eta or nrho");
  if (f.rho_den < 1) throw ParseError("--rho-den must be positive");
  const auto ns = detail::parse_n_grid(f.n_grid);
  const auto xs = detail::parse_x_grid(f.x_grid);
  for (std::uint64_t n : ns) {
    for (const auto& x : xs) {
      ExactRational rho = f.x_axis == "nrho"
                              ? x / ExactRational(static_cast<long>(n))
                              : detail::round_to_denominator((std::log(static_cast<double>(n)) + x.to_double()) /
                                                                 static_cast<double>(n),
                                                             f.rho_den);
      if (rho.sign() <= 0) continue;  // outside the model for this n
      const SystemParams sp(n, rho);
      const ExactProb exact = detail::exact_metric(kind, sp, ExactOptions{f.reach_max_n});
      Record rec;
      rec["command"] = "sweep";
      rec["metric"] = kind.name();
      rec["n"] = n;
      rec["x"] = x.to_double();
      rec["rho"] = detail::exact_str(rho);
      rec["exact"] = exact.to_double();
      rec["exact_rational"] = detail::exact_str(exact.value());
      if (f.compare_asym) {
        const double a = detail::asym_at(kind, sp);
        const double e = exact.to_double();
        const double abs_err = std::abs(e - a);
        rec["asymptotic"] = detail::real(a);
        rec["abs_error"] = detail::real(abs_err);
        rec["rel_error"] = e != 0 ? detail::real(abs_err / e) : nullptr;
      }
      em.emit(rec);
    }
  }
}

struct SimulateFlags {
  std::uint64_t n = 0;
  detail::RangeFlags range;
  std::string boundary = "periodic";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::optional<std::string> p_on;
  bool coverage_clip = false;
  std::uint64_t max_k = 3;
};

inline void cmd_simulate(const SimulateFlags& f, Emitter& em) {
  TrialConfig cfg{.params = SystemParams(f.n, f.range.require()),
                  .boundary = detail::parse_boundary(f.boundary),
                  .trials = f.trials,
                  .seed = f.seed,
                  .on_probability = std::nullopt,
                  .coverage_clip = f.coverage_clip,
                  .max_disc_k = f.max_k,
                  .threads = detail::threads_from_env()};
  if (f.p_on) cfg.on_probability.emplace(ExactRational::parse(*f.p_on));
  const auto estimates = run(cfg);
  for (const auto& kind : simulated_metrics(cfg.max_disc_k)) {
    const Estimate& e = estimates.at(kind);
    Record rec;
    rec["command"] = "simulate";
    rec["metric"] = kind.name();
    rec["mean"] = e.mean;
    rec["stderr"] = e.std_error;
    rec["trials"] = e.trials;
    rec["seed"] = e.seed;
    rec["n"] = cfg.params.n();
    rec["rho"] = detail::exact_str(cfg.params.rho());
    rec["boundary"] = f.boundary;
    rec["p_on"] = f.p_on ? nlohmann::ordered_json(detail::exact_str(cfg.on_probability->value())) : nullptr;
    rec["provenance"] = "monte-carlo";
    em.emit(rec);
  }
}

struct SolveFlags {
  std::string metric;
  std::string target;
  std::optional<std::string> r;
  std::string l = "1000";
  std::optional<std::string> rho;
};

inline void cmd_solve(const SolveFlags& f, Emitter& em) {
  const MetricKind kind = MetricKind::parse(f.metric);
  const QualityTarget target(kind, ExactRational::parse(f.target).to_double());
  std::optional<PhysicalParams> phys;
  if (f.rho && f.r) throw ParseError("give either --rho or --r, not both");
  if (f.rho)
    phys.emplace(ExactRational::parse(*f.rho), ExactRational(1));
  else if (f.r)
    phys.emplace(ExactRational::parse(*f.r), ExactRational::parse(f.l));
  else
    throw ParseError("need --r (with --l) or --rho");
  const SolveResult res = min_nodes(target, *phys);
  Record rec;
  rec["command"] = "solve";
  rec["metric"] = kind.name();
  rec["criterion"] = target.describe();
  rec["rho"] = detail::exact_str(phys->rho());
  rec["n_min"] = res.n_min;
  rec["auxiliary"] = res.auxiliary;
  rec["achieved"] = res.achieved;
  rec["provenance"] = "asymptotic";
  em.emit(rec);
}

struct BoundsFlags {
  std::uint64_t n = 0;
  detail::RangeFlags range;
  std::uint64_t k = 0;
};

inline void cmd_bounds(const BoundsFlags& f, Emitter& em) {
  const SystemParams sp(f.n, f.range.require());
  const ProbBounds b = p_disc_db_bounds(sp, f.k);
  const ExactRational width = bounds_width(sp);
  Record rec;
  rec["command"] = "bounds";
  rec["n"] = sp.n();
  rec["rho"] = detail::exact_str(sp.rho());
  rec["k"] = f.k;
  rec["lower"] = detail::exact_str(b.lower.value());
  rec["upper"] = detail::exact_str(b.upper.value());
  rec["lower_decimal"] = b.lower.value().to_decimal(12);
  rec["upper_decimal"] = b.upper.value().to_decimal(12);
  rec["width"] = detail::exact_str(width);
  rec["provenance"] = "bounds";
  em.emit(rec);
}

/// Runs one CLI invocation (args exclude the program name).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Connectivity and quality metrics for 1-dimensional ad hoc networks", "manetq"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "json (default) or csv")->check(CLI::IsMember({"json", "csv"}));

  EvalFlags ev;
  auto* eval = app.add_subcommand("eval", "evaluate a metric exactly or asymptotically");
  eval->add_option("--metric", ev.metric, "conn|coveredness|coverage|segmentation|vulnerability|reachability|disc:k")
      ->required();
  eval->add_option("--n", ev.n, "node count");
  ev.range.add_to(eval);
  eval->add_option("--mode", ev.mode, "exact|asym");
  eval->add_option("--eta", ev.eta, "n rho - ln n (asym mode)");
  eval->add_option("--nu", ev.nu, "n rho (asym mode)");
  eval->add_option("--p-on", ev.p_on, "switch-on probability (varying node number)");
  eval->add_option("--reach-max-n", ev.reach_max_n, "largest n for exact reachability");
  eval->add_option("--format", format);

  TableFlags tb;
  auto* table = app.add_subcommand("table", "minimum node counts for the design table");
  table->add_option("--l", tb.l, "system length");
  table->add_option("--r", tb.r, "radio ranges")->delimiter(',');
  table->add_option("--targets", tb.targets, "quality levels")->delimiter(',');
  table->add_option("--format", format);

  SweepFlags sw;
  auto* sweep = app.add_subcommand("sweep", "exact vs asymptotic data over an (n, x) grid");
  sweep->add_option("--metric", sw.metric)->required();
  sweep->add_option("--n-grid", sw.n_grid, "a,b,c | lo:hi (doubling) | lo:hi:factor");
  sweep->add_option("--x-axis", sw.x_axis, "eta|nrho");
  sweep->add_option("--x-grid", sw.x_grid, "a,b,c | lo:hi:step");
  sweep->add_flag("--compare-asym", sw.compare_asym, "add asymptotic and error columns");
  sweep->add_option("--rho-den", sw.rho_den, "denominator used to rationalize rho on the eta axis");
  sweep->add_option("--reach-max-n", sw.reach_max_n);
  sweep->add_option("--format", format);

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates of every metric");
  simulate->add_option("--n", sim.n)->required();
  sim.range.add_to(simulate);
  simulate->add_option("--boundary", sim.boundary, "periodic|disconnected");
  simulate->add_option("--trials", sim.trials);
  simulate->add_option("--seed", sim.seed);
  simulate->add_option("--p-on", sim.p_on, "switch-on probability (varying node number)");
  simulate->add_flag("--coverage-clip", sim.coverage_clip, "clip discs to [0,1]");
  simulate->add_option("--max-k", sim.max_k, "estimate disc:k for k = 0..max-k");
  simulate->add_option("--format", format);

  SolveFlags sv;
  auto* solve = app.add_subcommand("solve", "minimum node count for one quality target");
  solve->add_option("--metric", sv.metric)->required();
  solve->add_option("--target", sv.target)->required();
  solve->add_option("--r", sv.r);
  solve->add_option("--l", sv.l);
  solve->add_option("--rho", sv.rho);
  solve->add_option("--format", format);

  BoundsFlags bd;
  auto* bounds = app.add_subcommand("bounds", "bounds on disconnected-boundary probabilities");
  bounds->add_option("--n", bd.n)->required();
  bd.range.add_to(bounds);
  bounds->add_option("--k", bd.k);
  bounds->add_option("--format", format);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 1;
  }

  try {
    Emitter em(detail::parse_format(format));
    if (*eval) cmd_eval(ev, em);
    if (*table) cmd_table(tb, em);
    if (*sweep) cmd_sweep(sw, em);
    if (*simulate) cmd_simulate(sim, em);
    if (*solve) cmd_solve(sv, em);
    if (*bounds) cmd_bounds(bd, em);
    out << em.str();
    return 0;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << " (maximum attainable " << e.max_attainable() << ")\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace manetq::cli
