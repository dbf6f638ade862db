// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. `acceptance --only N` runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "manetq/manetq.hpp"
#include "manetq_cli.hpp"
#include "test_support.hpp"

using namespace manetq;
using R = ExactRational;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 12) failures.push_back(what);
  }
};

struct Criterion {
  int id;
  std::string title;
  double time_limit_s;  // <= 0: no limit
  std::function<void(Outcome&)> body;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

R rationalize(double x, long den = 1000000) {
  return {mpz_class(std::to_string(std::llround(x * static_cast<double>(den)))), mpz_class(den)};
}

std::string cli_out(std::vector<std::string> args, int* code = nullptr) {
  std::ostringstream out, err;
  const int c = cli::run(std::move(args), out, err);
  if (code) *code = c;
  return out.str();
}

// 1. Design table.
void design_table(Outcome& o) {
  int code = 0;
  const std::string out = cli_out({"table", "--l", "1000", "--r", "30,10", "--targets", "0.9,0.99"}, &code);
  o.check(code == 0, "table exited with " + std::to_string(code));
  const std::vector<long> expected = {261, 906, 39, 116, 77, 231, 102, 304, 173, 650,
                                      349, 1167, 77, 231, 154, 461, 209, 627, 226, 804};
  std::vector<long> got;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) got.push_back(nlohmann::json::parse(line)["n_min"].get<long>());
  o.check(got.size() == expected.size(), "expected 20 rows, got " + std::to_string(got.size()));
  int exact = 0;
  for (std::size_t i = 0; i < std::min(got.size(), expected.size()); ++i) {
    o.check(std::labs(got[i] - expected[i]) <= 1,
            "row " + std::to_string(i) + ": " + std::to_string(got[i]) + " vs " + std::to_string(expected[i]));
    exact += got[i] == expected[i];
  }
  o.detail = std::to_string(exact) + "/20 exact";
}

// 2. Exact identities in rational arithmetic.
void exact_identities(Outcome& o) {
  const std::vector<R> rhos = {R(1, 20), R(1, 10), R(1, 4), R(2, 5)};
  int checks = 0;
  for (std::uint64_t n = 1; n <= 30; ++n) {
    for (const R& rho : rhos) {
      const SystemParams sp(n, rho);
      const std::string at = " at n=" + std::to_string(n) + " rho=" + rho.to_string();
      const auto all = p_disc_pb_all(sp);
      R total(0), moment(0);
      for (std::size_t k = 0; k < all.size(); ++k) {
        total += all[k].value();
        moment += R(static_cast<long>(k)) * all[k].value();
      }
      o.check(total == R(1), "sum of P_DISC(k) = " + total.to_string() + at);
      o.check(moment / R(static_cast<long>(n)) == pow(R(1) - rho, static_cast<long>(n) - 1),
              "segment moment" + at);
      if (rho <= R(1) / R(static_cast<long>(n)))
        o.check(p_conn_pb(sp).value().is_zero(), "P_CONN nonzero for rho <= 1/n" + at);
      o.check(q_coveredness_exact(sp).value() == p_conn_pb(sp.with_rho(R(2) * rho)).value(), "coveredness" + at);
      checks += 4;
      if (n <= 20) {
        const auto values = metric_values(MetricKind::segmentation(), n, rho, ValueConvention::Formula);
        for (const R& p : {R(0), R(1, 4), R(1, 2), R(3, 4), R(1)}) {
          o.check(mix_binomial(values, n, OnProbability(p)) == q_segmentation_vn(sp, OnProbability(p)),
                  "varying-node closed form" + at + " p=" + p.to_string());
          ++checks;
        }
      }
    }
  }
  o.detail = std::to_string(checks) + " identities";
}

// 3. Monte Carlo against the exact formulas, bounds and the n = 2 oracle.
void monte_carlo_agreement(Outcome& o) {
  using testing_support::effective_stderr;
  const std::uint64_t trials = 100000, seed = 20240601;
  double worst = 0;
  int compared = 0;
  for (std::uint64_t n : {2UL, 5UL, 10UL, 50UL, 100UL}) {
    for (const R& rho : {R(1, 20), R(1, 10), R(1, 4)}) {
      const SystemParams sp(n, rho);
      const std::string at = " n=" + std::to_string(n) + " rho=" + rho.to_string();
      auto compare = [&](const Estimate& e, double expected, const std::string& what) {
        const double z = std::abs(e.mean - expected) / effective_stderr(e);
        worst = std::max(worst, z);
        ++compared;
        o.check(z <= 4, what + at + ": mc " + fmt(e.mean) + " exact " + fmt(expected) + " z=" + fmt(z));
      };

      const auto pb = run(TrialConfig{.params = sp, .boundary = Boundary::Periodic, .trials = trials, .seed = seed});
      compare(pb.at(MetricKind::connectedness()), p_conn_pb(sp).to_double(), "connectedness");
      compare(pb.at(MetricKind::coveredness()), q_coveredness_exact(sp).to_double(), "coveredness");
      compare(pb.at(MetricKind::coverage()), q_coverage_exact(sp).to_double(), "coverage");
      compare(pb.at(MetricKind::segmentation()), q_segmentation_exact(sp).to_double(), "segmentation");
      compare(pb.at(MetricKind::vulnerability()), q_vulnerability_exact(sp).to_double(), "vulnerability");
      compare(pb.at(MetricKind::reachability()), q_reachability_exact(sp).to_double(), "reachability");
      for (std::uint64_t k = 0; k <= 3; ++k)
        compare(pb.at(MetricKind::disconnection(k)), p_disc_pb(sp, k).to_double(), "disc:" + std::to_string(k));

      const auto db =
          run(TrialConfig{.params = sp, .boundary = Boundary::Disconnected, .trials = trials, .seed = seed + 1});
      for (std::uint64_t k = 0; k <= 3; ++k) {
        const Estimate& e = db.at(MetricKind::disconnection(k));
        const auto b = p_disc_db_bounds(sp, k);
        const double tol = 4 * effective_stderr(e);
        ++compared;
        o.check(e.mean >= b.lower.to_double() - tol && e.mean <= b.upper.to_double() + tol,
                "disconnected disc:" + std::to_string(k) + at + ": mc " + fmt(e.mean) + " outside [" +
                    fmt(b.lower.to_double()) + ", " + fmt(b.upper.to_double()) + "]");
      }
      if (n == 2) compare(db.at(MetricKind::connectedness()), p_conn_db_n2(rho).to_double(), "disconnected conn");
    }
  }
  o.detail = std::to_string(compared) + " comparisons, max |z| " + fmt(worst);
}

// 4. Convergence to the limit laws.
void asymptotic_convergence(Outcome& o) {
  const std::vector<std::uint64_t> ns = {50, 200, 800};
  double err800 = 0;
  for (double eta : {0.0, 1.0, 2.0}) {
    const double limit = std::exp(-std::exp(-eta));
    double prev = INFINITY;
    for (std::uint64_t n : ns) {
      const double nd = static_cast<double>(n);
      const SystemParams sp(n, rationalize((std::log(nd) + eta) / nd));
      const double err = std::abs(p_conn_pb(sp).to_double() - limit);
      o.check(err < prev, "connectedness error not decreasing at eta=" + fmt(eta) + " n=" + std::to_string(n));
      prev = err;
      if (n == 800 && eta >= 1) {
        o.check(err < 0.01, "connectedness error " + fmt(err) + " >= 0.01 at eta=" + fmt(eta) + " n=800");
        err800 = std::max(err800, err);
      }
    }
  }
  for (double nu : {1.0, 2.0}) {
    const auto regime = AsymptoticRegime::nu(nu);
    for (auto kind : {MetricKind::coverage(), MetricKind::segmentation(), MetricKind::vulnerability()}) {
      double prev = INFINITY;
      for (std::uint64_t n : ns) {
        const SystemParams sp(n, R::from_double(nu) / R(static_cast<long>(n)));
        const double exact = kind == MetricKind::coverage()       ? q_coverage_exact(sp).to_double()
                             : kind == MetricKind::segmentation() ? q_segmentation_exact(sp).to_double()
                                                                  : q_vulnerability_exact(sp).to_double();
        const double err = std::abs(exact - asym_metric(kind, regime));
        o.check(err < prev, kind.name() + " error not decreasing at nu=" + fmt(nu) + " n=" + std::to_string(n));
        prev = err;
      }
    }
  }
  o.detail = "max connectedness error at n=800 (eta>=1): " + fmt(err800);
}

// 5. Poisson structure of the disconnection counts.
void poisson_structure(Outcome& o) {
  const std::uint64_t n = 800;
  const double eta = 1.0;
  const SystemParams sp(n, rationalize((std::log(800.0) + eta) / 800.0));
  const R p0 = p_disc_pb(sp, 0).value();
  std::string detail;
  double fact = 1;
  for (std::uint64_t k = 1; k <= 3; ++k) {
    fact *= static_cast<double>(k);
    const double ratio = (p_disc_pb(sp, k).value() / p0).to_double();
    const double expected = std::exp(-eta * static_cast<double>(k)) / fact;
    const double rel = std::abs(ratio - expected) / expected;
    o.check(rel <= 0.05, "k=" + std::to_string(k) + ": ratio " + fmt(ratio) + " vs " + fmt(expected) +
                             " (relative error " + fmt(100 * rel) + "%)");
    detail += (k > 1 ? ", " : "") + std::string("k=") + std::to_string(k) + " rel " + fmt(100 * rel) + "%";
  }
  o.detail = detail;
}

// 6. Byte-identical simulate output under equal seeds and any thread count.
void determinism(Outcome& o) {
  const std::vector<std::vector<std::string>> invocations = {
      {"simulate", "--n", "50", "--rho", "1/20", "--trials", "50000", "--seed", "7"},
      {"simulate", "--n", "10", "--rho", "1/4", "--boundary", "disconnected", "--trials", "20000", "--seed", "1"},
      {"simulate", "--n", "30", "--rho", "0.05", "--p-on", "1/2", "--trials", "20000", "--seed", "99"},
      {"simulate", "--n", "2", "--rho", "3/5", "--trials", "9000", "--seed", "42", "--format", "csv"},
  };
  for (const auto& args : invocations) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "2", "5", "16"}) {
      ::setenv("MANETQ_THREADS", threads, 1);
      int code = 0;
      outputs.push_back(cli_out(args, &code));
      o.check(code == 0, "simulate exited with " + std::to_string(code));
    }
    ::unsetenv("MANETQ_THREADS");
    outputs.push_back(cli_out(args));
    for (std::size_t i = 1; i < outputs.size(); ++i)
      o.check(!outputs[0].empty() && outputs[i] == outputs[0], "output differs for " + args[1] + "=" + args[2]);
  }
  o.detail = std::to_string(invocations.size()) + " invocations x 6 runs";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--only", only, "run a single criterion (1-6)")->check(CLI::Range(1, 6));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "design table reproduction", 1.0, design_table},
      {2, "exact identities", 10.0, exact_identities},
      {3, "Monte Carlo oracle agreement", 60.0, monte_carlo_agreement},
      {4, "asymptotic convergence", 30.0, asymptotic_convergence},
      {5, "Poisson structure at n=800, eta=1", 0.0, poisson_structure},
      {6, "determinism", 0.0, determinism},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0)
      o.check(secs < c.time_limit_s, "runtime " + fmt(secs) + " s exceeds " + fmt(c.time_limit_s) + " s");
    std::printf("%s criterion %d: %s (%s; %.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                o.detail.c_str(), secs);
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
