#include <gtest/gtest.h>

#include <cmath>

#include "manetq/bounds.hpp"
#include "manetq/monte_carlo.hpp"
#include "test_support.hpp"

namespace manetq {
namespace {

SystemParams sp(std::uint64_t n, long p, long q) { return {n, ExactRational(p, q)}; }

ExactRational rationalize(double x) {
  return {mpz_class(std::to_string(std::llround(x * 1e6))), mpz_class(1000000)};
}

TEST(Bounds, Examples) {
  const auto b = p_disc_db_bounds(sp(2, 1, 4), 0);
  EXPECT_EQ(b.lower.value(), ExactRational(0));
  EXPECT_EQ(b.upper.value(), ExactRational(15, 16));
  EXPECT_GE(p_conn_db_n2(ExactRational(1, 4)).value(), b.lower.value());
  EXPECT_LE(p_conn_db_n2(ExactRational(1, 4)).value(), b.upper.value());

  const auto full = p_disc_db_bounds(sp(2, 1, 1), 0);
  EXPECT_EQ(full.lower.value(), ExactRational(1));
  EXPECT_EQ(full.upper.value(), ExactRational(1));

  const double rho = (std::log(500.0) + 2) / 500;
  const SystemParams big(500, rationalize(rho));
  const auto bb = p_disc_db_bounds(big, 0);
  EXPECT_LT((bb.upper.value() - bb.lower.value()).to_double(), 0.05);
}

TEST(Bounds, WidthExamples) {
  EXPECT_EQ(bounds_width(sp(1, 1, 2)), ExactRational(1));
  EXPECT_EQ(bounds_width(sp(2, 1, 4)), ExactRational(15, 16));
  EXPECT_LT(bounds_width(sp(1000, 1, 100)), ExactRational(1, 1000));
  EXPECT_EQ(bounds_width(sp(7, 3, 2)), ExactRational(0));
}

TEST(Bounds, UpperIsClampedAndOrdered) {
  for (std::uint64_t n = 1; n <= 12; ++n)
    for (long q = 2; q <= 9; ++q)
      for (std::uint64_t k = 0; k <= 3; ++k) {
        const auto b = p_disc_db_bounds(sp(n, 1, q), k);
        EXPECT_LE(b.lower.value(), b.upper.value());
        EXPECT_LE(b.upper.value(), ExactRational(1));
      }
}

TEST(Bounds, TwoNodeOracleContainment) {
  for (auto [p, q] : {std::pair{1L, 10L}, {1L, 4L}, {1L, 2L}, {3L, 4L}}) {
    const auto b = p_disc_db_bounds(sp(2, p, q), 0);
    const auto exact = p_conn_db_n2(ExactRational(p, q)).value();
    EXPECT_LE(b.lower.value(), exact);
    EXPECT_LE(exact, b.upper.value());
  }
}

// Two nodes on a line have one interior gap, so exactly two interior
// disconnections is impossible, while both circular gaps can be large.
TEST(Bounds, PeriodicValueIsNotALowerBoundBeyondKZero) {
  const auto params = sp(2, 1, 4);
  EXPECT_EQ(p_disc_pb(params, 2).value(), ExactRational(1, 2));
  EXPECT_EQ(p_disc_db_bounds(params, 2).lower.value(), ExactRational(0));
}

TEST(Bounds, WidthShrinksAlongEtaSequence) {
  ExactRational prev(2);
  for (std::uint64_t n : {100UL, 1000UL, 5000UL}) {
    const double rho = (std::log(static_cast<double>(n)) + 1) / static_cast<double>(n);
    const SystemParams p(n, rationalize(rho));
    const auto w = bounds_width(p);
    EXPECT_LT(w, prev) << n;
    prev = w;
  }
}

TEST(Bounds, MonteCarloSandwich) {
  for (std::uint64_t n : {2UL, 5UL, 20UL, 80UL, 200UL}) {
    for (auto [p, q] : {std::pair{1L, 20L}, {1L, 10L}, {1L, 4L}}) {
      const SystemParams params = sp(n, p, q);
      const auto est = run(TrialConfig{.params = params, .boundary = Boundary::Disconnected, .trials = 20000,
                                       .seed = 11, .max_disc_k = 3});
      for (std::uint64_t k = 0; k <= 3; ++k) {
        const auto b = p_disc_db_bounds(params, k);
        const Estimate& e = est.at(MetricKind::disconnection(k));
        const double tol = 4 * testing_support::effective_stderr(e);
        EXPECT_GE(e.mean, b.lower.to_double() - tol) << "n=" << n << " rho=" << p << "/" << q << " k=" << k;
        EXPECT_LE(e.mean, b.upper.to_double() + tol) << "n=" << n << " rho=" << p << "/" << q << " k=" << k;
      }
    }
  }
}

}  // namespace
}  // namespace manetq
