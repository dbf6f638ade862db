#pragma once

/**
 * @file solvers.hpp
 * @brief Minimum node count for a quality target, from the asymptotic laws.
 *
 * Each metric is inverted to a critical value of its scaling variable
 * (eta for connectedness and reachability, nu for the intensive ones),
 * turned into a real node count, and then settled on an integer by
 * stepping from the ceiling of the real root with forward evaluation of
 * the same asymptotic formula. The stepping absorbs root-finder tolerance.
 */

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "manetq/asymptotics.hpp"
#include "manetq/errors.hpp"
#include "manetq/metric.hpp"
#include "manetq/params.hpp"

namespace manetq {

enum class Direction { AtLeast, AtMost };

class QualityTarget {
 public:
  QualityTarget(MetricKind kind, double threshold) : kind_(kind), threshold_(threshold) {
    if (!(threshold > 0 && threshold < 1)) throw InvalidParameter("quality threshold must lie in (0,1)");
    switch (kind.tag()) {
      case MetricKind::Tag::Connectedness:
      case MetricKind::Tag::Coverage:
      case MetricKind::Tag::Reachability: direction_ = Direction::AtLeast; break;
      case MetricKind::Tag::Segmentation:
      case MetricKind::Tag::Vulnerability: direction_ = Direction::AtMost; break;
      default: throw InvalidParameter("no node-count solver for " + kind.name());
    }
  }

  MetricKind kind() const noexcept { return kind_; }
  double threshold() const noexcept { return threshold_; }
  Direction direction() const noexcept { return direction_; }

  bool met_by(double value) const noexcept {
    return direction_ == Direction::AtLeast ? value >= threshold_ : value <= threshold_;
  }

  std::string describe() const {
    std::ostringstream os;
    os << kind_.name() << (direction_ == Direction::AtLeast ? ">=" : "<=") << threshold_;
    return os.str();
  }

 private:
  MetricKind kind_;
  double threshold_;
  Direction direction_ = Direction::AtLeast;
};

struct SolveResult {
  std::uint64_t n_min = 0;
  double auxiliary = 0;  // solved eta, nu, or x = e^eta (reachability)
  double achieved = 0;   // asymptotic metric value at n_min
};

namespace detail {

// Bisection on a sign change of f over [lo, hi]; runs to machine precision.
template <class F>
double bisect(F&& f, double lo, double hi) {
  const bool lo_negative = f(lo) < 0;
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((f(mid) < 0) == lo_negative)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

struct VulnerabilityPeak {
  double nu;
  double value;
};

/// Maximum of nu -> (nu-1)e^{-nu} + e^{-2nu}, located on the sign change
/// of its derivative (2-nu)e^{-nu} - 2e^{-2nu} inside [1, 2].
inline VulnerabilityPeak vulnerability_peak() {
  const double nu = detail::bisect([](double v) { return (2.0 - v) * std::exp(-v) - 2.0 * std::exp(-2.0 * v); },
                                   1.0, 2.0);
  return {nu, detail::intensive_limit(MetricKind::vulnerability(), nu)};
}

/// Larger root of n rho - ln n = eta (the branch n >= 1/rho).
inline double solve_eta_for_n(double eta, double rho) {
  if (!(rho > 0) || !std::isfinite(rho)) throw InvalidParameter("rho must be finite and positive");
  if (!std::isfinite(eta)) throw InvalidParameter("eta must be finite");
  auto f = [&](double n) { return n * rho - std::log(n) - eta; };
  const double tangent = 1.0 / rho;
  const double fmin = 1.0 + std::log(rho);
  const double tol = 1e-12 * std::max(1.0, std::abs(fmin));
  if (eta < fmin - tol)
    throw Infeasible("eta = " + std::to_string(eta) + " is below the minimum of n rho - ln n", fmin);
  if (eta <= fmin + tol) return tangent;
  double hi = 2.0 * tangent;
  while (f(hi) < 0) hi *= 2.0;
  return detail::bisect(f, tangent, hi);
}

/// x = e^eta solving 2x - (1+2x) e^{-1/x} = target.
inline double solve_reachability_x(double target) {
  if (!(target > 0 && target < 1)) throw InvalidParameter("reachability target must lie in (0,1)");
  constexpr double lo = -60.0, hi = 60.0;
  if (asym_reachability(hi) < target) throw Infeasible("reachability target too close to 1", asym_reachability(hi));
  return std::exp(detail::bisect([&](double eta) { return asym_reachability(eta) - target; }, lo, hi));
}

/// Greater nu with (nu-1)e^{-nu} + e^{-2nu} = target.
inline double solve_vulnerability_nu(double target) {
  const auto peak = vulnerability_peak();
  if (!(target > 0) || target >= peak.value)
    throw Infeasible("vulnerability target " + std::to_string(target) + " is not below the peak", peak.value);
  auto f = [&](double nu) { return detail::intensive_limit(MetricKind::vulnerability(), nu) - target; };
  double hi = peak.nu + 50.0;
  while (f(hi) > 0) hi *= 2.0;
  return detail::bisect(f, peak.nu, hi);
}

inline SolveResult min_nodes(const QualityTarget& target, const PhysicalParams& phys) {
  if (phys.r() >= phys.l()) throw DomainError("node-count solver needs r < l");
  const double rho = phys.rho().to_double();
  const MetricKind kind = target.kind();
  const double t = target.threshold();

  SolveResult res;
  double n_real = 0;
  std::uint64_t n_floor = 1;  // smallest n on the admissible branch

  auto eta_at = [&](std::uint64_t n) { return static_cast<double>(n) * rho - std::log(static_cast<double>(n)); };
  auto nu_at = [&](std::uint64_t n) { return static_cast<double>(n) * rho; };
  auto value_at = [&](std::uint64_t n) {
    return kind.intensive() ? asym_metric(kind, AsymptoticRegime::nu(nu_at(n)))
                            : asym_metric(kind, AsymptoticRegime::eta(eta_at(n)));
  };

  switch (kind.tag()) {
    case MetricKind::Tag::Connectedness:
    case MetricKind::Tag::Reachability: {
      double eta = 0;
      if (kind.tag() == MetricKind::Tag::Connectedness) {
        eta = -std::log(-std::log(t));
        res.auxiliary = eta;
      } else {
        res.auxiliary = solve_reachability_x(t);
        eta = std::log(res.auxiliary);
      }
      n_floor = static_cast<std::uint64_t>(std::ceil(1.0 / rho));
      n_real = eta <= 1.0 + std::log(rho) ? 1.0 / rho : solve_eta_for_n(eta, rho);
      break;
    }
    case MetricKind::Tag::Coverage:
      res.auxiliary = -std::log1p(-t) / 2.0;
      n_real = res.auxiliary / rho;
      break;
    case MetricKind::Tag::Segmentation:
      res.auxiliary = -std::log(t);
      n_real = res.auxiliary / rho;
      break;
    case MetricKind::Tag::Vulnerability: {
      res.auxiliary = solve_vulnerability_nu(t);
      n_real = res.auxiliary / rho;
      n_floor = static_cast<std::uint64_t>(std::ceil(vulnerability_peak().nu / rho));
      break;
    }
    default: throw InvalidParameter("no node-count solver for " + kind.name());
  }

  std::uint64_t n = std::max<std::uint64_t>({1, n_floor, static_cast<std::uint64_t>(std::ceil(n_real))});
  while (n > n_floor && n > 1 && target.met_by(value_at(n - 1))) --n;
  while (!target.met_by(value_at(n))) ++n;
  res.n_min = n;
  res.achieved = value_at(n);
  return res;
}

}  // namespace manetq
