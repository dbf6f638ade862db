#pragma once

// Limit laws for large networks. Two regimes:
//   eta: n*rho - ln n -> eta  (connectedness, k-disconnection, reachability)
//   nu:  n*rho -> nu          (coverage, segmentation, vulnerability)
// Plain double precision throughout; exp(-e^{-eta}) underflows to 0 for
// eta below about -6.5 and that is the correct limit.

#include <cmath>
#include <cstdint>
#include <variant>

#include "manetq/errors.hpp"
#include "manetq/metric.hpp"
#include "manetq/params.hpp"

namespace manetq {

class AsymptoticRegime {
 public:
  struct Eta {
    double eta;
  };
  struct Nu {
    double nu;
  };

  static AsymptoticRegime eta(double eta) {
    if (!std::isfinite(eta)) throw InvalidParameter("eta must be finite");
    return AsymptoticRegime(Eta{eta});
  }
  static AsymptoticRegime nu(double nu) {
    if (!(nu > 0) || !std::isfinite(nu)) throw InvalidParameter("nu must be finite and positive");
    return AsymptoticRegime(Nu{nu});
  }

  bool is_eta() const noexcept { return std::holds_alternative<Eta>(v_); }
  bool is_nu() const noexcept { return std::holds_alternative<Nu>(v_); }
  double value() const noexcept { return is_eta() ? std::get<Eta>(v_).eta : std::get<Nu>(v_).nu; }

 private:
  explicit AsymptoticRegime(std::variant<Eta, Nu> v) : v_(v) {}
  std::variant<Eta, Nu> v_;
};

/// Poisson limit of P_DISC(k): e^{-eta k}/k! * exp(-e^{-eta}).
inline double asym_p_disc(std::uint64_t k, double eta) {
  const double mean = std::exp(-eta);
  if (k <= 170) {
    double term = std::exp(-mean);
    for (std::uint64_t i = 1; i <= k; ++i) term *= mean / static_cast<double>(i);
    return term;
  }
  const double kd = static_cast<double>(k);
  return std::exp(-eta * kd - std::lgamma(kd + 1.0) - mean);
}

/// 2x - (1+2x) e^{-1/x} with x = e^eta, written to avoid cancellation for large x.
inline double asym_reachability(double eta) {
  const double x = std::exp(eta);
  if (std::isinf(x)) return 1.0;
  if (x == 0.0) return 0.0;
  return -1.0 - (1.0 + 2.0 * x) * std::expm1(-1.0 / x);
}

namespace detail {

// Intensive limits, valid for nu >= 0.
inline double intensive_limit(MetricKind kind, double nu) {
  switch (kind.tag()) {
    case MetricKind::Tag::Coverage: return -std::expm1(-2.0 * nu);
    case MetricKind::Tag::Segmentation: return std::exp(-nu);
    case MetricKind::Tag::Vulnerability: return (nu - 1.0) * std::exp(-nu) + std::exp(-2.0 * nu);
    default: throw RegimeError(kind.name() + " is not an intensive parameter");
  }
}

}  // namespace detail

inline double asym_metric(MetricKind kind, const AsymptoticRegime& regime) {
  using T = MetricKind::Tag;
  const double x = regime.value();
  switch (kind.tag()) {
    case T::Connectedness:
    case T::Disconnection:
    case T::Reachability:
      if (!regime.is_eta())
        throw RegimeError(kind.name() + " is not intensive; it needs the eta regime (n rho - ln n -> eta)");
      if (kind.tag() == T::Connectedness) return std::exp(-std::exp(-x));
      if (kind.tag() == T::Disconnection) return asym_p_disc(kind.k(), x);
      return asym_reachability(x);
    case T::Coveredness:
      // 2 n rho - ln n diverges to -inf whenever n rho converges.
      if (regime.is_nu()) return 0.0;
      throw RegimeError(
          "coveredness needs eta computed from the doubled range; evaluate connectedness at "
          "eta = 2 n rho - ln n instead");
    case T::Coverage:
    case T::Segmentation:
    case T::Vulnerability:
      if (!regime.is_nu()) throw RegimeError(kind.name() + " is intensive; it needs the nu regime (n rho -> nu)");
      return detail::intensive_limit(kind, x);
  }
  throw RegimeError("unknown metric");
}

inline double nu_from_params(const SystemParams& params) {
  return (ExactRational(static_cast<long>(params.n())) * params.rho()).to_double();
}

inline double eta_from_params(const SystemParams& params) {
  return nu_from_params(params) - std::log(static_cast<double>(params.n()));
}

}  // namespace manetq
