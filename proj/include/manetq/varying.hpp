#pragma once

// Varying node number: each of n devices is switched on independently with
// probability p, so expectations mix binomially over the active count n'.

#include <cstdint>
#include <span>
#include <vector>

#include "manetq/asymptotics.hpp"
#include "manetq/exact.hpp"

namespace manetq {

class OnProbability {
 public:
  explicit OnProbability(ExactRational p) : p_(std::move(p)) {
    if (p_ < ExactRational(0) || p_ > ExactRational(1)) throw InvalidParameter("on-probability outside [0,1]");
  }

  const ExactRational& value() const noexcept { return p_; }

 private:
  ExactRational p_;
};

/// sum_{n'=0}^{n} C(n,n') p^n' (1-p)^(n-n') values[n'].
inline ExactRational mix_binomial(std::span<const ExactRational> values, std::uint64_t n, const OnProbability& p) {
  if (values.size() != n + 1)
    throw InvalidParameter("mix_binomial needs n+1 = " + std::to_string(n + 1) + " values, got " +
                           std::to_string(values.size()));
  const ExactRational& on = p.value();
  const ExactRational off = ExactRational(1) - on;
  ExactRational acc(0);
  for (std::uint64_t k = 0; k <= n; ++k) {
    if (values[k].is_zero()) continue;
    const ExactRational weight = ExactRational(binomial(n, k)) * pow(on, static_cast<long>(k)) *
                                 pow(off, static_cast<long>(n - k));
    acc += weight * values[k];
  }
  return acc;
}

/// Closed form (1 - p rho)^n / (1 - rho). Keeps the n' = 0 term as the
/// continuation (1-rho)^(-1), so it is not a probability for small p*n.
inline ExactRational q_segmentation_vn(const SystemParams& params, const OnProbability& p) {
  const ExactRational one(1);
  if (params.rho() >= one) throw DomainError("varying-node segmentation needs rho < 1");
  return pow(one - p.value() * params.rho(), static_cast<long>(params.n())) / (one - params.rho());
}

/// Intensive limit at the thinned density p*nu.
inline double asym_metric_vn(MetricKind kind, double nu, double p) {
  if (!kind.intensive()) throw RegimeError(kind.name() + " has no varying-node limit");
  if (!(p >= 0 && p <= 1)) throw InvalidParameter("on-probability outside [0,1]");
  if (!(nu >= 0) || !std::isfinite(nu)) throw InvalidParameter("nu must be finite and non-negative");
  return detail::intensive_limit(kind, p * nu);
}

// How per-n' metric values are filled in for n' in {0, 1}.
enum class ValueConvention {
  Formula,     // analytic continuation of the closed forms
  Simulation,  // what the Monte Carlo sampler records
};

/// Per-n' values of `kind` for n' = 0..n at range rho, ready for mix_binomial.
///
/// Formula convention: segmentation (1-rho)^(n'-1), coverage 1-(1-2rho)^n',
/// connectedness from the inclusion-exclusion sum; other metrics throw.
/// Simulation convention: n' = 0 gives 0 everywhere; n' = 1 gives
/// segmentation 1, coverage min(1, 2rho) and 0 otherwise; n' >= 2 is exact.
inline std::vector<ExactRational> metric_values(MetricKind kind, std::uint64_t n, const ExactRational& rho,
                                                ValueConvention convention, const ExactOptions& opts = {}) {
  using T = MetricKind::Tag;
  const ExactRational one(1);
  std::vector<ExactRational> out;
  out.reserve(n + 1);

  auto exact_at = [&](std::uint64_t m) -> ExactRational {
    const SystemParams sp(m, rho);
    switch (kind.tag()) {
      case T::Connectedness: return p_conn_pb(sp).value();
      case T::Coveredness: return q_coveredness_exact(sp).value();
      case T::Coverage: return q_coverage_exact(sp).value();
      case T::Segmentation: return q_segmentation_exact(sp).value();
      case T::Vulnerability: return q_vulnerability_exact(sp).value();
      case T::Reachability: return q_reachability_exact(sp, opts).value();
      case T::Disconnection: return p_disc_pb(sp, kind.k()).value();
    }
    throw DomainError("unknown metric");
  };

  for (std::uint64_t m = 0; m <= n; ++m) {
    if (convention == ValueConvention::Formula) {
      switch (kind.tag()) {
        case T::Segmentation:
          if (rho >= one) throw DomainError("formula convention needs rho < 1");
          out.push_back(pow(one - rho, static_cast<long>(m) - 1));
          break;
        case T::Coverage:
          out.push_back(rho >= ExactRational(1, 2) ? (m == 0 ? ExactRational(0) : one)
                                                   : one - pow(one - ExactRational(2) * rho, static_cast<long>(m)));
          break;
        case T::Connectedness:
          // The sum at n' = 0 reduces to its j = 0 term.
          out.push_back(m == 0 ? one : exact_at(m));
          break;
        default:
          throw DomainError("no formula-convention values for " + kind.name());
      }
      continue;
    }
    if (m == 0) {
      out.emplace_back(0);
    } else if (m == 1) {
      switch (kind.tag()) {
        case T::Segmentation: out.push_back(one); break;
        case T::Coverage: out.push_back(std::min(one, ExactRational(2) * rho)); break;
        case T::Disconnection: out.push_back(kind.k() == 1 ? one : ExactRational(0)); break;
        default: out.emplace_back(0); break;
      }
    } else {
      out.push_back(exact_at(m));
    }
  }
  return out;
}

}  // namespace manetq
