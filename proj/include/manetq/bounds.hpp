#pragma once

#include <algorithm>
#include <cstdint>

#include "manetq/exact.hpp"

namespace manetq {

// Two-sided enclosure of a disconnected-boundary probability.
struct ProbBounds {
  ExactProb lower;
  ExactProb upper;
};

/// P(S) = (1-rho)^n + n rho (1-rho)^(n-1): probability that the wrap-around
/// gap is >= rho. Zero for rho >= 1.
inline ExactRational bounds_width(const SystemParams& params) {
  const ExactRational& rho = params.rho();
  const ExactRational one(1);
  if (rho >= one) return ExactRational(0);
  const auto n = static_cast<long>(params.n());
  return pow(one - rho, n) + ExactRational(n) * rho * pow(one - rho, n - 1);
}

/// Bounds on P_DISC-DB(k), the probability that exactly k of the n-1
/// interior gaps on [0,1] are >= rho.
///
/// The disconnected event splits as {PB = k, not S} + {PB = k+1, S}, so
///   k = 0:  P_PB(0)                 <= P_DB(0) <= P_PB(0) + P(S)
///   k >= 1: max(0, P_PB(k) - P(S))  <= P_DB(k) <= P_PB(k) + P(S)
/// For k >= 1 the event {PB = k, S} is not empty, so P_PB(k) alone is not
/// a lower bound (n = 2, k = 2 has P_DB = 0 < P_PB).
inline ProbBounds p_disc_db_bounds(const SystemParams& params, std::uint64_t k) {
  const ExactProb pb = p_disc_pb(params, k);
  const ExactRational width = bounds_width(params);
  if (width.is_zero()) return {pb, pb};

  const ExactRational zero(0), one(1);
  ExactRational lower = pb.value();
  if (k >= 1) lower = std::max(zero, lower - width);
  const ExactRational upper = std::min(one, pb.value() + width);
  return {ExactProb(lower), ExactProb(upper)};
}

}  // namespace manetq
