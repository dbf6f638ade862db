#pragma once

/**
 * @file exact.hpp
 * @brief Exact evaluation of disconnection probabilities and quality
 * parameters for n uniform nodes on the unit circle (periodic boundary).
 *
 * Every sum here is an alternating inclusion-exclusion sum and is evaluated
 * in exact arithmetic. With rho = p/q in lowest terms,
 *
 *     (1 - j*rho)^(n-1) = (q - j*p)^(n-1) / q^(n-1),
 *
 * so each sum is accumulated as a big integer over the common denominator
 * q^(n-1) and divided once at the end.
 */

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "manetq/errors.hpp"
#include "manetq/params.hpp"
#include "manetq/rational.hpp"

namespace manetq {

// Exact probability (or probability-like expectation) in [0, 1].
class ExactProb {
 public:
  explicit ExactProb(ExactRational value) : v_(std::move(value)) {
    if (v_ < ExactRational(0) || v_ > ExactRational(1))
      throw InvalidParameter("probability outside [0,1]: " + v_.to_string());
  }

  static ExactProb zero() { return ExactProb(ExactRational(0)); }
  static ExactProb one() { return ExactProb(ExactRational(1)); }

  const ExactRational& value() const noexcept { return v_; }
  double to_double() const { return v_.to_double(); }

  friend bool operator==(const ExactProb&, const ExactProb&) = default;

 private:
  ExactRational v_;
};

struct ExactOptions {
  // Largest n accepted by q_reachability_exact; beyond it use the
  // asymptotic formula.
  std::uint64_t reachability_max_n = 5000;
};

namespace detail {

struct SplitRange {
  mpz_class p;  // numerator of rho
  mpz_class q;  // denominator of rho
};

inline SplitRange split(const ExactRational& rho) { return {rho.numerator(), rho.denominator()}; }

// min(floor(q / p), cap)
inline unsigned long summation_limit(const mpz_class& p, const mpz_class& q, unsigned long cap) {
  mpz_class m;
  mpz_fdiv_q(m.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  if (m >= cap) return cap;
  return m.get_ui();
}

// C(n,j) * (q - j*p)^(n-1) for j = 0..J. The base is non-negative for j <= J.
inline std::vector<mpz_class> inclusion_terms(unsigned long n, const SplitRange& r, unsigned long J) {
  std::vector<mpz_class> t;
  t.reserve(J + 1);
  mpz_class c = 1;  // C(n, j)
  for (unsigned long j = 0; j <= J; ++j) {
    t.push_back(c * pow(mpz_class(r.q - r.p * j), n - 1));
    c = c * (n - j) / (j + 1);
  }
  return t;
}

inline ExactProb as_prob(const mpz_class& num, const mpz_class& den) {
  return ExactProb(ExactRational(num, den));
}

inline void require_vuln_reach_domain(const SystemParams& params, const char* what) {
  if (params.n() < 2 || params.rho() >= ExactRational(1, 2))
    throw DomainError(std::string(what) + " is only defined for n >= 2 and rho < 1/2");
}

}  // namespace detail

/// Probability that exactly k of the n circular next-neighbour gaps are >= rho.
inline ExactProb p_disc_pb(const SystemParams& params, std::uint64_t k) {
  const unsigned long n = params.n();
  if (k > n) return ExactProb::zero();
  const auto r = detail::split(params.rho());
  const unsigned long J = detail::summation_limit(r.p, r.q, n);
  if (k > J) return ExactProb::zero();

  mpz_class acc = 0;
  mpz_class c_jk = 1;                 // C(j, k)
  mpz_class c_nj = binomial(n, k);    // C(n, j)
  for (unsigned long j = k; j <= J; ++j) {
    mpz_class term = c_jk * c_nj * pow(mpz_class(r.q - r.p * j), n - 1);
    if ((j - k) % 2 == 0)
      acc += term;
    else
      acc -= term;
    c_jk = c_jk * (j + 1) / (j + 1 - k);
    c_nj = c_nj * (n - j) / (j + 1);
  }
  return detail::as_prob(acc, pow(r.q, n - 1));
}

/// P_DISC-PB(k) for every k = 0..n at once (index k).
inline std::vector<ExactProb> p_disc_pb_all(const SystemParams& params) {
  const unsigned long n = params.n();
  const auto r = detail::split(params.rho());
  const unsigned long J = detail::summation_limit(r.p, r.q, n);
  const auto t = detail::inclusion_terms(n, r, J);
  const mpz_class den = pow(r.q, n - 1);

  std::vector<ExactProb> out;
  out.reserve(n + 1);
  for (unsigned long k = 0; k <= n; ++k) {
    mpz_class acc = 0;
    mpz_class c_jk = 1;
    for (unsigned long j = k; j <= J; ++j) {
      if ((j - k) % 2 == 0)
        acc += c_jk * t[j];
      else
        acc -= c_jk * t[j];
      c_jk = c_jk * (j + 1) / (j + 1 - k);
    }
    out.push_back(detail::as_prob(acc, den));
  }
  return out;
}

/// Strong connectedness under periodic boundaries.
inline ExactProb p_conn_pb(const SystemParams& params) { return p_disc_pb(params, 0); }

/// Expected covered fraction of the circle.
inline ExactProb q_coverage_exact(const SystemParams& params) {
  const ExactRational& rho = params.rho();
  if (rho >= ExactRational(1, 2)) return ExactProb::one();
  return ExactProb(ExactRational(1) - pow(ExactRational(1) - ExactRational(2) * rho, static_cast<long>(params.n())));
}

/// Probability that the doubled-range discs cover the circle; equals
/// connectedness at range 2*rho.
inline ExactProb q_coveredness_exact(const SystemParams& params) {
  return p_conn_pb(params.with_rho(ExactRational(2) * params.rho()));
}

/// Expected (number of segments) / n, counting the strongly connected
/// configuration as zero segments.
inline ExactProb q_segmentation_exact(const SystemParams& params) {
  const auto n = static_cast<long>(params.n());
  if (n == 1) return ExactProb::one();
  if (params.rho() >= ExactRational(1)) return ExactProb::zero();
  return ExactProb(pow(ExactRational(1) - params.rho(), n - 1));
}

/// Expected fraction of nodes whose removal splits their segment.
inline ExactProb q_vulnerability_exact(const SystemParams& params) {
  detail::require_vuln_reach_domain(params, "vulnerability");
  const auto n = static_cast<long>(params.n());
  const ExactRational& rho = params.rho();
  const ExactRational one(1);
  return ExactProb((ExactRational(n) * rho - one) * pow(one - rho, n - 2) +
                   pow(one - ExactRational(2) * rho, n - 1));
}

namespace detail {

// sum_{b=1}^{n-1} b(b-1) C(b-1, j), collapsed by the hockey-stick identity.
inline mpz_class reach_weight(unsigned long n, unsigned long j) {
  return mpz_class((j + 1) * (j + 2)) * binomial(n + 1, j + 3) - mpz_class(2 * (j + 1)) * binomial(n, j + 2);
}

}  // namespace detail

/// Expected average fraction of nodes reachable (multi-hop) from a node.
inline ExactProb q_reachability_exact(const SystemParams& params, const ExactOptions& opts = {}) {
  detail::require_vuln_reach_domain(params, "reachability");
  const unsigned long n = params.n();
  if (n > opts.reachability_max_n)
    throw DomainError("exact reachability limited to n <= " + std::to_string(opts.reachability_max_n) +
                      "; use the asymptotic formula for larger networks");

  const auto r = detail::split(params.rho());
  const unsigned long J = detail::summation_limit(r.p, r.q, n);
  const auto t = detail::inclusion_terms(n, r, J);

  // P_CONN-PB and P_DISC-PB(1), numerators over q^(n-1).
  mpz_class conn = 0, disc1 = 0;
  for (unsigned long j = 0; j <= J; ++j) {
    if (j % 2 == 0) {
      conn += t[j];
      disc1 -= j * t[j];
    } else {
      conn -= t[j];
      disc1 += j * t[j];
    }
  }

  // Segment term. rho' = rho/(1-2rho) = p/(q-2p), and
  // (1-2rho)^(n-1) (1-j rho')^(n-1) = (q-(j+2)p)^(n-1) / q^(n-1).
  const mpz_class q2 = r.q - 2 * r.p;
  unsigned long Jp = detail::summation_limit(r.p, q2, n >= 2 ? n - 2 : 0);
  mpz_class seg = 0;
  for (unsigned long j = 0; j <= Jp; ++j) {
    mpz_class term = detail::reach_weight(n, j) * pow(mpz_class(r.q - r.p * (j + 2)), n - 1);
    if (j % 2 == 0)
      seg += term;
    else
      seg -= term;
  }

  // conn + (n-1)/n disc1 + seg/n, all over q^(n-1).
  const mpz_class num = n * conn + (n - 1) * disc1 + seg;
  const mpz_class den = mpz_class(n) * pow(r.q, n - 1);
  return detail::as_prob(num, den);
}

/// Connectedness of two uniform nodes on [0,1] without wrap-around.
inline ExactProb p_conn_db_n2(const ExactRational& rho) {
  if (rho.sign() <= 0 || rho > ExactRational(1))
    throw DomainError("p_conn_db_n2 requires 0 < rho <= 1");
  return ExactProb(ExactRational(2) * rho - rho * rho);
}

/// Expected coverage of the unit d-cube (d = 1, 2, 3) by n discs of radius
/// rho, neglecting boundary effects: 1 - (1 - c_d rho^d)^n.
inline double q_coverage_ddim(std::uint64_t n, double rho, int d) {
  if (n < 1 || !(rho > 0) || !std::isfinite(rho)) throw InvalidParameter("need n >= 1 and finite rho > 0");
  double c = 0;
  switch (d) {
    case 1: c = 2.0; break;
    case 2: c = std::numbers::pi; break;
    case 3: c = 4.0 * std::numbers::pi / 3.0; break;
    default: throw InvalidParameter("dimension must be 1, 2 or 3");
  }
  const double vol = c * std::pow(rho, d);
  if (vol > 1.0) throw DomainError("disc volume exceeds the system volume");
  return -std::expm1(static_cast<double>(n) * std::log1p(-vol));
}

}  // namespace manetq
