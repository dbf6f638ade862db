#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "manetq/errors.hpp"
#include "manetq/rational.hpp"

namespace manetq {

// Node count n and normalized radio range rho = r / l. After scaling these
// are the only parameters of the model.
class SystemParams {
 public:
  SystemParams(std::uint64_t n, ExactRational rho) : n_(n), rho_(std::move(rho)) {
    if (n_ < 1) throw InvalidParameter("node count must be at least 1");
    if (rho_.sign() <= 0) throw InvalidParameter("normalized range must be positive");
  }

  std::uint64_t n() const noexcept { return n_; }
  const ExactRational& rho() const noexcept { return rho_; }

  SystemParams with_rho(ExactRational rho) const { return {n_, std::move(rho)}; }
  SystemParams with_n(std::uint64_t n) const { return {n, rho_}; }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;

 private:
  std::uint64_t n_;
  ExactRational rho_;
};

// Radio range r and system length l, in the same (arbitrary) unit.
class PhysicalParams {
 public:
  PhysicalParams(ExactRational r, ExactRational l) : r_(std::move(r)), l_(std::move(l)) {
    if (r_.sign() <= 0 || l_.sign() <= 0)
      throw InvalidParameter("radio range and system length must be positive");
  }

  static PhysicalParams from_double(double r, double l) {
    if (!std::isfinite(r) || !std::isfinite(l))
      throw InvalidParameter("radio range and system length must be finite");
    return {ExactRational::from_double(r), ExactRational::from_double(l)};
  }

  const ExactRational& r() const noexcept { return r_; }
  const ExactRational& l() const noexcept { return l_; }

  ExactRational rho() const { return r_ / l_; }

 private:
  ExactRational r_;
  ExactRational l_;
};

inline SystemParams normalize(const PhysicalParams& p, std::uint64_t n) { return {n, p.rho()}; }

// floor(1/rho), exactly.
inline mpz_class gauss_bracket_inv_exact(const ExactRational& rho) {
  if (rho.sign() <= 0) throw InvalidParameter("normalized range must be positive");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), rho.raw().get_den_mpz_t(), rho.raw().get_num_mpz_t());
  return q;
}

inline std::uint64_t gauss_bracket_inv(const ExactRational& rho) {
  const mpz_class m = gauss_bracket_inv_exact(rho);
  if (m > mpz_class(std::to_string(std::numeric_limits<std::uint64_t>::max())))
    throw DomainError("floor(1/rho) does not fit in 64 bits");
  return std::stoull(m.get_str());
}

}  // namespace manetq
