#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational numbers on top of GMP.
 *
 * ExactRational is always kept in lowest terms with a positive
 * denominator. No operation in this file rounds; conversion to double and
 * decimal rendering are explicit and presentation-only.
 *
 * Textual grammar (shared by every CLI flag taking rho, r, l or p):
 *
 *     rational := sign? digits "/" digits
 *               | sign? digits ("." digits?)? exponent?
 *               | sign? "." digits exponent?
 *     exponent := ("e" | "E") sign? digits
 *
 * Decimals are read as fractions over a power of ten ("0.03" is exactly
 * 3/100), never through binary floating point.
 */

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstring>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "manetq/errors.hpp"

namespace manetq {

class ExactRational {
 public:
  ExactRational() = default;

  ExactRational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  ExactRational(int value) : v_(static_cast<long>(value)) {}  // NOLINT
  explicit ExactRational(const mpz_class& value) : v_(value) {}
  explicit ExactRational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

  ExactRational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw InvalidParameter("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  ExactRational(long num, long den) : ExactRational(mpz_class(num), mpz_class(den)) {}

  /// Exact value of a finite double (every finite double is a dyadic rational).
  static ExactRational from_double(double x) {
    if (!std::isfinite(x)) throw InvalidParameter("non-finite value cannot be made exact");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);
    return ExactRational(std::move(q));
  }

  static ExactRational parse(std::string_view text);

  const mpq_class& raw() const noexcept { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  int sign() const noexcept { return sgn(v_); }
  bool is_zero() const noexcept { return sgn(v_) == 0; }
  bool is_integer() const noexcept { return v_.get_den() == 1; }

  /// Nearest double (ties to even). get_d alone truncates toward zero.
  double to_double() const {
    const double d = v_.get_d();
    if (sgn(v_) == 0 || !std::isfinite(d)) return d;
    const double e = std::nextafter(d, sgn(v_) > 0 ? HUGE_VAL : -HUGE_VAL);
    if (!std::isfinite(e)) return d;
    const int c = cmp(abs(v_ - mpq_class(d)), abs(mpq_class(e) - v_));
    if (c < 0) return d;
    if (c > 0) return e;
    std::int64_t bits = 0;
    std::memcpy(&bits, &d, sizeof bits);
    return (bits & 1) == 0 ? d : e;
  }

  /// "num/den", always with the denominator (so 1 renders as "1/1").
  std::string to_string() const { return v_.get_num().get_str() + "/" + v_.get_den().get_str(); }

  /// Decimal rendering with `digits` significant digits. Lossy.
  std::string to_decimal(int digits = 12) const {
    if (is_zero()) return "0";
    mpf_class f(v_, 512);
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
    return std::string(buf.data());
  }

  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  mpz_class ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  ExactRational reciprocal() const {
    if (is_zero()) throw DomainError("reciprocal of zero");
    return ExactRational(v_.get_den(), v_.get_num());
  }

  ExactRational operator-() const { return ExactRational(mpq_class(-v_)); }

  ExactRational& operator+=(const ExactRational& o) { v_ += o.v_; return *this; }
  ExactRational& operator-=(const ExactRational& o) { v_ -= o.v_; return *this; }
  ExactRational& operator*=(const ExactRational& o) { v_ *= o.v_; return *this; }
  ExactRational& operator/=(const ExactRational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

/// base^exp for any integer exponent; negative exponents need a nonzero base.
/// 0^0 is 1.
inline ExactRational pow(const ExactRational& base, long exp) {
  if (exp < 0) return pow(base.reciprocal(), -exp);
  mpz_class num, den;
  const auto e = static_cast<unsigned long>(exp);
  mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), e);
  // Powers of coprime integers stay coprime: already canonical.
  mpq_class q;
  mpz_swap(mpq_numref(q.get_mpq_t()), num.get_mpz_t());
  mpz_swap(mpq_denref(q.get_mpq_t()), den.get_mpz_t());
  return ExactRational(std::move(q));
}

inline mpz_class pow(const mpz_class& base, unsigned long exp) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace detail

inline ExactRational ExactRational::parse(std::string_view text) {
  auto fail = [&]() -> ParseError {
    return ParseError("malformed rational '" + std::string(text) + "'");
  };
  std::string_view s = text;
  if (s.empty()) throw fail();

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const auto num = s.substr(0, slash);
    const auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) throw fail();
    mpz_class d(std::string(den), 10);
    if (d == 0) throw fail();
    mpz_class n(std::string(num), 10);
    if (negative) n = -n;
    return ExactRational(n, d);
  }

  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view ex = s.substr(e + 1);
    s = s.substr(0, e);
    bool eneg = false;
    if (!ex.empty() && (ex.front() == '+' || ex.front() == '-')) {
      eneg = ex.front() == '-';
      ex.remove_prefix(1);
    }
    if (!detail::all_digits(ex) || ex.size() > 6) throw fail();
    exponent = std::stol(std::string(ex));
    if (eneg) exponent = -exponent;
  }

  std::string_view int_part = s;
  std::string_view frac_part;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw fail();
  if (!int_part.empty() && !detail::all_digits(int_part)) throw fail();
  if (!frac_part.empty() && !detail::all_digits(frac_part)) throw fail();

  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class n(digits, 10);
  if (negative) n = -n;
  exponent -= static_cast<long>(frac_part.size());
  const mpz_class scale = pow(mpz_class(10), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? ExactRational(n, scale) : ExactRational(mpz_class(n * scale), mpz_class(1));
}

}  // namespace manetq
