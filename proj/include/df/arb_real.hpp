#pragma once

// Fixed-precision binary floating point on top of GMP integers.
//
// A nonzero ArbReal is sign * mantissa * 2^exponent with the mantissa holding
// exactly `precision` bits. Every operation rounds once, to nearest with ties
// to even, into the precision it was asked for. There is no NaN or infinity;
// out-of-domain arguments throw.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "df/errors.hpp"

namespace df {

using Bits = std::uint64_t;

class ArbReal {
 public:
  /// Zero at the minimum precision.
  ArbReal() = default;

  static ArbReal zero(Bits prec);
  static ArbReal from_integer(const mpz_class& value, Bits prec);
  static ArbReal from_int(long value, Bits prec) { return from_integer(mpz_class(value), prec); }
  static ArbReal from_rational(const mpq_class& value, Bits prec);
  /// Round sign * magnitude * 2^exp to `prec` bits. `sticky` marks a nonzero
  /// tail below the last bit of `magnitude` (used for inexact quotients/roots).
  static ArbReal from_scaled(int sign, mpz_class magnitude, std::int64_t exp, Bits prec,
                             bool sticky = false);

  int sign() const noexcept { return sign_; }
  bool is_zero() const noexcept { return sign_ == 0; }
  const mpz_class& mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  Bits precision() const noexcept { return precision_; }

  /// Exponent of the least significant mantissa bit; the value of one ulp is
  /// 2^ulp_exponent().
  std::int64_t ulp_exponent() const noexcept { return exponent_; }
  /// floor(log2|x|) for nonzero x.
  std::int64_t top_exponent() const;

  ArbReal rounded(Bits prec) const;
  ArbReal abs() const;
  ArbReal operator-() const;
  /// Exact scaling by 2^k.
  ArbReal mul_2exp(std::int64_t k) const;

  /// Approximate conversions for diagnostics and slope fitting; never used to
  /// decide a digit.
  double to_double() const;
  double log2_abs() const;
  double log10_abs() const;

  friend ArbReal operator+(const ArbReal& a, const ArbReal& b);
  friend ArbReal operator-(const ArbReal& a, const ArbReal& b);
  friend ArbReal operator*(const ArbReal& a, const ArbReal& b);
  friend ArbReal operator/(const ArbReal& a, const ArbReal& b);

  friend std::strong_ordering operator<=>(const ArbReal& a, const ArbReal& b);
  /// Value equality; precision is not compared.
  friend bool operator==(const ArbReal& a, const ArbReal& b) { return (a <=> b) == 0; }

 private:
  int sign_ = 0;
  mpz_class mantissa_ = 0;
  std::int64_t exponent_ = 0;
  Bits precision_ = 2;
};

ArbReal add(const ArbReal& a, const ArbReal& b, Bits prec);
ArbReal sub(const ArbReal& a, const ArbReal& b, Bits prec);
ArbReal mul(const ArbReal& a, const ArbReal& b, Bits prec);
ArbReal div(const ArbReal& a, const ArbReal& b, Bits prec);

/// Correctly rounded num/den.
ArbReal real_from_ratio(const mpz_class& num, const mpz_class& den, Bits prec);

/// k-th root, correctly rounded to the precision of x.
ArbReal nth_root(const ArbReal& x, std::uint64_t k);
ArbReal sqrt(const ArbReal& x);
ArbReal ln(const ArbReal& x);
ArbReal exp(const ArbReal& x);
ArbReal pow_int(const ArbReal& x, std::int64_t k);
ArbReal ln2(Bits prec);

/// floor(k-th root of n) for n >= 0, by Newton iteration from above.
mpz_class iroot_floor(const mpz_class& n, std::uint64_t k);

/// Exact floor(log10|x|); x must be nonzero.
std::int64_t floor_log10(const ArbReal& x);
/// Sign of |x| - 10^k, computed exactly.
int compare_abs_pow10(const ArbReal& x, std::int64_t k);

/// Precision budget for a request of `target_digits` digits in `base`.
struct PrecisionPolicy {
  std::uint64_t target_digits = 0;
  Bits guard_bits = 64;
  int base = 10;

  /// Guard bits = max(64, 10% of the payload bits).
  static PrecisionPolicy for_digits(std::uint64_t digits, int base);
  Bits payload_bits() const;
  Bits working_bits() const { return payload_bits() + guard_bits; }
};

/// ceil(digits * log2(base)), exact for power-of-two bases.
Bits bits_for_digits(std::uint64_t digits, int base);

}  // namespace df
