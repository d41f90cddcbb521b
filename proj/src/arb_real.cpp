#include "df/arb_real.hpp"

#include <algorithm>
#include <cmath>

namespace df {

namespace {

Bits bit_length(const mpz_class& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

mpz_class shifted_left(const mpz_class& v, Bits k) {
  mpz_class r;
  mpz_mul_2exp(r.get_mpz_t(), v.get_mpz_t(), k);
  return r;
}

void check_precision(Bits prec) {
  if (prec < 2) throw DomainError("precision must be at least 2 bits");
}

// Signed exact sum of two aligned-or-alignable terms, rounded once.
ArbReal round_sum(int sa, const mpz_class& ma, std::int64_t ea, int sb, const mpz_class& mb,
                  std::int64_t eb, Bits prec) {
  const std::int64_t e = std::min(ea, eb);
  mpz_class a = shifted_left(ma, static_cast<Bits>(ea - e));
  mpz_class b = shifted_left(mb, static_cast<Bits>(eb - e));
  if (sa < 0) a = -a;
  if (sb < 0) b = -b;
  mpz_class s = a + b;
  const int sign = sgn(s);
  if (sign == 0) return ArbReal::zero(prec);
  return ArbReal::from_scaled(sign, abs(s), e, prec);
}

}  // namespace

ArbReal ArbReal::zero(Bits prec) {
  check_precision(prec);
  ArbReal r;
  r.precision_ = prec;
  return r;
}

ArbReal ArbReal::from_integer(const mpz_class& value, Bits prec) {
  if (value == 0) return zero(prec);
  return from_scaled(sgn(value), mpz_class(value < 0 ? mpz_class(-value) : value), 0, prec);
}

ArbReal ArbReal::from_rational(const mpq_class& value, Bits prec) {
  return real_from_ratio(value.get_num(), value.get_den(), prec);
}

ArbReal ArbReal::from_scaled(int sign, mpz_class magnitude, std::int64_t exp, Bits prec,
                             bool sticky) {
  check_precision(prec);
  if (magnitude == 0 || sign == 0) return zero(prec);
  const Bits nb = bit_length(magnitude);
  if (sticky && nb < prec + 2) {
    throw InternalInconsistency("sticky rounding needs at least prec+2 bits");
  }
  ArbReal r;
  r.sign_ = sign > 0 ? 1 : -1;
  r.precision_ = prec;
  if (nb > prec) {
    const Bits s = nb - prec;
    mpz_class q;
    mpz_fdiv_q_2exp(q.get_mpz_t(), magnitude.get_mpz_t(), s);
    const bool half = mpz_tstbit(magnitude.get_mpz_t(), s - 1) != 0;
    bool below = sticky;
    if (!below && s >= 2) below = mpz_scan1(magnitude.get_mpz_t(), 0) < s - 1;
    const bool odd = mpz_tstbit(q.get_mpz_t(), 0) != 0;
    std::int64_t e = exp + static_cast<std::int64_t>(s);
    if (half && (below || odd)) {
      q += 1;
      if (bit_length(q) > prec) {
        q >>= 1;
        ++e;
      }
    }
    r.mantissa_ = std::move(q);
    r.exponent_ = e;
  } else {
    const Bits s = prec - nb;
    r.mantissa_ = shifted_left(magnitude, s);
    r.exponent_ = exp - static_cast<std::int64_t>(s);
  }
  return r;
}

std::int64_t ArbReal::top_exponent() const {
  if (is_zero()) throw DomainError("top_exponent of zero");
  return exponent_ + static_cast<std::int64_t>(bit_length(mantissa_)) - 1;
}

ArbReal ArbReal::rounded(Bits prec) const {
  if (is_zero()) return zero(prec);
  return from_scaled(sign_, mantissa_, exponent_, prec);
}

ArbReal ArbReal::abs() const {
  ArbReal r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

ArbReal ArbReal::operator-() const {
  ArbReal r = *this;
  r.sign_ = -r.sign_;
  return r;
}

ArbReal ArbReal::mul_2exp(std::int64_t k) const {
  ArbReal r = *this;
  if (!r.is_zero()) r.exponent_ += k;
  return r;
}

double ArbReal::to_double() const {
  if (is_zero()) return 0.0;
  long ex = 0;
  const double d = mpz_get_d_2exp(&ex, mantissa_.get_mpz_t());
  return sign_ * std::ldexp(d, static_cast<int>(std::clamp<std::int64_t>(
                                   ex + exponent_, -100000, 100000)));
}

double ArbReal::log2_abs() const {
  if (is_zero()) throw DomainError("log of zero");
  long ex = 0;
  const double d = mpz_get_d_2exp(&ex, mantissa_.get_mpz_t());
  return std::log2(d) + static_cast<double>(ex) + static_cast<double>(exponent_);
}

double ArbReal::log10_abs() const { return log2_abs() * std::log10(2.0); }

ArbReal add(const ArbReal& a, const ArbReal& b, Bits prec) {
  if (a.is_zero()) return b.rounded(prec);
  if (b.is_zero()) return a.rounded(prec);
  const ArbReal& hi = a.top_exponent() >= b.top_exponent() ? a : b;
  const ArbReal& lo = &hi == &a ? b : a;
  // When lo lies wholly below prec+3 extra bits of hi, it only matters as a
  // sticky bit; this keeps the alignment shift bounded.
  const std::int64_t t = static_cast<std::int64_t>(prec) + 3;
  if (lo.top_exponent() < hi.exponent() - t) {
    mpz_class m = shifted_left(hi.mantissa(), static_cast<Bits>(t));
    if (hi.sign() != lo.sign()) m -= 1;
    return ArbReal::from_scaled(hi.sign(), std::move(m), hi.exponent() - t, prec, true);
  }
  return round_sum(a.sign(), a.mantissa(), a.exponent(), b.sign(), b.mantissa(), b.exponent(),
                   prec);
}

ArbReal sub(const ArbReal& a, const ArbReal& b, Bits prec) { return add(a, -b, prec); }

ArbReal mul(const ArbReal& a, const ArbReal& b, Bits prec) {
  if (a.is_zero() || b.is_zero()) return ArbReal::zero(prec);
  return ArbReal::from_scaled(a.sign() * b.sign(), a.mantissa() * b.mantissa(),
                              a.exponent() + b.exponent(), prec);
}

ArbReal div(const ArbReal& a, const ArbReal& b, Bits prec) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (a.is_zero()) return ArbReal::zero(prec);
  const auto na = static_cast<std::int64_t>(bit_length(a.mantissa()));
  const auto nb = static_cast<std::int64_t>(bit_length(b.mantissa()));
  const std::int64_t s = std::max<std::int64_t>(0, static_cast<std::int64_t>(prec) + 3 + nb - na);
  mpz_class num = shifted_left(a.mantissa(), static_cast<Bits>(s));
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), b.mantissa().get_mpz_t());
  return ArbReal::from_scaled(a.sign() * b.sign(), std::move(q), a.exponent() - b.exponent() - s,
                              prec, r != 0);
}

ArbReal operator+(const ArbReal& a, const ArbReal& b) {
  return add(a, b, std::max(a.precision(), b.precision()));
}
ArbReal operator-(const ArbReal& a, const ArbReal& b) {
  return sub(a, b, std::max(a.precision(), b.precision()));
}
ArbReal operator*(const ArbReal& a, const ArbReal& b) {
  return mul(a, b, std::max(a.precision(), b.precision()));
}
ArbReal operator/(const ArbReal& a, const ArbReal& b) {
  return div(a, b, std::max(a.precision(), b.precision()));
}

std::strong_ordering operator<=>(const ArbReal& a, const ArbReal& b) {
  if (a.sign() != b.sign()) return a.sign() <=> b.sign();
  if (a.is_zero()) return std::strong_ordering::equal;
  std::strong_ordering mag = std::strong_ordering::equal;
  const std::int64_t ta = a.top_exponent();
  const std::int64_t tb = b.top_exponent();
  if (ta != tb) {
    mag = ta <=> tb;
  } else {
    const std::int64_t e = std::min(a.exponent(), b.exponent());
    const mpz_class ma = shifted_left(a.mantissa(), static_cast<Bits>(a.exponent() - e));
    const mpz_class mb = shifted_left(b.mantissa(), static_cast<Bits>(b.exponent() - e));
    const int c = cmp(ma, mb);
    mag = c <=> 0;
  }
  if (a.sign() < 0) {
    if (mag == std::strong_ordering::less) return std::strong_ordering::greater;
    if (mag == std::strong_ordering::greater) return std::strong_ordering::less;
  }
  return mag;
}

ArbReal real_from_ratio(const mpz_class& num, const mpz_class& den, Bits prec) {
  if (den == 0) throw DomainError("zero denominator");
  check_precision(prec);
  if (num == 0) return ArbReal::zero(prec);
  const auto nn = static_cast<std::int64_t>(bit_length(num));
  const auto nd = static_cast<std::int64_t>(bit_length(den));
  const std::int64_t s = std::max<std::int64_t>(0, static_cast<std::int64_t>(prec) + 3 + nd - nn);
  mpz_class scaled = shifted_left(abs(num), static_cast<Bits>(s));
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), mpz_class(abs(den)).get_mpz_t());
  return ArbReal::from_scaled(sgn(num) * sgn(den), std::move(q), -s, prec, r != 0);
}

int compare_abs_pow10(const ArbReal& x, std::int64_t k) {
  if (x.is_zero()) return -1;
  const double approx = x.log10_abs() - static_cast<double>(k);
  if (approx > 1.0) return 1;
  if (approx < -1.0) return -1;
  // |x| = m 2^e against 10^k = 5^k 2^k.
  const mpz_class& m = x.mantissa();
  const std::int64_t e = x.exponent();
  mpz_class lhs = m;
  mpz_class rhs = 1;
  mpz_class five;
  mpz_ui_pow_ui(five.get_mpz_t(), 5, static_cast<unsigned long>(k >= 0 ? k : -k));
  if (k >= 0) {
    rhs = five;
  } else {
    lhs *= five;
  }
  // Remaining binary factor: 2^(e - k) on the left.
  const std::int64_t f = e - k;
  if (f >= 0) {
    lhs = shifted_left(lhs, static_cast<Bits>(f));
  } else {
    rhs = shifted_left(rhs, static_cast<Bits>(-f));
  }
  const int c = cmp(lhs, rhs);
  return (c > 0) - (c < 0);
}

std::int64_t floor_log10(const ArbReal& x) {
  if (x.is_zero()) throw DomainError("floor_log10 of zero");
  auto est = static_cast<std::int64_t>(std::floor(x.log10_abs()));
  while (compare_abs_pow10(x, est) < 0) --est;
  while (compare_abs_pow10(x, est + 1) >= 0) ++est;
  return est;
}

Bits bits_for_digits(std::uint64_t digits, int base) {
  if (base < 2 || base > 36) throw DomainError("base must be in [2, 36]");
  if ((base & (base - 1)) == 0) {
    Bits per = 0;
    for (int b = base; b > 1; b >>= 1) ++per;
    return digits * per;
  }
  return static_cast<Bits>(std::ceil(static_cast<double>(digits) * std::log2(base)));
}

PrecisionPolicy PrecisionPolicy::for_digits(std::uint64_t digits, int base) {
  PrecisionPolicy p;
  p.target_digits = digits;
  p.base = base;
  const Bits payload = bits_for_digits(digits, base);
  p.guard_bits = std::max<Bits>(64, (payload + 9) / 10);
  return p;
}

Bits PrecisionPolicy::payload_bits() const { return bits_for_digits(target_digits, base); }

}  // namespace df
