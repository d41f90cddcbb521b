#include <algorithm>
#include <cmath>
#include <limits>

#include "df/arb_real.hpp"

namespace df {

namespace {

Bits bit_length(const mpz_class& v) { return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2); }

Bits bits_of(std::uint64_t v) {
  Bits n = 0;
  while (v != 0) {
    ++n;
    v >>= 1;
  }
  return n;
}

mpz_class ipow(const mpz_class& b, std::uint64_t k) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), k);
  return r;
}

// floor root from a double estimate; used when the root has few bits.
mpz_class small_root_start(const mpz_class& n, std::uint64_t k) {
  long ex = 0;
  const double d = mpz_get_d_2exp(&ex, n.get_mpz_t());
  const double lg = (std::log2(d) + static_cast<double>(ex)) / static_cast<double>(k);
  mpz_class y;
  mpz_set_d(y.get_mpz_t(), std::ceil(std::exp2(lg) * (1.0 + 1e-9)) + 2.0);
  while (ipow(y, k) <= n) y *= 2;
  return y;
}

// atanh(z) for small |z| at `prec` bits.
ArbReal atanh_series(const ArbReal& z, Bits prec) {
  const ArbReal z2 = mul(z, z, prec);
  ArbReal power = z;
  ArbReal sum = z;
  for (std::uint64_t k = 1;; ++k) {
    power = mul(power, z2, prec);
    if (power.is_zero()) break;
    const ArbReal term = div(power, ArbReal::from_int(static_cast<long>(2 * k + 1), prec), prec);
    sum = add(sum, term, prec);
    if (term.top_exponent() < sum.top_exponent() - static_cast<std::int64_t>(prec) - 2) break;
  }
  return sum;
}

}  // namespace

mpz_class iroot_floor(const mpz_class& n, std::uint64_t k) {
  if (k == 0) throw DomainError("zeroth root");
  if (n < 0) throw DomainError("root of a negative integer");
  if (n < 2 || k == 1) return n;
  const Bits nb = bit_length(n);
  const Bits root_bits = nb / k + 1;
  mpz_class y;
  if (root_bits <= 40) {
    y = small_root_start(n, k);
  } else {
    // Root of the top half of the bits, then lifted: the result is strictly
    // above the true root, as Newton-from-above requires.
    const Bits drop = root_bits - root_bits / 2;
    mpz_class top;
    mpz_fdiv_q_2exp(top.get_mpz_t(), n.get_mpz_t(), drop * k);
    y = iroot_floor(top, k) + 1;
    y <<= drop;
  }
  const mpz_class km1 = static_cast<unsigned long>(k - 1);
  for (;;) {
    mpz_class t = n / ipow(y, k - 1);
    t += km1 * y;
    t /= static_cast<unsigned long>(k);
    if (t >= y) break;
    y = std::move(t);
  }
  if (ipow(y, k) > n || ipow(y + 1, k) <= n) {
    throw InternalInconsistency("integer root failed its bracketing check");
  }
  return y;
}

ArbReal nth_root(const ArbReal& x, std::uint64_t k) {
  if (k == 0) throw DomainError("nth_root with k = 0");
  if (x.sign() <= 0) throw DomainError("nth_root of a non-positive value");
  const Bits prec = x.precision();
  if (k == 1) return x;
  // x = m 2^e; pick t >= 0 so that N = m 2^t has a root of >= prec+3 bits and
  // k divides e - t.
  const auto ki = static_cast<std::int64_t>(k);
  const auto mb = static_cast<std::int64_t>(bit_length(x.mantissa()));
  std::int64_t t = std::max<std::int64_t>(0, ki * (static_cast<std::int64_t>(prec) + 3) - mb);
  const std::int64_t e = x.exponent();
  std::int64_t rem = (e - t) % ki;
  if (rem < 0) rem += ki;
  t += rem;
  mpz_class n;
  mpz_mul_2exp(n.get_mpz_t(), x.mantissa().get_mpz_t(), static_cast<Bits>(t));
  mpz_class y = iroot_floor(n, k);
  const bool inexact = ipow(y, k) != n;
  return ArbReal::from_scaled(1, std::move(y), (e - t) / ki, prec, inexact);
}

ArbReal sqrt(const ArbReal& x) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative value");
  const Bits prec = x.precision();
  if (x.is_zero()) return ArbReal::zero(prec);
  const auto mb = static_cast<std::int64_t>(bit_length(x.mantissa()));
  std::int64_t t = std::max<std::int64_t>(0, 2 * (static_cast<std::int64_t>(prec) + 3) - mb);
  if (((x.exponent() - t) & 1) != 0) ++t;
  mpz_class n;
  mpz_mul_2exp(n.get_mpz_t(), x.mantissa().get_mpz_t(), static_cast<Bits>(t));
  mpz_class r, rem;
  mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
  return ArbReal::from_scaled(1, std::move(r), (x.exponent() - t) / 2, prec, rem != 0);
}

ArbReal pow_int(const ArbReal& x, std::int64_t k) {
  const Bits prec = x.precision();
  if (k == 0) {
    if (x.is_zero()) throw DomainError("0^0 is undefined here");
    return ArbReal::from_int(1, prec);
  }
  if (x.is_zero()) {
    if (k < 0) throw DomainError("zero to a negative power");
    return ArbReal::zero(prec);
  }
  const std::uint64_t mag = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1
                                  : static_cast<std::uint64_t>(k);
  const Bits wp = prec + bits_of(mag) + 4;
  ArbReal base = x.rounded(wp);
  ArbReal acc = ArbReal::from_int(1, wp);
  for (std::uint64_t e = mag;;) {
    if ((e & 1) != 0) acc = mul(acc, base, wp);
    e >>= 1;
    if (e == 0) break;
    base = mul(base, base, wp);
  }
  if (k < 0) return div(ArbReal::from_int(1, prec), acc, prec);
  return acc.rounded(prec);
}

ArbReal ln2(Bits prec) {
  const Bits wp = prec + 16;
  // ln 2 = 2 atanh(1/3)
  const ArbReal third = real_from_ratio(1, 3, wp);
  return atanh_series(third, wp).mul_2exp(1).rounded(prec);
}

ArbReal ln(const ArbReal& x) {
  if (x.sign() <= 0) throw DomainError("ln of a non-positive value");
  const Bits prec = x.precision();
  // x = y 2^E, y in [sqrt(1/2), sqrt(2)).
  std::int64_t big_e = x.top_exponent();
  ArbReal y = x.mul_2exp(-big_e);
  if (y.to_double() > std::sqrt(2.0)) {
    y = y.mul_2exp(-1);
    ++big_e;
  }
  const Bits e_bits = bits_of(static_cast<std::uint64_t>(big_e < 0 ? -big_e : big_e));
  const auto reductions = static_cast<unsigned>(std::sqrt(static_cast<double>(prec)) / 2.0);
  const Bits wp = prec + 40 + 2 * reductions + e_bits;
  y = y.rounded(wp);
  const ArbReal one = ArbReal::from_int(1, wp);
  const double dist = std::fabs(y.to_double() - 1.0);
  unsigned used = 0;
  if (dist > 1.0 / 256.0) {
    for (; used < reductions; ++used) y = sqrt(y);
  }
  ArbReal z = div(sub(y, one, wp), add(y, one, wp), wp);
  ArbReal result = ArbReal::zero(wp);
  if (!z.is_zero()) result = atanh_series(z, wp).mul_2exp(1 + static_cast<std::int64_t>(used));
  if (big_e != 0) {
    result = add(result, mul(ArbReal::from_int(big_e, wp), ln2(wp), wp), wp);
  }
  if (result.is_zero()) return ArbReal::zero(prec);
  return result.rounded(prec);
}

ArbReal exp(const ArbReal& x) {
  const Bits prec = x.precision();
  if (x.is_zero()) return ArbReal::from_int(1, prec);
  const double xd = x.to_double();
  if (!(std::fabs(xd) < 0x1p40)) throw RangeError("exp argument out of range");
  // x = k ln2 + r, |r| <= ln2/2; r is then halved `squarings` times.
  const auto k = static_cast<std::int64_t>(std::llround(xd / std::log(2.0)));
  const Bits k_bits = bits_of(static_cast<std::uint64_t>(k < 0 ? -k : k));
  const auto squarings = static_cast<unsigned>(std::sqrt(static_cast<double>(prec)) / 2.0) + 1;
  const Bits wp = prec + 40 + k_bits + 2 * squarings;
  ArbReal r = x.rounded(wp + k_bits);
  if (k != 0) r = sub(r, mul(ArbReal::from_int(k, wp + k_bits), ln2(wp + k_bits), wp + k_bits), wp);
  r = r.rounded(wp).mul_2exp(-static_cast<std::int64_t>(squarings));
  ArbReal sum = ArbReal::from_int(1, wp);
  if (!r.is_zero()) {
    ArbReal term = ArbReal::from_int(1, wp);
    for (long i = 1;; ++i) {
      term = div(mul(term, r, wp), ArbReal::from_int(i, wp), wp);
      if (term.is_zero()) break;
      sum = add(sum, term, wp);
      if (term.top_exponent() < -static_cast<std::int64_t>(wp) - 2) break;
    }
  }
  for (unsigned i = 0; i < squarings; ++i) sum = mul(sum, sum, wp);
  const std::int64_t limit = std::numeric_limits<std::int64_t>::max() / 4;
  if (sum.exponent() + k > limit || sum.exponent() + k < -limit) {
    throw RangeError("exp result exponent out of range");
  }
  return sum.mul_2exp(k).rounded(prec);
}

}  // namespace df
