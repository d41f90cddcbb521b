#include "df/digit_engine.hpp"

#include <algorithm>
#include <cmath>

namespace df {

namespace {

constexpr double kLog10Pi = 0.49714987269413385435;
// Decimal orders kept between the a-priori error and the digit's place value:
// 2 of slack for the floor in the exponent, 3 of safety.
constexpr std::int64_t kIndexMargin = 5;
constexpr std::int64_t kEscalationOrders = 12;

void check_base(int base) {
  if (base < 2 || base > 36) throw DomainError("base must be in [2, 36]");
}

mpz_class pow_base(int base, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
  return r;
}

// x * base^scale as num/den with den > 0; x must be non-negative.
struct Scaled {
  mpz_class num;
  mpz_class den;
};

Scaled scaled(const ArbReal& x, int base, std::int64_t scale) {
  Scaled s{x.mantissa(), 1};
  if (scale >= 0) {
    s.num *= pow_base(base, static_cast<std::uint64_t>(scale));
  } else {
    s.den = pow_base(base, static_cast<std::uint64_t>(-scale));
  }
  if (x.exponent() >= 0) {
    s.num <<= static_cast<mp_bitcnt_t>(x.exponent());
  } else {
    s.den <<= static_cast<mp_bitcnt_t>(-x.exponent());
  }
  return s;
}

void require_nonnegative(const ArbReal& x) {
  if (x.sign() < 0) throw DomainError("digit extraction needs a non-negative value");
}

// ulp(x) * base^scale <= 2^-64, i.e. 64 bits survive below the unit digit.
void require_resolution(const ArbReal& x, int base, std::int64_t scale) {
  if (x.is_zero()) return;
  const double scale_bits = static_cast<double>(scale) * std::log2(static_cast<double>(base));
  const double slack = static_cast<double>(-x.ulp_exponent()) - scale_bits;
  if (slack < 64.0 + 1e-6) {
    throw PrecisionError("value at " + std::to_string(x.precision()) +
                         " bits cannot resolve that digit position");
  }
}

std::string to_base(const mpz_class& v, int base) {
  std::string s = v.get_str(base);
  std::transform(s.begin(), s.end(), s.begin(), [](char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  });
  return s;
}

std::string to_base_padded(const mpz_class& v, int base, std::uint64_t width) {
  if (width == 0) return {};
  std::string s = to_base(v, base);
  if (s.size() < width) s.insert(0, width - s.size(), '0');
  return s;
}

// First few base-b digits of frac(F) for a hazard report.
std::string fraction_preview(const Scaled& f, int base) {
  mpz_class r = f.num % f.den;
  mpz_class shifted = r * pow_base(base, 24) / f.den;
  return "0." + to_base_padded(shifted, base, 24);
}

std::uint64_t min_index(MethodId m) {
  switch (m) {
    case MethodId::bernoulli_basic:
    case MethodId::bernoulli_corrected:
    case MethodId::bernoulli_power:
      return 10;
    case MethodId::ratio_bernoulli_sq:
    case MethodId::ratio_euler_sq:
      return 5;
    case MethodId::pi_stirling:
      return 2;
    case MethodId::pi_partition:
      return 10;
    default:
      return 1;
  }
}

std::uint64_t admissible(MethodId m, std::uint64_t k) {
  if (m == MethodId::bernoulli_basic || m == MethodId::bernoulli_corrected) return k + (k % 2);
  return k;
}

// The digit of one evaluation; `clear` is false when the error interval or
// the guard band touches a digit boundary.
struct Reading {
  int digit = 0;
  bool clear = false;
  Scaled f;
};

Reading read_digit(const ApproxResult& r, int base, std::int64_t scale, Bits guard) {
  require_nonnegative(r.value);
  require_resolution(r.value, base, scale);
  Reading out;
  out.f = scaled(r.value, base, scale);
  const mpz_class q = out.f.num / out.f.den;
  out.digit = static_cast<int>(mpz_class(q % base).get_si());
  const mpz_class rem = out.f.num - q * out.f.den;
  const mpz_class dist_num = std::min(rem, mpz_class(out.f.den - rem));

  // Error in units of the digit's place: (10^(apriori+2) + 8 ulp) * base^scale.
  constexpr Bits kP = 128;
  ArbReal err = ArbReal::from_int(1, kP).mul_2exp(r.value.ulp_exponent() + 3);
  const std::int64_t e10 = r.apriori_error_log10 + 2;
  const ArbReal ten = ArbReal::from_int(10, kP);
  err = add(err, pow_int(ten, e10), kP);
  err = mul(err, pow_int(ArbReal::from_int(base, kP), scale), kP);
  err = err.mul_2exp(1);  // covers rounding in the products above
  const ArbReal guard_band = ArbReal::from_int(1, kP).mul_2exp(-static_cast<std::int64_t>(guard / 2));
  const ArbReal threshold = std::max(err, guard_band);
  const ArbReal dist = dist_num == 0 ? ArbReal::zero(kP) : real_from_ratio(dist_num, out.f.den, kP);
  out.clear = dist > threshold;
  return out;
}

}  // namespace

std::string RenderedDigits::to_string() const {
  std::string s = integer_part;
  if (!fractional_digits.empty()) s += "." + fractional_digits;
  if (exponent != 0) s += "e" + std::to_string(exponent);
  return s;
}

char digit_char(int d) {
  if (d < 0 || d >= 36) throw DomainError("digit out of range");
  return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10));
}

int digit_at_scale(const ArbReal& x, int base, std::int64_t scale) {
  check_base(base);
  require_nonnegative(x);
  if (x.is_zero()) return 0;
  require_resolution(x, base, scale);
  const Scaled f = scaled(x, base, scale);
  const mpz_class q = f.num / f.den;
  return static_cast<int>(mpz_class(q % base).get_si());
}

int position(std::uint64_t n, const ArbReal& x, int base) {
  return digit_at_scale(x, base, static_cast<std::int64_t>(n) + 1);
}

std::int64_t floor_log_base(const ArbReal& x, int base) {
  check_base(base);
  if (x.is_zero()) throw DomainError("floor_log_base of zero");
  const ArbReal a = x.abs();
  auto e = static_cast<std::int64_t>(
      std::floor(a.log2_abs() / std::log2(static_cast<double>(base))));
  // base^e <= a < base^(e+1), fixed up exactly: a * base^-e in [1, base).
  for (;;) {
    const Scaled s = scaled(a, base, -e);
    if (s.num < s.den) {
      --e;
    } else if (s.num >= s.den * base) {
      ++e;
    } else {
      return e;
    }
  }
}

MethodId default_method(const DigitTarget& target) {
  switch (target.kind) {
    case TargetKind::pi:
      return MethodId::bernoulli_corrected;
    case TargetKind::pi_power:
      return target.power % 2 == 0 ? MethodId::bernoulli_power : MethodId::euler_power_odd;
    case TargetKind::inv_pi:
      return MethodId::euler_inverse;
    case TargetKind::pi_squared:
      return MethodId::ratio_euler_sq;
    case TargetKind::factorial:
      break;
  }
  throw DomainError("digits are not extracted from factorial approximations");
}

std::uint64_t select_index(MethodId method, double place_log10, std::int64_t margin,
                           std::uint64_t max_index) {
  const auto need = static_cast<std::int64_t>(std::floor(place_log10)) - margin;
  const unsigned terms = default_terms(method);
  const Variant variant = default_variant(method);
  auto ok = [&](std::uint64_t k) { return apriori_error_log10(method, k, terms, variant) <= need; };
  std::uint64_t lo = min_index(method);
  if (ok(lo)) return admissible(method, lo);
  std::uint64_t hi = lo;
  while (!ok(hi)) {
    if (hi >= max_index) {
      throw ResourceCapExceeded("position needs a " + std::string(method_info(method).name) +
                                " index above the cap of " + std::to_string(max_index));
    }
    hi = std::min(max_index, hi * 2);
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  std::uint64_t k = admissible(method, hi);
  if (k > max_index) {
    throw ResourceCapExceeded("position needs an index above the cap of " +
                              std::to_string(max_index));
  }
  return k;
}

DigitResult digit_of(const DigitTarget& target, std::uint64_t n, int base,
                     std::optional<MethodId> method, const DigitOptions& options) {
  check_base(base);
  const MethodId m = method.value_or(default_method(target));
  const MethodInfo& info = method_info(m);
  if (info.target != target.kind) {
    throw DomainError(std::string(info.name) + " does not approximate the requested target");
  }
  const double log10_base = std::log10(static_cast<double>(base));

  // pi^k digits are positions in the significant-digit string; everything
  // else counts from the point.
  std::uint64_t index = 0;
  std::int64_t lead = 0;  // integer digits of pi^k in this base
  if (target.kind == TargetKind::pi_power) {
    const std::uint64_t k = target.power;
    if (m == MethodId::bernoulli_power) {
      if (k < 10 || k % 2 != 0) throw DomainError("bernoulli_power needs an even power >= 10");
      index = k;
    } else {
      if (k < 3 || k % 2 == 0) throw DomainError("euler_power_odd needs an odd power >= 3");
      index = (k - 1) / 2;
    }
    if (index > options.max_index) throw ResourceCapExceeded("power exceeds the index cap");
    lead = static_cast<std::int64_t>(std::floor(static_cast<double>(k) * kLog10Pi / log10_base)) + 1;
    const double place = static_cast<double>(lead - static_cast<std::int64_t>(n) - 1) * log10_base;
    const std::int64_t apriori =
        apriori_error_log10(m, index, default_terms(m), default_variant(m));
    if (apriori > static_cast<std::int64_t>(std::floor(place)) - kIndexMargin) {
      throw PrecisionError("pi^" + std::to_string(k) + " from " + std::string(info.name) +
                           " is accurate to about 10^" + std::to_string(apriori) +
                           ", too coarse for significant digit " + std::to_string(n));
    }
  } else {
    const double place = -static_cast<double>(n + 1) * log10_base;
    index = select_index(m, place, kIndexMargin, options.max_index);
  }

  const unsigned terms = default_terms(m);
  const Variant variant = default_variant(m);

  auto attempt = [&](std::uint64_t idx, Bits extra_bits, DigitResult& out) -> Reading {
    EvalOptions opt;
    ApproxResult first = evaluate(m, idx, terms, variant, opt);
    if (extra_bits != 0) {
      opt.precision_bits = first.value.precision() + extra_bits;
      first = evaluate(m, idx, terms, variant, opt);
    }
    const Bits p = first.value.precision();
    opt.precision_bits = p + 64;
    const ApproxResult second = evaluate(m, idx, terms, variant, opt);

    std::int64_t scale = static_cast<std::int64_t>(n) + 1;
    if (target.kind == TargetKind::pi_power) {
      const std::int64_t actual_lead = floor_log_base(first.value, base) + 1;
      scale = static_cast<std::int64_t>(n) + 1 - actual_lead;
    }
    const Bits guard = PrecisionPolicy::for_digits(
                           static_cast<std::uint64_t>(static_cast<double>(p) / 3.33), 10)
                           .guard_bits;
    const Reading a = read_digit(first, base, scale, guard);
    const Reading b = read_digit(second, base, scale, guard);
    out.method = m;
    out.index_n = static_cast<std::int64_t>(idx);
    out.precision_used = opt.precision_bits;
    out.digit = a.digit;
    out.stable = a.clear && b.clear && a.digit == b.digit;
    return a;
  };

  DigitResult result;
  result.position = n;
  result.base = base;
  attempt(index, 0, result);
  if (result.stable) return result;

  // One escalation: more index (where the method has one) and more bits.
  std::uint64_t index2 = index;
  if (target.kind != TargetKind::pi_power) {
    const double place = -static_cast<double>(n + 1) * log10_base;
    index2 = std::max(index, select_index(m, place, kIndexMargin + kEscalationOrders,
                                          options.max_index));
  }
  const Reading r2 = attempt(index2, 64, result);
  if (result.stable) return result;
  throw BoundaryHazard("digit " + std::to_string(n) + " in base " + std::to_string(base) +
                           " sits on a digit boundary within the error budget",
                       fraction_preview(r2.f, base));
}

RenderedDigits render(const ArbReal& x, int base, std::uint64_t count,
                      std::int64_t certified_error_log_base) {
  check_base(base);
  require_nonnegative(x);
  const bool exact = certified_error_log_base == kExactValue;
  const auto c = static_cast<std::int64_t>(count);
  if (!exact && certified_error_log_base > -(c + 2)) {
    throw PrecisionError(std::to_string(count) + " digits exceed the certified accuracy of base^" +
                         std::to_string(certified_error_log_base));
  }
  const Scaled f = scaled(x, base, c);
  const mpz_class q = f.num / f.den;
  if (!exact) {
    // floor must agree at both ends of x +- base^cert (scaled by base^count).
    const auto j = static_cast<std::uint64_t>(-(certified_error_log_base + c));
    const mpz_class bj = pow_base(base, j);
    const mpz_class big_num = f.num * bj;
    const mpz_class big_den = f.den * bj;
    mpz_class lo, hi;
    mpz_fdiv_q(lo.get_mpz_t(), mpz_class(big_num - f.den).get_mpz_t(), big_den.get_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), mpz_class(big_num + f.den).get_mpz_t(), big_den.get_mpz_t());
    if (lo != hi) {
      throw BoundaryHazard("digit " + std::to_string(count) +
                               " is undecided within the certified error",
                           fraction_preview(f, base));
    }
  }
  const mpz_class unit = pow_base(base, count);
  RenderedDigits out;
  out.base = base;
  out.integer_part = to_base(mpz_class(q / unit), base);
  out.fractional_digits = to_base_padded(mpz_class(q % unit), base, count);
  return out;
}

RenderedDigits render_significant(const ArbReal& x, int base, std::uint64_t count,
                                  std::int64_t certified_rel_error_log_base) {
  check_base(base);
  require_nonnegative(x);
  if (count == 0) throw DomainError("render_significant needs at least one digit");
  if (x.is_zero()) throw DomainError("render_significant of zero");
  const auto c = static_cast<std::int64_t>(count);
  const bool exact = certified_rel_error_log_base == kExactValue;
  if (!exact && certified_rel_error_log_base > -(c + 2)) {
    throw PrecisionError(std::to_string(count) +
                         " significant digits exceed the certified relative accuracy");
  }
  const std::int64_t e = floor_log_base(x, base);
  const Scaled f = scaled(x, base, c - 1 - e);
  const mpz_class q = f.num / f.den;
  if (!exact) {
    // x * base^(c-1-e) < base^c, so its absolute error is below base^(c + rel).
    const auto j = static_cast<std::uint64_t>(-(certified_rel_error_log_base + c));
    const mpz_class bj = pow_base(base, j);
    mpz_class lo, hi;
    mpz_fdiv_q(lo.get_mpz_t(), mpz_class(f.num * bj - f.den).get_mpz_t(),
               mpz_class(f.den * bj).get_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), mpz_class(f.num * bj + f.den).get_mpz_t(),
               mpz_class(f.den * bj).get_mpz_t());
    if (lo != hi) {
      throw BoundaryHazard("significant digit " + std::to_string(count) +
                               " is undecided within the certified error",
                           fraction_preview(f, base));
    }
  }
  const std::string digits = to_base(q, base);
  RenderedDigits out;
  out.base = base;
  out.integer_part = digits.substr(0, 1);
  out.fractional_digits = digits.substr(1);
  out.exponent = e;
  return out;
}

}  // namespace df
