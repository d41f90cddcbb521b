#include "df/oracle.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>

#include "df/kernels.hpp"
#include "df/special_numbers.hpp"

namespace df::oracle {

namespace {

constexpr std::uint64_t kGuardDigits = 20;
constexpr std::uint64_t kInternalDigitLimit = 4 * kMaxReferenceDigits;

Bits value_bits(std::uint64_t digits10) { return bits_for_digits(digits10 + kGuardDigits, 10) + 32; }

std::uint64_t tier_for(std::uint64_t digits10) {
  return std::max<std::uint64_t>(1024, std::bit_ceil(digits10));
}

// pi at tier precision; memoized per tier so a request's result never
// depends on which requests came before it.
ArbReal pi_at_tier(std::uint64_t tier) {
  static std::mutex mutex;
  static std::map<std::uint64_t, ArbReal> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(tier); it != memo.end()) return it->second;
  }
  const MachinPair pair = machin_pair(value_bits(tier));
  mpz_class diff = pair.machin - pair.gauss;
  if (abs(diff) > 2 * static_cast<unsigned long>(pair.error_units)) {
    throw InternalInconsistency("Machin and Gauss arctangent identities disagree");
  }
  ArbReal value = ArbReal::from_scaled(1, pair.machin, -static_cast<std::int64_t>(pair.bits),
                                       pair.bits);
  std::lock_guard lock(mutex);
  memo.emplace(tier, value);
  return value;
}

ArbReal pi_value(std::uint64_t digits10) {
  if (digits10 > kInternalDigitLimit) throw ResourceCapExceeded("reference precision cap exceeded");
  return pi_at_tier(tier_for(digits10)).rounded(value_bits(digits10));
}

Bits bits_of(std::uint64_t v) { return static_cast<Bits>(std::bit_width(v)); }

}  // namespace

MachinPair machin_pair(std::uint64_t bits, bool parallel) {
  auto atan_inv = [&](std::uint64_t x, std::uint64_t* terms) {
    return parallel ? kernels::arctan_inv_parallel(x, bits, 0, terms)
                    : kernels::arctan_inv_serial(x, bits, terms);
  };
  std::uint64_t t5 = 0, t239 = 0, t18 = 0, t57 = 0;
  const mpz_class a5 = atan_inv(5, &t5);
  const mpz_class a239 = atan_inv(239, &t239);
  const mpz_class a18 = atan_inv(18, &t18);
  const mpz_class a57 = atan_inv(57, &t57);
  MachinPair p;
  p.bits = bits;
  p.machin = 16 * a5 - 4 * a239;
  p.gauss = 48 * a18 + 32 * a57 - 20 * a239;
  // Each truncated term is off by less than one unit, plus the dropped tail.
  const std::uint64_t machin_err = 16 * (t5 + 1) + 4 * (t239 + 1);
  const std::uint64_t gauss_err = 48 * (t18 + 1) + 32 * (t57 + 1) + 20 * (t239 + 1);
  p.error_units = std::max(machin_err, gauss_err);
  return p;
}

Reference reference_pi(std::uint64_t digits10) {
  if (digits10 < 1 || digits10 > kMaxReferenceDigits) {
    throw DomainError("reference_pi supports 1..20000 digits");
  }
  return Reference{Constant{TargetKind::pi, 0}, pi_value(digits10), digits10};
}

Reference reference(Constant constant, std::uint64_t digits10) {
  Reference r;
  r.constant = constant;
  r.certified_digits10 = digits10;
  switch (constant.kind) {
    case TargetKind::pi:
      r.value = pi_value(digits10);
      break;
    case TargetKind::pi_power: {
      if (constant.k == 0) throw DomainError("pi_power needs a positive exponent");
      const auto mag = static_cast<std::uint64_t>(
                           std::ceil(static_cast<double>(constant.k) * std::log10(M_PI))) + 1;
      const std::uint64_t total = digits10 + mag;
      const Bits wp = value_bits(total) + bits_of(constant.k) + 8;
      const ArbReal pi = pi_value(total + 20).rounded(wp);
      r.value = pow_int(pi, static_cast<std::int64_t>(constant.k)).rounded(value_bits(total));
      break;
    }
    case TargetKind::inv_pi: {
      const Bits wp = value_bits(digits10);
      r.value = div(ArbReal::from_int(1, wp), pi_value(digits10 + 2), wp);
      break;
    }
    case TargetKind::pi_squared: {
      const Bits wp = value_bits(digits10 + 1);
      const ArbReal pi = pi_value(digits10 + 3);
      r.value = mul(pi, pi, wp);
      break;
    }
    case TargetKind::factorial: {
      const mpz_class f = factorial_exact(constant.k);
      r.value = ArbReal::from_integer(f, std::max<Bits>(2, mpz_sizeinbase(f.get_mpz_t(), 2)));
      r.certified_digits10 = std::numeric_limits<std::uint64_t>::max();
      break;
    }
  }
  return r;
}

Constant constant_for(const ApproxResult& approx) {
  const MethodInfo& info = method_info(approx.method);
  Constant c{info.target, 0};
  const auto n = static_cast<std::uint64_t>(approx.index_n);
  if (info.target == TargetKind::pi_power) {
    c.k = approx.method == MethodId::bernoulli_power ? n : 2 * n + 1;
  } else if (info.target == TargetKind::factorial) {
    c.k = n;
  }
  return c;
}

ErrorMeasure measure_error(const ApproxResult& approx, const Reference& ref) {
  ErrorMeasure m;
  const Bits wp = approx.value.precision() + ref.value.precision() + 64;
  const ArbReal diff = sub(approx.value, ref.value, wp);
  if (method_info(approx.method).error_kind == ErrorKind::relative) {
    m.error = div(diff, ref.value, approx.value.precision() + 64);
    if (!m.error.is_zero()) m.log10 = floor_log10(m.error);
    return m;
  }
  m.error = diff;
  if (diff.is_zero()) return m;
  const auto floor = -static_cast<std::int64_t>(std::min<std::uint64_t>(
      ref.certified_digits10, std::numeric_limits<std::int64_t>::max()));
  if (compare_abs_pow10(diff, floor) < 0) return m;
  m.log10 = floor_log10(diff);
  return m;
}

std::int64_t measured_error_log10(ApproxResult& approx, const Reference& ref) {
  const bool relative = method_info(approx.method).error_kind == ErrorKind::relative;
  const std::int64_t expected = approx.apriori_error_log10 < 0 ? -approx.apriori_error_log10 : 0;
  if (!relative && ref.certified_digits10 <= static_cast<std::uint64_t>(expected) + 5) {
    throw PrecisionError("reference has " + std::to_string(ref.certified_digits10) +
                         " digits; needs more than " + std::to_string(expected + 5));
  }
  const ErrorMeasure m = measure_error(approx, ref);
  if (m.below_floor()) {
    approx.measured_error_log10.reset();
  } else {
    approx.measured_error_log10 = m.log10;
  }
  return m.log10;
}

Reference reference_for(const ApproxResult& approx, std::uint64_t extra_digits) {
  const Constant c = constant_for(approx);
  const std::int64_t a = approx.apriori_error_log10;
  const std::uint64_t digits = static_cast<std::uint64_t>(a < 0 ? -a : 0) + extra_digits;
  return reference(c, digits);
}

std::string decimal_string(const ArbReal& x, std::uint64_t count) {
  if (x.sign() < 0) throw DomainError("decimal_string expects a non-negative value");
  mpz_class scaled = 0;
  if (!x.is_zero()) {
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, count);
    scaled = x.mantissa() * p10;
    if (x.exponent() >= 0) {
      scaled <<= static_cast<mp_bitcnt_t>(x.exponent());
    } else {
      mpz_fdiv_q_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(),
                      static_cast<mp_bitcnt_t>(-x.exponent()));
    }
  }
  std::string s = scaled.get_str();
  if (s.size() <= count) s.insert(0, count + 1 - s.size(), '0');
  s.insert(s.size() - count, ".");
  return s;
}

bool embedded_constant_matches(std::string_view constant) {
  const Reference ref = reference_pi(1000);
  return decimal_string(ref.value, 1000) == constant;
}

}  // namespace df::oracle
