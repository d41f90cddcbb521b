#include "df/approximants.hpp"

#include <bit>
#include <cmath>

#include "df/oracle.hpp"
#include "df/special_numbers.hpp"

namespace df {

namespace {

constexpr double kLog10Pi = 0.49714987269413385435;
constexpr unsigned long kPrimes[] = {2, 3, 5, 7};

mpz_class pow_ui(unsigned long base, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

mpz_class pow2(std::uint64_t e) {
  mpz_class r;
  mpz_setbit(r.get_mpz_t(), e);
  return r;
}

// Working precision for a value with `magnitude_digits` integer digits whose
// error should be resolved down to 10^apriori, plus slack.
Bits auto_precision(const EvalOptions& opt, std::int64_t apriori, std::uint64_t magnitude_digits) {
  if (opt.precision_bits != 0) return opt.precision_bits;
  const std::uint64_t err_digits = apriori < 0 ? static_cast<std::uint64_t>(-apriori) : 0;
  return PrecisionPolicy::for_digits(err_digits + magnitude_digits + opt.extra_digits, 10)
      .working_bits();
}

std::uint64_t pi_power_magnitude(std::uint64_t k) {
  return static_cast<std::uint64_t>(std::floor(static_cast<double>(k) * kLog10Pi)) + 1;
}

ArbReal pi_at(Bits prec) {
  const auto digits = static_cast<std::uint64_t>(static_cast<double>(prec) * 0.30103) + 10;
  return oracle::reference(oracle::Constant{TargetKind::pi, 0}, digits).value.rounded(prec);
}

ApproxResult make_result(ArbReal value, MethodId method, std::uint64_t n, unsigned terms,
                         Variant variant) {
  ApproxResult r;
  r.value = std::move(value);
  r.method = method;
  r.index_n = static_cast<std::int64_t>(n);
  r.correction_terms = terms;
  r.variant = variant;
  r.apriori_error_log10 = apriori_error_log10(method, n, terms, variant);
  return r;
}

void require_bernoulli_index(std::uint64_t m) {
  if (m % 2 != 0 || m < 10) throw DomainError("Bernoulli formulas need an even index m >= 10");
}

// 2 m! / (|B_m| 2^m prod (1 - p^-m)) as num/den.
void bernoulli_radicand(std::uint64_t m, unsigned primes, mpz_class& num, mpz_class& den) {
  const ExactRational b = bernoulli(m);
  num = 2 * factorial_exact(m) * b.get_den();
  den = abs(b.get_num()) * pow2(m);
  for (unsigned i = 0; i < primes; ++i) {
    const mpz_class pm = pow_ui(kPrimes[i], m);
    num *= pm;
    den *= pm - 1;
  }
}

}  // namespace

ApproxResult pi_bernoulli(std::uint64_t m, unsigned primes, const EvalOptions& opt) {
  require_bernoulli_index(m);
  if (primes > 4) throw DomainError("at most 4 correction primes");
  const MethodId id = primes == 0 ? MethodId::bernoulli_basic : MethodId::bernoulli_corrected;
  const Bits prec = auto_precision(opt, apriori_error_log10(id, m, primes), 1);
  mpz_class num, den;
  bernoulli_radicand(m, primes, num, den);
  ArbReal value = nth_root(real_from_ratio(num, den, prec), m);
  return make_result(std::move(value), id, m, primes, Variant::none);
}

ApproxResult pi_power_bernoulli(std::uint64_t m, const EvalOptions& opt) {
  require_bernoulli_index(m);
  const MethodId id = MethodId::bernoulli_power;
  const Bits prec = auto_precision(opt, apriori_error_log10(id, m, 4), pi_power_magnitude(m));
  mpz_class num, den;
  bernoulli_radicand(m, 4, num, den);
  return make_result(real_from_ratio(num, den, prec), id, m, 4, Variant::none);
}

ApproxResult pi_euler(std::uint64_t n, bool corrected, const EvalOptions& opt) {
  if (n < 1) throw DomainError("Euler formulas need n >= 1");
  const MethodId id = corrected ? MethodId::euler_corrected : MethodId::euler_basic;
  const std::uint64_t s = 2 * n + 1;
  const Bits prec = auto_precision(opt, apriori_error_log10(id, n, 0), 1);
  mpz_class num = factorial_exact(2 * n) * pow2(2 * n + 2);
  mpz_class den = abs(euler(2 * n));
  if (corrected) {
    const mpz_class p3 = pow_ui(3, s);
    num *= p3 - 1;
    den *= p3;
  }
  ArbReal value = nth_root(real_from_ratio(num, den, prec), s);
  return make_result(std::move(value), id, n, corrected ? 1 : 0, Variant::none);
}

ApproxResult pi_power_euler_odd(std::uint64_t n, Variant variant, const EvalOptions& opt) {
  if (n < 1) throw DomainError("Euler formulas need n >= 1");
  if (variant != Variant::as_printed && variant != Variant::beta_series) {
    throw DomainError("euler_power_odd takes the as_printed or beta_series variant");
  }
  const MethodId id = MethodId::euler_power_odd;
  const std::uint64_t s = 2 * n + 1;
  const Bits prec = auto_precision(opt, apriori_error_log10(id, n, 4, variant), pi_power_magnitude(s));
  const mpz_class p3 = pow_ui(3, s), p5 = pow_ui(5, s), p7 = pow_ui(7, s), p9 = pow_ui(9, s);
  mpz_class num = factorial_exact(2 * n) * pow2(2 * n + 2) * (p3 - 1) * (p5 + 1) * (p7 - 1);
  num *= variant == Variant::as_printed ? mpz_class(p9 - 1) : mpz_class(p9 + 1);
  const mpz_class den = abs(euler(2 * n)) * p3 * p5 * p7 * p9;
  return make_result(real_from_ratio(num, den, prec), id, n, 4, variant);
}

ApproxResult inv_pi_euler(std::uint64_t n, Variant variant, const EvalOptions& opt) {
  if (n < 1) throw DomainError("Euler formulas need n >= 1");
  if (variant != Variant::as_printed && variant != Variant::reciprocal_factor) {
    throw DomainError("euler_inverse takes the as_printed or reciprocal_factor variant");
  }
  const MethodId id = MethodId::euler_inverse;
  const std::uint64_t s = 2 * n + 1;
  const Bits prec = auto_precision(opt, apriori_error_log10(id, n, 1, variant), 1);
  const mpz_class p3 = pow_ui(3, s);
  mpz_class num = abs(euler(2 * n));
  mpz_class den = factorial_exact(2 * n) * pow2(2 * n + 2);
  if (variant == Variant::as_printed) {
    num *= p3 - 1;
    den *= p3;
  } else {
    num *= p3;
    den *= p3 - 1;
  }
  ArbReal value = nth_root(real_from_ratio(num, den, prec), s);
  return make_result(std::move(value), id, n, 1, variant);
}

ApproxResult pi_squared_ratio(RatioSource source, std::uint64_t n, const EvalOptions& opt) {
  if (n < 5) throw DomainError("ratio formulas need n >= 5");
  const MethodId id =
      source == RatioSource::bernoulli ? MethodId::ratio_bernoulli_sq : MethodId::ratio_euler_sq;
  const Bits prec = auto_precision(opt, apriori_error_log10(id, n, 0), 1);
  const mpz_class poly = mpz_class(static_cast<unsigned long>(n + 1)) *
                         static_cast<unsigned long>(2 * n + 1);
  ExactRational q;
  if (source == RatioSource::bernoulli) {
    q = abs(bernoulli(2 * n)) * poly / (2 * abs(bernoulli(2 * n + 2)));
  } else {
    q = ExactRational(8 * abs(euler(2 * n)) * poly, abs(euler(2 * n + 2)));
    q.canonicalize();
  }
  return make_result(ArbReal::from_rational(q, prec), id, n, 0, Variant::none);
}

ApproxResult factorial_approx(FactorialSource source, std::uint64_t n, unsigned stirling_terms,
                              const EvalOptions& opt) {
  const Bits log_n = static_cast<Bits>(std::bit_width(n + 1));
  switch (source) {
    case FactorialSource::bernoulli:
    case FactorialSource::euler: {
      if (n % 2 != 0 || n < 2) {
        throw DomainError("Bernoulli/Euler factorial formulas need an even n >= 2");
      }
      const MethodId id = source == FactorialSource::bernoulli ? MethodId::factorial_bernoulli
                                                               : MethodId::factorial_euler;
      const Bits prec = auto_precision(opt, apriori_error_log10(id, n, 0), 0);
      const Bits wp = prec + log_n + 16;
      const ArbReal pi = pi_at(wp);
      ArbReal value;
      if (source == FactorialSource::bernoulli) {
        const ArbReal two_pi_n = pow_int(pi.mul_2exp(1), static_cast<std::int64_t>(n));
        const ExactRational half_b = abs(bernoulli(n)) / 2;
        value = mul(two_pi_n, ArbReal::from_rational(half_b, wp), prec);
      } else {
        const ArbReal pi_n1 = pow_int(pi, static_cast<std::int64_t>(n + 1));
        value = mul(pi_n1, ArbReal::from_integer(abs(euler(n)), wp), wp)
                    .mul_2exp(-static_cast<std::int64_t>(n + 2))
                    .rounded(prec);
      }
      return make_result(std::move(value), id, n, 0, Variant::none);
    }
    case FactorialSource::stirling: {
      if (n < 1) throw DomainError("Stirling's series needs n >= 1");
      if (stirling_terms < 1 || stirling_terms > 4) {
        throw DomainError("Stirling bracket takes 1..4 terms");
      }
      const MethodId id = MethodId::factorial_stirling;
      const Bits prec = auto_precision(opt, apriori_error_log10(id, n, stirling_terms), 0);
      const Bits wp = prec + 2 * log_n + 32;
      const mpz_class nz = static_cast<unsigned long>(n);
      const ExactRational coeffs[] = {ExactRational(1), ExactRational(1, 12), ExactRational(1, 288),
                                      ExactRational(-139, 51840)};
      ExactRational series = 0;
      mpz_class npow = 1;
      for (unsigned j = 0; j < stirling_terms; ++j) {
        series += coeffs[j] / ExactRational(npow);
        npow *= nz;
      }
      mpz_class n_to_n;
      mpz_pow_ui(n_to_n.get_mpz_t(), nz.get_mpz_t(), n);
      const ArbReal e_neg = exp(ArbReal::from_integer(-nz, wp));
      const ArbReal root = sqrt(mul(pi_at(wp).mul_2exp(1), ArbReal::from_integer(nz, wp), wp));
      ArbReal value = mul(ArbReal::from_integer(n_to_n, wp), e_neg, wp);
      value = mul(value, root, wp);
      value = mul(value, ArbReal::from_rational(series, wp), prec);
      return make_result(std::move(value), id, n, stirling_terms, Variant::none);
    }
  }
  throw DomainError("unknown factorial source");
}

ApproxResult pi_stirling(std::uint64_t n, const EvalOptions& opt) {
  if (n < 2) throw DomainError("pi_stirling needs n >= 2");
  const MethodId id = MethodId::pi_stirling;
  const Bits prec = auto_precision(opt, apriori_error_log10(id, n, 3), 1);
  const Bits wp = prec + 32;
  const mpz_class nz = static_cast<unsigned long>(n);
  const mpz_class n2 = nz * nz;
  const mpz_class g = factorial_exact(n - 1);
  mpz_class n_2n;
  mpz_pow_ui(n_2n.get_mpz_t(), nz.get_mpz_t(), 2 * n);
  // Gamma(n)^2 n / n^(2n) over the three bracket factors, kept exact.
  const mpz_class num = g * g * nz * (6 * nz) * (36 * n2) * (72 * n2);
  const mpz_class den = n_2n * 2 * (6 * nz + 1) * (36 * n2 - 5) * (72 * n2 + 1);
  const ArbReal exact_part = real_from_ratio(num, den, wp);
  const ArbReal e2n = exp(ArbReal::from_integer(2 * nz, wp));
  return make_result(mul(exact_part, e2n, prec), id, n, 3, Variant::none);
}

ApproxResult pi_partition(std::uint64_t n, const EvalOptions& opt) {
  if (n < 10) throw DomainError("pi_partition needs n >= 10");
  const MethodId id = MethodId::pi_partition;
  const Bits prec = auto_precision(opt, apriori_error_log10(id, n, 0), 1);
  const Bits wp = prec + 16;
  const mpz_class nz = static_cast<unsigned long>(n);
  const mpz_class p = partition(n);
  const mpz_class arg = 48 * p * p * nz * nz;
  const ArbReal log_term = ln(ArbReal::from_integer(arg, wp));
  const ArbReal root6 = sqrt(ArbReal::from_int(6, wp));
  const ArbReal denom = sqrt(ArbReal::from_integer(nz, wp)).mul_2exp(2);
  return make_result(div(mul(log_term, root6, wp), denom, prec), id, n, 0, Variant::none);
}

ApproxResult pi_central_binomial(std::uint64_t n, unsigned series_terms, const EvalOptions& opt) {
  if (n < 1) throw DomainError("pi_central_binomial needs n >= 1");
  if (series_terms > 4) throw DomainError("at most 4 series terms");
  const MethodId id = series_terms == 0 ? MethodId::pi_binomial_basic : MethodId::pi_binomial_series;
  const Bits prec = auto_precision(opt, apriori_error_log10(id, n, series_terms), 1);
  const mpz_class nz = static_cast<unsigned long>(n);
  const ExactRational coeffs[] = {ExactRational(1), ExactRational(1, 4), ExactRational(1, 32),
                                  ExactRational(-1, 128), ExactRational(-5, 2048)};
  ExactRational series = 0;
  mpz_class npow = 1;
  for (unsigned j = 0; j <= series_terms; ++j) {
    series += coeffs[j] / ExactRational(npow);
    npow *= nz;
  }
  const mpz_class c = central_binomial(n);
  ExactRational q(pow2(4 * n), nz * c * c);
  q.canonicalize();
  q /= series;
  return make_result(ArbReal::from_rational(q, prec), id, n, series_terms, Variant::none);
}

ApproxResult evaluate(MethodId method, std::uint64_t n, unsigned terms, Variant variant,
                      const EvalOptions& opt) {
  if (variant == Variant::none) variant = default_variant(method);
  switch (method) {
    case MethodId::bernoulli_basic:
      return pi_bernoulli(n, 0, opt);
    case MethodId::bernoulli_corrected:
      if (terms < 1) throw DomainError("bernoulli_corrected needs 1..4 primes");
      return pi_bernoulli(n, terms, opt);
    case MethodId::bernoulli_power:
      return pi_power_bernoulli(n, opt);
    case MethodId::euler_basic:
      return pi_euler(n, false, opt);
    case MethodId::euler_corrected:
      return pi_euler(n, true, opt);
    case MethodId::euler_power_odd:
      return pi_power_euler_odd(n, variant, opt);
    case MethodId::euler_inverse:
      return inv_pi_euler(n, variant, opt);
    case MethodId::ratio_bernoulli_sq:
      return pi_squared_ratio(RatioSource::bernoulli, n, opt);
    case MethodId::ratio_euler_sq:
      return pi_squared_ratio(RatioSource::euler, n, opt);
    case MethodId::factorial_bernoulli:
      return factorial_approx(FactorialSource::bernoulli, n, 0, opt);
    case MethodId::factorial_euler:
      return factorial_approx(FactorialSource::euler, n, 0, opt);
    case MethodId::factorial_stirling:
      return factorial_approx(FactorialSource::stirling, n, terms, opt);
    case MethodId::pi_stirling:
      return pi_stirling(n, opt);
    case MethodId::pi_partition:
      return pi_partition(n, opt);
    case MethodId::pi_binomial_basic:
      return pi_central_binomial(n, 0, opt);
    case MethodId::pi_binomial_series:
      if (terms < 1) throw DomainError("pi_binomial_series needs 1..4 series terms");
      return pi_central_binomial(n, terms, opt);
  }
  throw DomainError("unknown method");
}

void prepare_tables(MethodId method, std::uint64_t n) {
  switch (method) {
    case MethodId::bernoulli_basic:
    case MethodId::bernoulli_corrected:
    case MethodId::bernoulli_power:
    case MethodId::factorial_bernoulli:
    case MethodId::factorial_euler:
      zigzag_table().ensure(n - n % 2);
      break;
    case MethodId::euler_basic:
    case MethodId::euler_corrected:
    case MethodId::euler_power_odd:
    case MethodId::euler_inverse:
      zigzag_table().ensure(2 * n);
      break;
    case MethodId::ratio_bernoulli_sq:
    case MethodId::ratio_euler_sq:
      zigzag_table().ensure(2 * n + 2);
      break;
    case MethodId::pi_partition:
      partition_table().ensure(n);
      break;
    default:
      break;
  }
}

}  // namespace df
