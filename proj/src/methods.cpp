#include <algorithm>
#include <cmath>

#include "df/approximants.hpp"

namespace df {

namespace {

constexpr double kLog10Pi = 0.49714987269413385435;
constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11};

std::int64_t floor_of(double x) { return static_cast<std::int64_t>(std::floor(x + 1e-9)); }

double log10d(double x) { return std::log10(x); }

}  // namespace

const std::vector<MethodInfo>& method_table() {
  static const std::vector<MethodInfo> table = {
      {MethodId::bernoulli_basic, "bernoulli_basic", "bernoulli-basic", TargetKind::pi,
       ErrorKind::absolute, "pi ~ (2 m! / (|B_m| 2^m))^(1/m)"},
      {MethodId::bernoulli_corrected, "bernoulli_corrected", "bernoulli-corrected", TargetKind::pi,
       ErrorKind::absolute,
       "pi ~ (2 m! / (|B_m| 2^m (1-2^-m)(1-3^-m)(1-5^-m)(1-7^-m)))^(1/m)"},
      {MethodId::bernoulli_power, "bernoulli_power", "bernoulli-power", TargetKind::pi_power,
       ErrorKind::absolute, "pi^m ~ 2 m! / (|B_m| 2^m (1-2^-m)(1-3^-m)(1-5^-m)(1-7^-m))"},
      {MethodId::euler_basic, "euler_basic", "euler-basic", TargetKind::pi, ErrorKind::absolute,
       "pi ~ ((2n)! 2^(2n+2) / |E_2n|)^(1/(2n+1))"},
      {MethodId::euler_corrected, "euler_corrected", "euler-corrected", TargetKind::pi,
       ErrorKind::absolute, "pi ~ ((2n)! 2^(2n+2) / |E_2n| (1 - 3^-(2n+1)))^(1/(2n+1))"},
      {MethodId::euler_power_odd, "euler_power_odd", "euler-power-odd", TargetKind::pi_power,
       ErrorKind::absolute,
       "pi^(2n+1) ~ (2n)! 2^(2n+2) / |E_2n| (1-3^-s)(1+5^-s)(1-7^-s)(1-+9^-s), s = 2n+1"},
      {MethodId::euler_inverse, "euler_inverse", "euler-inverse", TargetKind::inv_pi,
       ErrorKind::absolute, "1/pi ~ (|E_2n| / ((2n)! 2^(2n+2)) (1 - 3^-(2n+1))^(+-1))^(1/(2n+1))"},
      {MethodId::ratio_bernoulli_sq, "ratio_bernoulli_sq", "ratio-bernoulli-sq",
       TargetKind::pi_squared, ErrorKind::absolute,
       "pi^2 ~ (1/2) |B_2n| (n+1)(2n+1) / |B_2n+2|"},
      {MethodId::ratio_euler_sq, "ratio_euler_sq", "ratio-euler-sq", TargetKind::pi_squared,
       ErrorKind::absolute, "pi^2 ~ 8 |E_2n| (n+1)(2n+1) / |E_2n+2|"},
      {MethodId::factorial_bernoulli, "factorial_bernoulli", "factorial-bernoulli",
       TargetKind::factorial, ErrorKind::relative, "n! ~ (2 pi)^n |B_n| / 2"},
      {MethodId::factorial_euler, "factorial_euler", "factorial-euler", TargetKind::factorial,
       ErrorKind::relative, "n! ~ pi^(n+1) |E_n| / 2^(n+2)"},
      {MethodId::factorial_stirling, "factorial_stirling", "factorial-stirling",
       TargetKind::factorial, ErrorKind::relative,
       "n! ~ (n/e)^n sqrt(2 pi n) [1 + 1/12n + 1/288n^2 - 139/51840n^3]"},
      {MethodId::pi_stirling, "pi_stirling", "pi-stirling", TargetKind::pi, ErrorKind::absolute,
       "pi ~ Gamma(n)^2 n^(1-2n) e^(2n) / (2 (1 + 1/6n)(1 - 5/36n^2)(1 + 1/72n^2))"},
      {MethodId::pi_partition, "pi_partition", "pi-partition", TargetKind::pi, ErrorKind::absolute,
       "pi ~ ln(48 p(n)^2 n^2) sqrt(6) / (4 sqrt(n))"},
      {MethodId::pi_binomial_basic, "pi_binomial_basic", "pi-binomial-basic", TargetKind::pi,
       ErrorKind::absolute, "pi ~ 16^n / (n C(2n,n)^2)"},
      {MethodId::pi_binomial_series, "pi_binomial_series", "pi-binomial-series", TargetKind::pi,
       ErrorKind::absolute,
       "pi ~ 16^n / (n C(2n,n)^2 [1 + 1/4n + 1/32n^2 - 1/128n^3 - 5/2048n^4])"},
  };
  return table;
}

const MethodInfo& method_info(MethodId id) {
  for (const auto& m : method_table()) {
    if (m.id == id) return m;
  }
  throw DomainError("unknown method id");
}

MethodId method_from_name(std::string_view name) {
  for (const auto& m : method_table()) {
    if (m.name == name || m.cli_name == name) return m.id;
  }
  throw DomainError("unknown method '" + std::string(name) + "'");
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::none:
      return "none";
    case Variant::as_printed:
      return "as_printed";
    case Variant::beta_series:
      return "beta_series";
    case Variant::reciprocal_factor:
      return "reciprocal_factor";
  }
  return "?";
}

Variant variant_from_name(std::string_view name) {
  if (name == "none") return Variant::none;
  if (name == "as_printed" || name == "as-printed") return Variant::as_printed;
  if (name == "beta_series" || name == "beta-series") return Variant::beta_series;
  if (name == "reciprocal_factor" || name == "reciprocal-factor") return Variant::reciprocal_factor;
  throw DomainError("unknown variant '" + std::string(name) + "'");
}

unsigned default_terms(MethodId method) {
  switch (method) {
    case MethodId::bernoulli_corrected:
    case MethodId::pi_binomial_series:
    case MethodId::factorial_stirling:
      return 4;
    default:
      return 0;
  }
}

Variant default_variant(MethodId method) {
  switch (method) {
    case MethodId::euler_power_odd:
      return Variant::beta_series;
    case MethodId::euler_inverse:
      return Variant::reciprocal_factor;
    default:
      return Variant::none;
  }
}

void validate_request(MethodId method, std::uint64_t n, unsigned terms, Variant variant) {
  if (variant == Variant::none) variant = default_variant(method);
  auto need = [](bool ok, const char* what) {
    if (!ok) throw DomainError(what);
  };
  switch (method) {
    case MethodId::bernoulli_basic:
    case MethodId::bernoulli_power:
      need(n % 2 == 0 && n >= 10, "Bernoulli formulas need an even index m >= 10");
      break;
    case MethodId::bernoulli_corrected:
      need(n % 2 == 0 && n >= 10, "Bernoulli formulas need an even index m >= 10");
      need(terms >= 1 && terms <= 4, "bernoulli_corrected needs 1..4 primes");
      break;
    case MethodId::euler_basic:
    case MethodId::euler_corrected:
      need(n >= 1, "Euler formulas need n >= 1");
      break;
    case MethodId::euler_power_odd:
      need(n >= 1, "Euler formulas need n >= 1");
      need(variant == Variant::as_printed || variant == Variant::beta_series,
           "euler_power_odd takes the as_printed or beta_series variant");
      break;
    case MethodId::euler_inverse:
      need(n >= 1, "Euler formulas need n >= 1");
      need(variant == Variant::as_printed || variant == Variant::reciprocal_factor,
           "euler_inverse takes the as_printed or reciprocal_factor variant");
      break;
    case MethodId::ratio_bernoulli_sq:
    case MethodId::ratio_euler_sq:
      need(n >= 5, "ratio formulas need n >= 5");
      break;
    case MethodId::factorial_bernoulli:
    case MethodId::factorial_euler:
      need(n % 2 == 0 && n >= 2, "Bernoulli/Euler factorial formulas need an even n >= 2");
      break;
    case MethodId::factorial_stirling:
      need(n >= 1, "Stirling's series needs n >= 1");
      need(terms >= 1 && terms <= 4, "Stirling bracket takes 1..4 terms");
      break;
    case MethodId::pi_stirling:
      need(n >= 2, "pi_stirling needs n >= 2");
      break;
    case MethodId::pi_partition:
      need(n >= 10, "pi_partition needs n >= 10");
      break;
    case MethodId::pi_binomial_basic:
      need(n >= 1, "pi_central_binomial needs n >= 1");
      break;
    case MethodId::pi_binomial_series:
      need(n >= 1, "pi_central_binomial needs n >= 1");
      need(terms >= 1 && terms <= 4, "pi_binomial_series needs 1..4 series terms");
      break;
  }
  if (method != MethodId::euler_power_odd && method != MethodId::euler_inverse &&
      variant != Variant::none) {
    throw DomainError("only euler_power_odd and euler_inverse take a variant");
  }
}

std::int64_t apriori_error_log10(MethodId method, std::uint64_t n, unsigned terms,
                                 Variant variant) {
  const auto nd = static_cast<double>(n);
  const double s = 2.0 * nd + 1.0;
  switch (method) {
    case MethodId::bernoulli_basic:
      return -floor_of(nd * log10d(2));
    case MethodId::bernoulli_corrected:
      return -floor_of(nd * log10d(kPrimes[std::min(terms, 4U)]));
    case MethodId::bernoulli_power:
      return -floor_of(nd * log10d(11)) + floor_of(nd * kLog10Pi);
    case MethodId::euler_basic:
      return -floor_of(s * log10d(3));
    case MethodId::euler_corrected:
      return -floor_of(s * log10d(5));
    case MethodId::euler_power_odd:
      return -floor_of(s * log10d(variant == Variant::as_printed ? 9 : 11)) +
             floor_of(s * kLog10Pi);
    case MethodId::euler_inverse:
      return -floor_of(s * log10d(variant == Variant::as_printed ? 3 : 5));
    case MethodId::ratio_bernoulli_sq:
      return -floor_of(nd * log10d(4));
    case MethodId::ratio_euler_sq:
      return -floor_of(nd * log10d(9));
    case MethodId::factorial_bernoulli:
      return -floor_of(nd * log10d(2));
    case MethodId::factorial_euler:
      return -floor_of(nd * log10d(3));
    case MethodId::factorial_stirling:
      return -floor_of(static_cast<double>(std::max(terms, 1U)) * log10d(nd));
    case MethodId::pi_stirling:
      return -floor_of(2.0 * log10d(nd));
    case MethodId::pi_partition:
    case MethodId::pi_binomial_basic:
      return -floor_of(log10d(nd));
    case MethodId::pi_binomial_series:
      return -floor_of(static_cast<double>(terms + 1) * log10d(nd));
  }
  return 0;
}

double apriori_bound_gap(MethodId method, std::uint64_t n) {
  if (n < 1) throw DomainError("apriori_bound_gap needs n >= 1");
  const auto nd = static_cast<double>(n);
  const double ln10 = std::log(10.0);
  if (method == MethodId::bernoulli_basic) {
    // log10(2^(1-2n) / (1 - 2^(1-2n)))
    const double e = 1.0 - 2.0 * nd;
    return e * std::log10(2.0) - std::log1p(-std::exp2(e)) / ln10;
  }
  if (method == MethodId::euler_basic) {
    const double e = -1.0 - 2.0 * nd;
    return e * std::log10(3.0) - std::log1p(std::pow(3.0, e)) / ln10;
  }
  throw DomainError("apriori_bound_gap is defined for bernoulli_basic and euler_basic only");
}

double kth_prime(std::uint64_t k) {
  if (k == 0) throw DomainError("primes are numbered from 1");
  constexpr std::uint64_t kSieveLimit = 1000000;
  if (k <= kSieveLimit) {
    const double kd = static_cast<double>(std::max<std::uint64_t>(k, 6));
    const auto bound = static_cast<std::size_t>(kd * (std::log(kd) + std::log(std::log(kd)))) + 1;
    std::vector<bool> composite(bound + 1, false);
    std::uint64_t count = 0;
    for (std::size_t i = 2; i <= bound; ++i) {
      if (composite[i]) continue;
      if (++count == k) return static_cast<double>(i);
      for (std::size_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
    throw InternalInconsistency("prime sieve bound too small");
  }
  const double kd = static_cast<double>(k);
  const double l = std::log(kd);
  const double ll = std::log(l);
  return kd * (l + ll - 1.0 + (ll - 2.0) / l - (ll * ll - 6.0 * ll + 11.0) / (2.0 * l * l));
}

std::uint64_t digits_gain_estimate(std::uint64_t n, std::uint64_t product_terms) {
  if (n < 10) throw DomainError("digits_gain_estimate needs n >= 10");
  const double p = kth_prime(product_terms + 1);
  return static_cast<std::uint64_t>(std::floor(static_cast<double>(n) * std::log10(p) + 1e-9));
}

}  // namespace df
