#pragma once

// Asymptotic approximations of pi, pi^m, 1/pi, pi^2 and n! built from
// Bernoulli numbers, Euler numbers, partition counts, central binomial
// coefficients and Stirling's series.
//
// Every radicand or ratio is assembled exactly (integers and rationals) and
// rounded once on conversion to ArbReal. The per-method table, with the
// formula each tag evaluates, lives in docs/methods.md.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "df/arb_real.hpp"

namespace df {

enum class MethodId {
  bernoulli_basic,
  bernoulli_corrected,
  bernoulli_power,
  euler_basic,
  euler_corrected,
  euler_power_odd,
  euler_inverse,
  ratio_bernoulli_sq,
  ratio_euler_sq,
  factorial_bernoulli,
  factorial_euler,
  factorial_stirling,
  pi_stirling,
  pi_partition,
  pi_binomial_basic,
  pi_binomial_series,
};

/// What a method approximates.
enum class TargetKind { pi, pi_power, inv_pi, pi_squared, factorial };

/// Whether apriori/measured exponents refer to |value - truth| or to
/// |value/truth - 1|.
enum class ErrorKind { absolute, relative };

/// Sign switches for the two formulas whose printed factors disagree with
/// the underlying series (see docs/methods.md).
enum class Variant { none, as_printed, beta_series, reciprocal_factor };

struct MethodInfo {
  MethodId id;
  std::string_view name;      // snake_case tag
  std::string_view cli_name;  // kebab-case spelling used on the command line
  TargetKind target;
  ErrorKind error_kind;
  std::string_view formula;
};

const std::vector<MethodInfo>& method_table();
const MethodInfo& method_info(MethodId id);
/// Accepts either spelling; throws DomainError for unknown names.
MethodId method_from_name(std::string_view name);
std::string_view to_string(Variant v);
Variant variant_from_name(std::string_view name);

struct ApproxResult {
  ArbReal value;
  MethodId method = MethodId::bernoulli_basic;
  std::int64_t index_n = 0;
  std::uint32_t correction_terms = 0;
  Variant variant = Variant::none;
  /// Predicted floor(log10) of the error (relative for factorial methods).
  std::int64_t apriori_error_log10 = 0;
  std::optional<std::int64_t> measured_error_log10;
};

/// Evaluation knobs. precision_bits = 0 picks a precision from the a-priori
/// error, the magnitude of the result and `extra_digits` of slack.
struct EvalOptions {
  Bits precision_bits = 0;
  std::uint64_t extra_digits = 16;
};

/// (2 m! / (|B_m| 2^m prod_{p in first `primes` primes} (1 - p^-m)))^(1/m);
/// m even >= 10, primes in [0, 4].
ApproxResult pi_bernoulli(std::uint64_t m, unsigned primes, const EvalOptions& opt = {});
/// pi^m from the four-prime corrected radicand, no root taken.
ApproxResult pi_power_bernoulli(std::uint64_t m, const EvalOptions& opt = {});
/// ((2n)! 2^(2n+2) c / |E_2n|)^(1/(2n+1)), c = 1 or 1 - 3^-(2n+1).
ApproxResult pi_euler(std::uint64_t n, bool corrected, const EvalOptions& opt = {});
/// pi^(2n+1) from |E_2n| with four odd-base factors; `variant` selects the
/// sign of the 9^-(2n+1) factor (as_printed: minus, beta_series: plus).
ApproxResult pi_power_euler_odd(std::uint64_t n, Variant variant, const EvalOptions& opt = {});
/// 1/pi from |E_2n|; as_printed multiplies by (1 - 3^-(2n+1)),
/// reciprocal_factor divides by it.
ApproxResult inv_pi_euler(std::uint64_t n, Variant variant, const EvalOptions& opt = {});

enum class RatioSource { bernoulli, euler };
/// pi^2 from two consecutive Bernoulli or Euler numbers; n >= 5.
ApproxResult pi_squared_ratio(RatioSource source, std::uint64_t n, const EvalOptions& opt = {});

enum class FactorialSource { bernoulli, euler, stirling };
/// n! from (2 pi)^n |B_n| / 2, pi^(n+1) |E_n| / 2^(n+2), or Stirling's
/// series truncated to `stirling_terms` bracket terms (1..4, leading 1
/// included).
ApproxResult factorial_approx(FactorialSource source, std::uint64_t n, unsigned stirling_terms = 4,
                              const EvalOptions& opt = {});

/// Gamma(n)^2 n^(1-2n) e^(2n) / (2 (1 + 1/6n)(1 - 5/36n^2)(1 + 1/72n^2)).
ApproxResult pi_stirling(std::uint64_t n, const EvalOptions& opt = {});
/// ln(48 p(n)^2 n^2) sqrt(6) / (4 sqrt(n)).
ApproxResult pi_partition(std::uint64_t n, const EvalOptions& opt = {});
/// 16^n / (n C(2n,n)^2 S) with S the asymptotic series cut after
/// `series_terms` correction terms (0..4).
ApproxResult pi_central_binomial(std::uint64_t n, unsigned series_terms,
                                 const EvalOptions& opt = {});

/// Single dispatcher used by the CLI and the sweep driver. `terms` means
/// primes / series terms / Stirling bracket terms depending on the method.
ApproxResult evaluate(MethodId method, std::uint64_t n, unsigned terms, Variant variant,
                      const EvalOptions& opt = {});
/// Throws DomainError when evaluate() would reject the arguments, without
/// computing anything.
void validate_request(MethodId method, std::uint64_t n, unsigned terms, Variant variant);
/// Natural `terms` default for a method (4 primes, 4 series terms, ...).
unsigned default_terms(MethodId method);
/// Natural variant for a method (the better-behaved one where there is a
/// choice).
Variant default_variant(MethodId method);

/// Predicted floor(log10) error for a method at index n, without evaluating.
std::int64_t apriori_error_log10(MethodId method, std::uint64_t n, unsigned terms,
                                 Variant variant = Variant::none);

/// log10 of the relative width of the Bernoulli or Euler two-sided bound at
/// index 2n: log10(2^(1-2n) / (1 - 2^(1-2n))) or log10(3^(-1-2n) / (1 + 3^(-1-2n))).
double apriori_bound_gap(MethodId method, std::uint64_t n);

/// floor(n log10 p) where p is the (product_terms+1)-th prime: predicted
/// correct decimals of the Bernoulli formula with that many Euler factors.
std::uint64_t digits_gain_estimate(std::uint64_t n, std::uint64_t product_terms);
/// The k-th prime (1-based). Exact by sieve up to k = 10^6, otherwise the
/// Cipolla asymptotic estimate.
double kth_prime(std::uint64_t k);

/// Ensures the special-number tables cover `method` at index n so the
/// evaluation can run concurrently with others.
void prepare_tables(MethodId method, std::uint64_t n);

}  // namespace df
