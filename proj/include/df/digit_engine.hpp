#pragma once

// Digit extraction from certified approximations.
//
// position(n, x, b) = floor(b * frac(b^n * x)): position 0 is the first digit
// after the point. For pi^k targets the positions index the significant
// digit string instead (position 0 is the leading digit), since the
// approximation of pi^k is only accurate relative to its size.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "df/approximants.hpp"
#include "df/arb_real.hpp"

namespace df {

struct DigitTarget {
  TargetKind kind = TargetKind::pi;
  std::uint64_t power = 0;  // exponent for pi_power

  static DigitTarget pi() { return {TargetKind::pi, 0}; }
  static DigitTarget pi_power(std::uint64_t k) { return {TargetKind::pi_power, k}; }
  static DigitTarget inv_pi() { return {TargetKind::inv_pi, 0}; }
  static DigitTarget pi_squared() { return {TargetKind::pi_squared, 0}; }
};

struct DigitResult {
  std::uint64_t position = 0;
  int base = 10;
  int digit = 0;
  bool stable = false;
  MethodId method = MethodId::bernoulli_corrected;
  std::int64_t index_n = 0;
  Bits precision_used = 0;
};

struct RenderedDigits {
  std::string integer_part;
  std::string fractional_digits;
  int base = 10;
  /// Nonzero only for scientific rendering: value = integer.fraction * base^exponent.
  std::int64_t exponent = 0;

  std::string to_string() const;
};

/// Marks a value as exact for render(): no error interval, no hazard check.
constexpr std::int64_t kExactValue = std::numeric_limits<std::int64_t>::min();

struct DigitOptions {
  std::uint64_t max_index = 20000;
};

char digit_char(int d);

/// floor(base * frac(base^n * x)). Throws PrecisionError when x is too coarse
/// for base^n * x to keep 64 fractional bits.
int position(std::uint64_t n, const ArbReal& x, int base);

/// floor(x * base^scale) mod base, for any sign of scale, with the same
/// 64-bit precision requirement.
int digit_at_scale(const ArbReal& x, int base, std::int64_t scale);

/// floor(log_base |x|), exact.
std::int64_t floor_log_base(const ArbReal& x, int base);

/// Default formula for a target (bernoulli_corrected for pi, ...).
MethodId default_method(const DigitTarget& target);

/// Smallest admissible index whose a-priori error resolves a digit whose
/// place value is 10^place_log10 with `margin` decimal orders to spare.
std::uint64_t select_index(MethodId method, double place_log10, std::int64_t margin,
                           std::uint64_t max_index);

/// The digit of `target` at position n in `base`, certified against the
/// formula's a-priori error and a second evaluation 64 bits finer. Throws
/// PrecisionError if the method cannot reach the position and
/// BoundaryHazard if the digit stays ambiguous after one escalation.
DigitResult digit_of(const DigitTarget& target, std::uint64_t n, int base,
                     std::optional<MethodId> method = std::nullopt,
                     const DigitOptions& options = {});

/// Integer part and `count` fractional digits, truncated. The true value is
/// taken to lie within base^certified_error_log_base of x; count must be at
/// most |certified_error_log_base| - 2.
RenderedDigits render(const ArbReal& x, int base, std::uint64_t count,
                      std::int64_t certified_error_log_base);

/// `count` significant digits as d.ddd * base^E, for a value known to a
/// relative error of base^certified_rel_error_log_base.
RenderedDigits render_significant(const ArbReal& x, int base, std::uint64_t count,
                                  std::int64_t certified_rel_error_log_base);

}  // namespace df
