#pragma once

// Independent reference values for error measurement and digit checks.
//
// pi comes from two different Machin-type arctangent identities that must
// agree; nothing here touches Bernoulli or Euler numbers. Powers, the
// reciprocal and the square are derived from reference pi at extended
// precision.

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "df/approximants.hpp"
#include "df/arb_real.hpp"

namespace df::oracle {

struct Constant {
  TargetKind kind = TargetKind::pi;
  /// Exponent for pi_power, n for factorial; unused otherwise.
  std::uint64_t k = 0;
};

struct Reference {
  Constant constant;
  ArbReal value;
  /// Correct digits after the decimal point (significant digits for
  /// factorial references, which are exact).
  std::uint64_t certified_digits10 = 0;
};

constexpr std::uint64_t kMaxReferenceDigits = 20000;
constexpr std::int64_t kBelowCertificationFloor = std::numeric_limits<std::int64_t>::min();

/// pi to digits10 decimals (1 <= digits10 <= 20000).
Reference reference_pi(std::uint64_t digits10);
/// Any supported constant to digits10 decimals.
Reference reference(Constant constant, std::uint64_t digits10);
/// The constant a method approximates (pi^m for bernoulli_power, n! for the
/// factorial methods, ...).
Constant constant_for(const ApproxResult& approx);

/// The two fixed-point pi values (scaled by 2^bits) from 16 atan(1/5) -
/// 4 atan(1/239) and 48 atan(1/18) + 32 atan(1/57) - 20 atan(1/239).
struct MachinPair {
  mpz_class machin;
  mpz_class gauss;
  std::uint64_t bits = 0;
  /// Bound on |value - pi 2^bits| for each, in units of 2^-bits.
  std::uint64_t error_units = 0;
};
MachinPair machin_pair(std::uint64_t bits, bool parallel = true);

/// Signed error approx - reference (relative for factorial methods), and
/// its floor(log10) or kBelowCertificationFloor.
struct ErrorMeasure {
  ArbReal error;
  std::int64_t log10 = kBelowCertificationFloor;
  bool below_floor() const { return log10 == kBelowCertificationFloor; }
};
ErrorMeasure measure_error(const ApproxResult& approx, const Reference& ref);
/// floor(log10|approx - ref|); also stored in approx.measured_error_log10.
/// Throws PrecisionError when the reference is not precise enough for the
/// approximation's predicted error.
std::int64_t measured_error_log10(ApproxResult& approx, const Reference& ref);
/// Reference good enough to measure `approx` (|apriori| + 5 digits and more).
Reference reference_for(const ApproxResult& approx, std::uint64_t extra_digits = 30);

/// "3." followed by 1000 decimals of pi, as published.
std::string_view embedded_pi_digits();
/// First `count` decimals of x (truncated), after "<int>.".
std::string decimal_string(const ArbReal& x, std::uint64_t count);
/// True when `constant` (in the embedded format) equals the computed
/// expansion of reference pi.
bool embedded_constant_matches(std::string_view constant);

}  // namespace df::oracle
