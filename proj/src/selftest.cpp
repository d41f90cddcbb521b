#include "df/selftest.hpp"

#include <algorithm>

#include "df/digit_engine.hpp"
#include "df/oracle.hpp"
#include "df/special_numbers.hpp"

namespace df {

namespace {

mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

SelftestCheck check_embedded(const SelftestOptions& opt) {
  SelftestCheck c{"embedded-constant", false, {}};
  const std::string_view s =
      opt.embedded_pi_override ? std::string_view(*opt.embedded_pi_override) : oracle::embedded_pi_digits();
  c.passed = oracle::embedded_constant_matches(s);
  if (!c.passed) c.detail = "embedded-constant mismatch";
  return c;
}

SelftestCheck check_dual_identity() {
  SelftestCheck c{"oracle-dual-identity", true, {}};
  for (std::uint64_t digits : {10, 100, 1000}) {
    const std::uint64_t bits = bits_for_digits(digits + 20, 10);
    const oracle::MachinPair par = oracle::machin_pair(bits, true);
    const oracle::MachinPair ser = oracle::machin_pair(bits, false);
    const mpz_class diff = abs(par.machin - par.gauss);
    if (diff > mpz_class(2 * par.error_units)) {
      c.passed = false;
      c.detail = "Machin and Gauss identities disagree at " + std::to_string(digits) + " digits";
      return c;
    }
    if (par.machin != ser.machin || par.gauss != ser.gauss) {
      c.passed = false;
      c.detail = "parallel arctangent differs from serial at " + std::to_string(digits) + " digits";
      return c;
    }
  }
  return c;
}

SelftestCheck check_sandwich(std::uint64_t max_n) {
  SelftestCheck c{"sandwich-inequalities", true, {}};
  const SandwichResult r = check_sandwich_bounds(max_n, 200);
  if (!r.violations.empty()) {
    c.passed = false;
    c.detail = "violated at " + r.violations.front();
  } else if (!r.undecided.empty()) {
    c.passed = false;
    c.detail = "undecided at " + r.undecided.front();
  }
  return c;
}

// Definitional recurrences, independent of the zigzag triangle.
SelftestCheck check_recurrences() {
  SelftestCheck c{"recurrence-cross-check", true, {}};
  constexpr unsigned long kMax = 60;
  std::vector<mpq_class> b(kMax + 1);
  b[0] = 1;
  for (unsigned long m = 1; m <= kMax; ++m) {
    mpq_class s = 0;
    for (unsigned long j = 0; j < m; ++j) s += mpq_class(binom(m + 1, j)) * b[j];
    b[m] = -s / mpq_class(m + 1);
    b[m].canonicalize();
  }
  std::vector<mpz_class> e(kMax / 2 + 1);
  e[0] = 1;
  for (unsigned long n = 1; n <= kMax / 2; ++n) {
    mpz_class s = 0;
    for (unsigned long k = 0; k < n; ++k) s += binom(2 * n, 2 * k) * e[k];
    e[n] = -s;
  }
  for (unsigned long k = 0; k <= kMax; k += 2) {
    if (bernoulli(k) != b[k]) {
      c.passed = false;
      c.detail = "B_" + std::to_string(k) + " differs from the recurrence";
      return c;
    }
    if (euler(k) != e[k / 2]) {
      c.passed = false;
      c.detail = "E_" + std::to_string(k) + " differs from the recurrence";
      return c;
    }
  }
  // p(n) by counting partitions into parts <= k.
  constexpr std::size_t kP = 40;
  std::vector<mpz_class> ways(kP + 1, 0);
  ways[0] = 1;
  for (std::size_t part = 1; part <= kP; ++part) {
    for (std::size_t v = part; v <= kP; ++v) ways[v] += ways[v - part];
  }
  for (std::size_t n = 0; n <= kP; ++n) {
    if (partition(n) != ways[n]) {
      c.passed = false;
      c.detail = "p(" + std::to_string(n) + ") differs from direct counting";
      return c;
    }
  }
  return c;
}

SelftestCheck check_digits(std::uint64_t max_n) {
  SelftestCheck c{"digit-agreement", true, {}};
  const oracle::Reference ref = oracle::reference_pi(200);
  for (int base : {2, 10, 16}) {
    for (std::uint64_t n = 0; n <= max_n; ++n) {
      const DigitResult r = digit_of(DigitTarget::pi(), n, base);
      const int expected = position(n, ref.value, base);
      if (!r.stable || r.digit != expected) {
        c.passed = false;
        c.detail = "pi digit " + std::to_string(n) + " in base " + std::to_string(base) +
                   (r.stable ? " disagrees with the oracle" : " is unstable");
        return c;
      }
    }
  }
  return c;
}

template <typename F>
SelftestCheck guarded(const char* name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return SelftestCheck{name, false, std::string("threw: ") + e.what()};
  }
}

}  // namespace

bool SelftestReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SelftestCheck& c) { return c.passed; });
}

SandwichResult check_sandwich_bounds(std::uint64_t max_n, std::uint64_t pi_digits) {
  SandwichResult out;
  const ArbReal pi_ref = oracle::reference_pi(pi_digits).value;
  const Bits wp = pi_ref.precision() + 64;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, pi_digits);
  const ArbReal slack = ArbReal::from_rational(mpq_class(2, p10), wp);
  // Every bound below decreases as pi grows.
  const ArbReal pi_lo = sub(pi_ref, slack, wp);
  const ArbReal pi_hi = add(pi_ref, slack, wp);

  // Sign of value - bound over the pi interval: +1, -1, or 0 if it straddles.
  auto side = [](const ArbReal& value, const ArbReal& at_lo, const ArbReal& at_hi) {
    if (value > at_lo) return 1;
    if (value < at_hi) return -1;
    return 0;
  };
  auto classify = [&](const std::string& name, int lower_side, int upper_side) {
    if (lower_side < 0 || upper_side > 0) {
      out.violations.push_back(name);
    } else if (lower_side == 0 || upper_side == 0) {
      out.undecided.push_back(name);
    }
  };

  for (std::uint64_t n = 1; n <= max_n; ++n) {
    const auto k = static_cast<std::int64_t>(2 * n);
    const ArbReal fact = ArbReal::from_integer(factorial_exact(2 * n), wp);
    const ArbReal one = ArbReal::from_int(1, wp);

    auto b_low = [&](const ArbReal& pi) { return div(fact.mul_2exp(1), pow_int(pi.mul_2exp(1), k), wp); };
    const ArbReal gap2 = sub(one, one.mul_2exp(1 - k), wp);
    const ArbReal bv = ArbReal::from_rational(abs(bernoulli(2 * n)), wp);
    const ArbReal bl_lo = b_low(pi_lo), bl_hi = b_low(pi_hi);
    classify("B" + std::to_string(2 * n), side(bv, bl_lo, bl_hi),
             side(bv, div(bl_lo, gap2, wp), div(bl_hi, gap2, wp)));

    auto e_high = [&](const ArbReal& pi) {
      return div(fact.mul_2exp(2 * static_cast<std::int64_t>(n + 1)), pow_int(pi, k + 1), wp);
    };
    mpz_class three;
    mpz_ui_pow_ui(three.get_mpz_t(), 3, 2 * n + 1);
    const ArbReal gap3 = ArbReal::from_rational(mpq_class(three - 1, three), wp);
    const ArbReal ev = ArbReal::from_integer(abs(euler(2 * n)), wp);
    const ArbReal eh_lo = e_high(pi_lo), eh_hi = e_high(pi_hi);
    classify("E" + std::to_string(2 * n), side(ev, mul(eh_lo, gap3, wp), mul(eh_hi, gap3, wp)),
             side(ev, eh_lo, eh_hi));
  }
  return out;
}

SelftestReport run_selftest(const SelftestOptions& options) {
  SelftestReport report;
  if (options.cache_dir) {
    try {
      report.warnings = seed_tables_from_directory(*options.cache_dir);
    } catch (const std::exception& e) {
      report.warnings.push_back(std::string("cache directory ignored: ") + e.what());
    }
  }
  report.checks.push_back(guarded("embedded-constant", [&] { return check_embedded(options); }));
  report.checks.push_back(guarded("oracle-dual-identity", [] { return check_dual_identity(); }));
  report.checks.push_back(
      guarded("sandwich-inequalities", [&] { return check_sandwich(options.sandwich_max_n); }));
  report.checks.push_back(guarded("recurrence-cross-check", [] { return check_recurrences(); }));
  report.checks.push_back(
      guarded("digit-agreement", [&] { return check_digits(options.digit_max_n); }));
  return report;
}

}  // namespace df
