// Acceptance run: one PASS/FAIL line per criterion, 1 through 14.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "df/approximants.hpp"
#include "df/digit_engine.hpp"
#include "df/oracle.hpp"
#include "df/selftest.hpp"
#include "df/special_numbers.hpp"

using namespace df;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

mpq_class exact(const ArbReal& x) {
  mpq_class q(x.mantissa());
  if (x.exponent() >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(x.exponent()));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-x.exponent()));
  }
  return x.sign() < 0 ? mpq_class(-q) : q;
}

mpq_class scaled_decimal(const char* mantissa, long exp10) {
  mpq_class m(0);
  const std::string s(mantissa);
  const auto dot = s.find('.');
  std::string digits = s;
  digits.erase(dot, 1);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
  m = mpq_class(mpz_class(digits, 10), den);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  return exp10 < 0 ? mpq_class(m / p) : mpq_class(m * p);
}

std::string sci(const ArbReal& x) {
  std::ostringstream os;
  const std::int64_t e = floor_log10(x);
  const RenderedDigits r = render_significant(x.abs(), 10, 10, kExactValue);
  os << (x.sign() < 0 ? "-" : "") << r.integer_part << "." << r.fractional_digits << "e" << e;
  return os.str();
}

oracle::ErrorMeasure error_of(const ApproxResult& a) {
  return oracle::measure_error(a, oracle::reference_for(a));
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const auto k = static_cast<double>(x.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

// Agreeing fractional decimals between an approximation and the reference.
std::uint64_t matching_decimals(const ArbReal& a, const ArbReal& ref, std::uint64_t limit) {
  const std::string x = oracle::decimal_string(a, limit);
  const std::string y = oracle::decimal_string(ref, limit);
  const std::size_t dot = x.find('.');
  if (x.substr(0, dot) != y.substr(0, dot)) return 0;
  std::uint64_t k = 0;
  while (dot + 1 + k < x.size() && x[dot + 1 + k] == y[dot + 1 + k]) ++k;
  return k;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  const auto t = Clock::now();
  const ApproxResult a = pi_bernoulli(1000, 0);
  const oracle::ErrorMeasure e = error_of(a);
  const double elapsed = seconds_since(t);
  const mpq_class expected = -scaled_decimal("0.293193", -303);
  const mpq_class rel = abs(exact(e.error) / expected - 1);
  // pi-scale bound: |error| < 4 * 2^-1000
  mpq_class bound(mpz_class(4));
  mpq_div_2exp(bound.get_mpq_t(), bound.get_mpq_t(), 1000);
  const bool ok = rel < mpq_class(1, 100000) && abs(exact(e.error)) < bound && elapsed <= 60.0;
  return {ok, "error " + sci(e.error) + ", relative deviation from -0.293193e-303 " +
                  std::to_string(rel.get_d()) + ", " + std::to_string(elapsed) + " s"};
}

Outcome criterion2(std::int64_t& measured_digits) {
  const ApproxResult a = pi_bernoulli(1000, 4);
  const oracle::ErrorMeasure e = error_of(a);
  const mpq_class expected = -scaled_decimal("0.1271934403", -1043);
  const mpq_class rel = abs(exact(e.error) / expected - 1);
  measured_digits = -e.log10 - 1;
  return {rel < mpq_class(1, 100000),
          "error " + sci(e.error) + ", relative deviation from -0.1271934403e-1043 " +
              std::to_string(rel.get_d())};
}

Outcome criterion3() {
  const ApproxResult a = pi_euler(1000, false);
  const oracle::Reference ref = oracle::reference_pi(1100);
  const std::uint64_t k = matching_decimals(a.value, ref.value, 1050);
  return {k >= 956 && k <= 958, std::to_string(k) + " correct decimals (target 957 +- 1)"};
}

Outcome criterion4() {
  const ApproxResult a = pi_euler(1000, true);
  const oracle::ErrorMeasure e = error_of(a);
  const bool ok = std::llabs(e.log10 + 1198) <= 1;
  return {ok, "floor(log10 error) = " + std::to_string(e.log10) + " (target -1198 +- 1; a-priori " +
                  std::to_string(a.apriori_error_log10) + ")"};
}

Outcome criterion5() {
  const ApproxResult a = pi_power_bernoulli(1000);
  const oracle::Reference ref = oracle::reference(oracle::Constant{TargetKind::pi_power, 1000}, 700);
  // Relative certification: absolute bound 10^(apriori+2) over pi^1000 >= 10^497.
  const std::int64_t rel = a.apriori_error_log10 + 2 - 497;
  const RenderedDigits mine = render_significant(a.value, 10, 1000, rel);
  const RenderedDigits theirs = render_significant(ref.value, 10, 1000, -(700 + 497) + 1);
  const std::string x = mine.integer_part + mine.fractional_digits;
  const std::string y = theirs.integer_part + theirs.fractional_digits;
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) mismatches += x[i] != y[i];
  const bool ok = x.size() == 1000 && y.size() == 1000 && mismatches == 0 &&
                  mine.exponent == theirs.exponent;
  return {ok, std::to_string(x.size()) + " significant digits, " + std::to_string(mismatches) +
                  " mismatches, exponent " + std::to_string(mine.exponent)};
}

Outcome criterion6() {
  const auto t = Clock::now();
  const oracle::Reference ref = oracle::reference_pi(1400);
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = 0; n <= 100; ++n) ns.push_back(n);
  ns.insert(ns.end(), {500, 999, 1000});
  std::size_t bad = 0, total = 0;
  std::string first_bad;
  for (int base : {2, 10, 16}) {
    for (std::uint64_t n : ns) {
      ++total;
      const DigitResult r = digit_of(DigitTarget::pi(), n, base);
      if (!r.stable || r.digit != position(n, ref.value, base)) {
        if (bad++ == 0) first_bad = "n=" + std::to_string(n) + " base " + std::to_string(base);
      }
    }
  }
  const double elapsed = seconds_since(t);
  return {bad == 0 && elapsed <= 600.0,
          std::to_string(total - bad) + "/" + std::to_string(total) + " digits agree" +
              (bad ? " (first failure " + first_bad + ")" : "") + ", " + std::to_string(elapsed) + " s"};
}

Outcome criterion7() {
  struct Case {
    MethodId m;
    double target;
    bool odd_axis;
  };
  const Case cases[] = {
      {MethodId::bernoulli_basic, -std::log10(2.0), false},
      {MethodId::bernoulli_corrected, -std::log10(11.0), false},
      {MethodId::euler_basic, -std::log10(3.0), true},
      {MethodId::ratio_bernoulli_sq, -std::log10(4.0), false},
      {MethodId::ratio_euler_sq, -std::log10(9.0), false},
  };
  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    std::vector<double> x, y;
    for (std::uint64_t n : {50, 100, 150, 200}) {
      const ApproxResult a = evaluate(c.m, n, default_terms(c.m), Variant::none);
      const oracle::ErrorMeasure e = error_of(a);
      x.push_back(c.odd_axis ? 2.0 * static_cast<double>(n) + 1.0 : static_cast<double>(n));
      y.push_back(e.error.log10_abs());
    }
    const double s = fit_slope(x, y);
    const bool within = std::abs(s / c.target - 1.0) <= 0.05;
    ok = ok && within;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s %.4f vs %.4f", detail.empty() ? "" : "; ",
                  std::string(method_info(c.m).name).c_str(), s, c.target);
    detail += buf;
  }
  return {ok, detail};
}

Outcome criterion8() {
  auto rel_exp = [](const ApproxResult& a) { return error_of(a).log10; };
  const std::int64_t b = rel_exp(factorial_approx(FactorialSource::bernoulli, 1000));
  const std::int64_t e = rel_exp(factorial_approx(FactorialSource::euler, 1000));
  const std::int64_t s = rel_exp(factorial_approx(FactorialSource::stirling, 1000, 4));
  const bool ok = std::llabs(b + 301) <= 1 && std::llabs(e + 477) <= 1 && b <= s - 250 && e <= s - 250;
  return {ok, "relative exponents: Bernoulli " + std::to_string(b) + ", Euler " + std::to_string(e) +
                  ", 4-term Stirling " + std::to_string(s) + " (recorded)"};
}

Outcome criterion9() {
  std::vector<double> lx, y0, y4;
  for (std::uint64_t n : {100, 1000, 10000}) {
    lx.push_back(std::log10(static_cast<double>(n)));
    y0.push_back(error_of(pi_central_binomial(n, 0)).error.log10_abs());
    y4.push_back(error_of(pi_central_binomial(n, 4)).error.log10_abs());
  }
  const double s0 = fit_slope(lx, y0), s4 = fit_slope(lx, y4);
  auto decreasing = [](std::vector<std::uint64_t> ns, auto f) {
    ArbReal prev;
    bool first = true, ok = true;
    for (std::uint64_t n : ns) {
      const ArbReal e = error_of(f(n)).error.abs();
      if (!first && !(e < prev)) ok = false;
      prev = e;
      first = false;
    }
    return ok;
  };
  const bool part = decreasing({100, 1000, 10000}, [](std::uint64_t n) { return pi_partition(n); });
  const bool stir = decreasing({1000, 10000, 100000}, [](std::uint64_t n) { return pi_stirling(n); });
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "binomial slope t=0 %.4f, t=4 %.4f; partition decreasing %s; Stirling decreasing %s", s0,
                s4, part ? "yes" : "no", stir ? "yes" : "no");
  return {std::abs(s0 + 1.0) <= 0.1 && s4 <= -4.5 && part && stir, buf};
}

Outcome criterion10() {
  // With 200 digits of pi the Euler lower bound cannot be decided once its
  // slack, about 5^-(2n+1), drops below the uncertainty of pi^(2n+1); that
  // happens near n = 140. 300 digits decide every case up to n = 200.
  const SandwichResult coarse = check_sandwich_bounds(200, 200);
  const SandwichResult fine = check_sandwich_bounds(200, 300);
  const bool ok = coarse.violations.empty() && fine.violations.empty() && fine.undecided.empty();
  std::string detail = std::to_string(fine.violations.size()) + " violations, " +
                       std::to_string(fine.undecided.size()) + " undecided over n <= 200 with 300-digit pi; " +
                       "200-digit pi: " + std::to_string(coarse.violations.size()) + " violations, " +
                       std::to_string(coarse.undecided.size()) + " undecided";
  if (!coarse.undecided.empty()) detail += " (from " + coarse.undecided.front() + ")";
  if (!fine.violations.empty()) detail += " (first violation " + fine.violations.front() + ")";
  return {ok, detail};
}

Outcome criterion11(std::int64_t measured_digits) {
  const std::uint64_t est = digits_gain_estimate(1000, 4);
  const double big = static_cast<double>(digits_gain_estimate(100000000, 1000000000000ULL));
  const bool ok = est == 1041 && std::llabs(static_cast<std::int64_t>(est) - measured_digits) <= 2 &&
                  big >= 1.2e9 && big <= 1.4e9;
  char buf[160];
  std::snprintf(buf, sizeof buf, "estimate(1000, 4) = %llu vs measured %lld; estimate(1e8, 1e12) = %.4g",
                static_cast<unsigned long long>(est), static_cast<long long>(measured_digits), big);
  return {ok, buf};
}

mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::uint64_t count_partitions(int n, int largest) {
  if (n == 0) return 1;
  std::uint64_t total = 0;
  for (int part = std::min(n, largest); part >= 1; --part) total += count_partitions(n - part, part);
  return total;
}

Outcome criterion12() {
  std::size_t mismatches = 0;
  std::vector<mpq_class> b(101);
  b[0] = 1;
  for (unsigned long m = 1; m <= 100; ++m) {
    mpq_class s = 0;
    for (unsigned long j = 0; j < m; ++j) s += mpq_class(binom(m + 1, j)) * b[j];
    b[m] = -s / mpq_class(m + 1);
    b[m].canonicalize();
  }
  std::vector<mpz_class> e(51);
  e[0] = 1;
  for (unsigned long n = 1; n <= 50; ++n) {
    mpz_class s = 0;
    for (unsigned long k = 0; k < n; ++k) s += binom(2 * n, 2 * k) * e[k];
    e[n] = -s;
  }
  for (unsigned long k = 0; k <= 100; k += 2) {
    mismatches += bernoulli(k) != b[k];
    mismatches += euler(k) != e[k / 2];
  }
  for (int n = 0; n <= 40; ++n) {
    mismatches += partition(static_cast<std::uint64_t>(n)) != mpz_class(static_cast<unsigned long>(count_partitions(n, n)));
  }
  for (std::uint64_t k = 2; k <= 200; k += 2) {
    mpz_class den = 1;
    for (std::uint64_t d = 1; d <= k; ++d) {
      if (k % d == 0 && is_prime(d + 1)) den *= static_cast<unsigned long>(d + 1);
    }
    mismatches += bernoulli(k).get_den() != den;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches"};
}

Outcome criterion13() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("df-acceptance-" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  bool ok = true;
  std::size_t detected = 0, trials = 0;
  std::mt19937 rng(13);
  for (SequenceKind k : {SequenceKind::bernoulli, SequenceKind::euler}) {
    const SequenceCache c = make_cache(k, 2000);
    const fs::path p = dir / cache_file_name(k);
    cache_store(c, p);
    ok = ok && cache_load(p, k) == c;
    std::string good;
    {
      std::ifstream in(p, std::ios::binary);
      good.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    for (int t = 0; t < 100; ++t) {
      std::string bad = good;
      const std::size_t i = rng() % bad.size();
      char ch = bad[i];
      while (ch == bad[i]) ch = "0123456789/- \nx"[rng() % 15];
      bad[i] = ch;
      {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        out << bad;
      }
      ++trials;
      try {
        cache_load(p);
      } catch (const FormatError&) {
        ++detected;
      }
    }
  }
  fs::remove_all(dir);
  return {ok && detected == trials, std::string("round trips ") + (ok ? "exact" : "differ") + ", " +
                                        std::to_string(detected) + "/" + std::to_string(trials) +
                                        " single-character mutations detected"};
}

Outcome criterion14() {
  bool ok = true;
  std::string detail;
  for (std::uint64_t n : {5, 10, 50}) {
    const std::uint64_t s = 2 * n + 1;
    double rel[2];
    int i = 0;
    for (Variant v : {Variant::as_printed, Variant::beta_series}) {
      const ApproxResult a = pi_power_euler_odd(n, v);
      const oracle::Reference ref = oracle::reference_for(a);
      rel[i++] = error_of(a).error.log10_abs() - ref.value.log10_abs();
    }
    const bool beta_wins = rel[1] < rel[0];
    const double best = std::min(rel[0], rel[1]);
    const double scale = -static_cast<double>(s) * std::log10(11.0);
    // "11^-(2n+1)-scale": within one decimal order of 11^-s
    ok = ok && best <= scale + 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%sn=%llu %s wins (log10 rel %.2f, 11^-s %.2f)", detail.empty() ? "" : "; ",
                  static_cast<unsigned long long>(n), beta_wins ? "beta_series" : "as_printed", best, scale);
    detail += buf;
  }
  return {ok, detail};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::function<Outcome()>& f) {
    Outcome o;
    const auto t = Clock::now();
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(),
                seconds_since(t));
    std::fflush(stdout);
  };
  std::int64_t measured_digits = 0;
  report(1, criterion1);
  report(2, [&] { return criterion2(measured_digits); });
  report(3, criterion3);
  report(4, criterion4);
  report(5, criterion5);
  report(6, criterion6);
  report(7, criterion7);
  report(8, criterion8);
  report(9, criterion9);
  report(10, criterion10);
  report(11, [&] { return criterion11(measured_digits); });
  report(12, criterion12);
  report(13, criterion13);
  report(14, criterion14);
  std::printf("%d of 14 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
