#include <doctest.h>

#include <random>

#include "df/arb_real.hpp"
#include "support.hpp"

using namespace df;
using testsupport::exact;
using testsupport::ulp;

namespace {

ArbReal random_real(std::mt19937_64& rng, Bits prec) {
  mpz_class m = 0;
  for (int i = 0; i < 4; ++i) m = (m << 64) + mpz_class(static_cast<unsigned long>(rng()));
  const auto e = static_cast<std::int64_t>(rng() % 200) - 100;
  const int sign = (rng() & 1) ? 1 : -1;
  return ArbReal::from_scaled(sign, m, e - 256, prec);
}

// Correct rounding: within half an ulp of the exact value.
void check_rounded(const ArbReal& r, const mpq_class& truth) {
  CHECK(abs(exact(r) - truth) <= ulp(r) / 2);
}

}  // namespace

TEST_CASE("construction normalizes the mantissa to the precision") {
  const ArbReal x = ArbReal::from_int(12, 64);
  CHECK(mpz_sizeinbase(x.mantissa().get_mpz_t(), 2) == 64);
  CHECK(exact(x) == 12);
  CHECK(ArbReal::zero(64).is_zero());
  CHECK(exact(ArbReal::from_rational(mpq_class(1, 3), 200)) != mpq_class(1, 3));
  check_rounded(ArbReal::from_rational(mpq_class(1, 3), 200), mpq_class(1, 3));
}

TEST_CASE("ties round to even") {
  // 2^4 + 1 at 4 bits: 10001b sits halfway between 16 and 18.
  CHECK(exact(ArbReal::from_int(17, 4)) == 16);
  CHECK(exact(ArbReal::from_int(19, 4)) == 20);
  CHECK(exact(ArbReal::from_int(-17, 4)) == -16);
  // Just above the tie rounds up.
  CHECK(exact(ArbReal::from_scaled(1, 34, -1, 4, true)) == 18);
}

TEST_CASE("arithmetic is correctly rounded against exact rationals") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const Bits p = 32 + rng() % 300;
    const ArbReal a = random_real(rng, 256);
    const ArbReal b = random_real(rng, 256);
    check_rounded(add(a, b, p), exact(a) + exact(b));
    check_rounded(sub(a, b, p), exact(a) - exact(b));
    check_rounded(mul(a, b, p), exact(a) * exact(b));
    check_rounded(div(a, b, p), exact(a) / exact(b));
  }
}

TEST_CASE("addition of very different magnitudes keeps the sticky bit") {
  const ArbReal one = ArbReal::from_int(1, 64);
  const ArbReal tiny = ArbReal::from_int(1, 64).mul_2exp(-500);
  const ArbReal s = add(one, tiny, 64);
  check_rounded(s, exact(one) + exact(tiny));
  CHECK(exact(s) == 1);
  // Half an ulp above 1 plus a tiny bit must round up.
  const ArbReal half_ulp = ArbReal::from_int(1, 64).mul_2exp(-64);
  const ArbReal t = add(add(one, half_ulp, 200), tiny, 64);
  CHECK(exact(t) > 1);
}

TEST_CASE("division by zero and root domain errors") {
  CHECK_THROWS_AS(div(ArbReal::from_int(1, 64), ArbReal::zero(64), 64), DomainError);
  CHECK_THROWS_AS(nth_root(ArbReal::from_int(-2, 64), 3), DomainError);
  CHECK_THROWS_AS(nth_root(ArbReal::from_int(2, 64), 0), DomainError);
  CHECK_THROWS_AS(ln(ArbReal::zero(64)), DomainError);
  CHECK_THROWS_AS(ln(ArbReal::from_int(-1, 64)), DomainError);
}

TEST_CASE("integer roots bracket their argument") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    mpz_class n = 0;
    const int words = 1 + static_cast<int>(rng() % 20);
    for (int w = 0; w < words; ++w) n = (n << 64) + mpz_class(static_cast<unsigned long>(rng()));
    const std::uint64_t k = 2 + rng() % 50;
    const mpz_class y = iroot_floor(n, k);
    mpz_class lo, hi;
    mpz_pow_ui(lo.get_mpz_t(), y.get_mpz_t(), k);
    const mpz_class y1 = y + 1;
    mpz_pow_ui(hi.get_mpz_t(), y1.get_mpz_t(), k);
    CHECK(lo <= n);
    CHECK(n < hi);
  }
  CHECK(iroot_floor(mpz_class(1000), 3) == 10);
  CHECK(iroot_floor(mpz_class(999), 3) == 9);
}

TEST_CASE("nth_root is correctly rounded") {
  // cbrt(10) at 200 bits; exact check: the true root lies within half an ulp,
  // i.e. (r - ulp/2)^3 < 10 < (r + ulp/2)^3.
  const ArbReal r = nth_root(ArbReal::from_int(10, 200), 3);
  const mpq_class lo = exact(r) - ulp(r) / 2, hi = exact(r) + ulp(r) / 2;
  CHECK(lo * lo * lo < 10);
  CHECK(hi * hi * hi > 10);
  CHECK(testsupport::agrees(r, "2.154434690031883721759293566519350495259344942192108582489235506346411", 55));
  const ArbReal big = nth_root(ArbReal::from_int(2, 3000), 1001);
  const mpq_class b = exact(big);
  CHECK(b > 1);
}

TEST_CASE("sqrt, ln and exp against reference constants") {
  CHECK(testsupport::agrees(sqrt(ArbReal::from_int(2, 256)),
                            "1.414213562373095048801688724209698078569671875376948073176679737990732", 65));
  CHECK(testsupport::agrees(ln2(256),
                            "0.6931471805599453094172321214581765680755001343602552541206800094933936", 65));
  CHECK(testsupport::agrees(ln(ArbReal::from_int(10, 256)),
                            "2.302585092994045684017991454684364207601101488628772976033327900967573", 65));
  CHECK(testsupport::agrees(exp(ArbReal::from_int(1, 256)),
                            "2.718281828459045235360287471352662497757247093699959574966967627724077", 65));
  const ArbReal e50 = exp(ArbReal::from_int(-50, 256));
  CHECK(abs(exact(e50) / testsupport::decimal("0.0000000000000000000001928749847963917783017342816527") - 1) <
        testsupport::pow10q(-30));
  CHECK_THROWS_AS(exp(ArbReal::from_int(1, 64).mul_2exp(41)), RangeError);
}

TEST_CASE("ln and exp invert each other") {
  for (long v : {3L, 17L, 1000L, 123456789L}) {
    const ArbReal x = ArbReal::from_int(v, 300);
    const ArbReal back = exp(ln(x));
    CHECK(abs(exact(back) - v) < testsupport::pow10q(-70) * v);
  }
}

TEST_CASE("pow_int matches exact powers") {
  const ArbReal x = ArbReal::from_rational(mpq_class(3, 2), 128);
  mpq_class e = 1;
  for (int i = 0; i < 37; ++i) e *= mpq_class(3, 2);
  CHECK(abs(exact(pow_int(x, 37)) / e - 1) < testsupport::pow10q(-35));
  CHECK(abs(exact(pow_int(x, -37)) * e - 1) < testsupport::pow10q(-35));
  CHECK(exact(pow_int(x, 0)) == 1);
}

TEST_CASE("floor_log10 and compare_abs_pow10 are exact at powers of ten") {
  CHECK(floor_log10(ArbReal::from_int(1000, 64)) == 3);
  CHECK(floor_log10(ArbReal::from_int(999, 64)) == 2);
  CHECK(floor_log10(ArbReal::from_rational(mpq_class(1, 8), 128)) == -1);
  // 1/1000 is not representable; its nearest 128-bit neighbour sits below.
  CHECK(floor_log10(ArbReal::from_rational(mpq_class(1, 1000), 128)) == -4);
  CHECK(compare_abs_pow10(ArbReal::from_int(100, 64), 2) == 0);
  CHECK(compare_abs_pow10(ArbReal::from_int(-101, 64), 2) > 0);
  CHECK(compare_abs_pow10(ArbReal::from_int(99, 64), 2) < 0);
}

TEST_CASE("precision policy") {
  const PrecisionPolicy p = PrecisionPolicy::for_digits(1000, 10);
  CHECK(p.payload_bits() == 3322);
  CHECK(p.guard_bits == 333);
  CHECK(PrecisionPolicy::for_digits(100, 10).guard_bits == 64);
  CHECK(bits_for_digits(100, 2) == 100);
  CHECK(bits_for_digits(100, 16) == 400);
}

TEST_CASE("comparison ignores precision") {
  CHECK(ArbReal::from_int(5, 10) == ArbReal::from_int(5, 300));
  CHECK(ArbReal::from_int(-5, 10) < ArbReal::from_int(4, 300));
  CHECK(ArbReal::from_int(1, 64).mul_2exp(-3) == ArbReal::from_rational(mpq_class(1, 8), 64));
}
