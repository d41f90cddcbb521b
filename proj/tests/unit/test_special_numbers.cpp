#include <doctest.h>

#include <functional>

#include "df/special_numbers.hpp"

using namespace df;

namespace {

mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
std::vector<mpq_class> bernoulli_by_recurrence(unsigned long max) {
  std::vector<mpq_class> b(max + 1);
  b[0] = 1;
  for (unsigned long m = 1; m <= max; ++m) {
    mpq_class s = 0;
    for (unsigned long j = 0; j < m; ++j) s += mpq_class(binom(m + 1, j)) * b[j];
    b[m] = -s / mpq_class(m + 1);
    b[m].canonicalize();
  }
  return b;
}

// sum_{k=0}^{n} C(2n, 2k) E_2k = 0 for n >= 1.
std::vector<mpz_class> euler_by_recurrence(unsigned long max_n) {
  std::vector<mpz_class> e(max_n + 1);
  e[0] = 1;
  for (unsigned long n = 1; n <= max_n; ++n) {
    mpz_class s = 0;
    for (unsigned long k = 0; k < n; ++k) s += binom(2 * n, 2 * k) * e[k];
    e[n] = -s;
  }
  return e;
}

// Number of partitions of n into parts no larger than `largest`, by plain
// recursion over the largest part.
std::uint64_t count_partitions(int n, int largest) {
  if (n == 0) return 1;
  std::uint64_t total = 0;
  for (int part = std::min(n, largest); part >= 1; --part) total += count_partitions(n - part, part);
  return total;
}

}  // namespace

TEST_CASE("first Bernoulli and Euler numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(2) == mpq_class(1, 6));
  CHECK(bernoulli(4) == mpq_class(-1, 30));
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
  CHECK(euler(0) == 1);
  CHECK(euler(2) == -1);
  CHECK(euler(4) == 5);
  CHECK(euler(10) == -50521);
  CHECK_THROWS_AS(bernoulli(3), DomainError);
  CHECK_THROWS_AS(euler(7), DomainError);
}

TEST_CASE("Bernoulli and Euler numbers match their definitional recurrences up to index 100") {
  const auto b = bernoulli_by_recurrence(100);
  const auto e = euler_by_recurrence(50);
  for (unsigned long k = 0; k <= 100; k += 2) {
    INFO("k = " << k);
    CHECK(bernoulli(k) == b[k]);
    CHECK(euler(k) == e[k / 2]);
  }
}

TEST_CASE("von Staudt-Clausen denominators up to index 200") {
  CHECK(staudt_clausen_denominator(2) == 6);
  CHECK(staudt_clausen_denominator(12) == 2730);
  for (std::uint64_t k = 2; k <= 200; k += 2) {
    INFO("k = " << k);
    CHECK(bernoulli(k).get_den() == staudt_clausen_denominator(k));
  }
}

TEST_CASE("partition numbers match direct enumeration up to 40") {
  for (int n = 0; n <= 40; ++n) {
    INFO("n = " << n);
    CHECK(partition(static_cast<std::uint64_t>(n)) == mpz_class(static_cast<unsigned long>(count_partitions(n, n))));
  }
  CHECK(partition(100) == mpz_class("190569292"));
  CHECK(partition(1000) == mpz_class("24061467864032622473692149727991"));
}

TEST_CASE("central binomials match Pascal's triangle") {
  std::vector<mpz_class> row{1};
  for (unsigned n = 1; n <= 400; ++n) {
    std::vector<mpz_class> next(row.size() + 1);
    next.front() = next.back() = 1;
    for (std::size_t k = 1; k < row.size(); ++k) next[k] = row[k - 1] + row[k];
    row = std::move(next);
    if (n % 2 == 0) {
      INFO("2n = " << n);
      CHECK(central_binomial(n / 2) == row[n / 2]);
    }
  }
}

TEST_CASE("factorials match a plain loop") {
  mpz_class f = 1;
  for (unsigned long n = 1; n <= 3000; ++n) {
    f *= n;
    if (n % 97 == 0 || n == 3000) CHECK(factorial_exact(n) == f);
  }
  CHECK(factorial_exact(0) == 1);
}

TEST_CASE("sign alternation and tangent numbers") {
  for (std::uint64_t k = 2; k <= 300; k += 2) {
    const int expected = (k / 2) % 2 == 1 ? 1 : -1;
    CHECK(sgn(bernoulli(k)) == expected);
    CHECK(sgn(euler(k)) == -expected);
  }
}

TEST_CASE("primality helper") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
}
