#include "df/kernels.hpp"

namespace df::kernels {

std::vector<mpz_class> zigzag_row_serial(std::span<const mpz_class> prev) {
  const std::size_t n = prev.size();
  std::vector<mpz_class> row(n + 1);
  row[0] = 0;
  for (std::size_t k = 1; k <= n; ++k) row[k] = row[k - 1] + prev[n - k];
  return row;
}

mpz_class range_product_serial(std::uint64_t lo, std::uint64_t hi) {
  if (hi <= lo) return 1;
  if (hi - lo <= 16) {
    mpz_class r = 1;
    for (std::uint64_t i = lo; i < hi; ++i) r *= static_cast<unsigned long>(i);
    return r;
  }
  const std::uint64_t mid = lo + (hi - lo) / 2;
  return range_product_serial(lo, mid) * range_product_serial(mid, hi);
}

void extend_partitions_serial(std::vector<mpz_class>& table, std::uint64_t n) {
  if (table.empty()) table.emplace_back(1);
  for (std::uint64_t m = table.size(); m <= n; ++m) {
    mpz_class sum = 0;
    for (std::uint64_t k = 1;; ++k) {
      const std::uint64_t g1 = k * (3 * k - 1) / 2;
      if (g1 > m) break;
      const std::uint64_t g2 = k * (3 * k + 1) / 2;
      mpz_class pair = table[m - g1];
      if (g2 <= m) pair += table[m - g2];
      if (k % 2 == 1) {
        sum += pair;
      } else {
        sum -= pair;
      }
    }
    table.push_back(std::move(sum));
  }
}

mpz_class arctan_inv_serial(std::uint64_t x, std::uint64_t bits, std::uint64_t* terms) {
  mpz_class t;
  mpz_setbit(t.get_mpz_t(), bits);
  t /= static_cast<unsigned long>(x);
  const mpz_class x2 = mpz_class(static_cast<unsigned long>(x)) * static_cast<unsigned long>(x);
  mpz_class sum = 0;
  std::uint64_t k = 0;
  for (; t != 0; ++k) {
    mpz_class term = t / static_cast<unsigned long>(2 * k + 1);
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    t /= x2;
  }
  if (terms != nullptr) *terms = k;
  return sum;
}

}  // namespace df::kernels
