#include <algorithm>
#include <cmath>

#include "df/kernels.hpp"

#ifdef DF_HAVE_OPENMP
#include <omp.h>
#endif

namespace df::kernels {

namespace {

constexpr std::size_t kMinParallelRow = 256;
constexpr std::uint64_t kMinParallelProduct = 4096;
constexpr std::uint64_t kMinParallelPartition = 2000;

mpz_class product_tasks(std::uint64_t lo, std::uint64_t hi, int depth) {
  if (depth <= 0 || hi - lo < kMinParallelProduct) return range_product_serial(lo, hi);
  const std::uint64_t mid = lo + (hi - lo) / 2;
  mpz_class left;
  mpz_class right;
#pragma omp task shared(left) if (depth > 0)
  left = product_tasks(lo, mid, depth - 1);
  right = product_tasks(mid, hi, depth - 1);
#pragma omp taskwait
  return left * right;
}

// Terms k with floor(2^bits / x^(2k+1)) > 0.
std::uint64_t arctan_term_count(std::uint64_t x, std::uint64_t bits) {
  auto k = static_cast<std::uint64_t>(
      std::max(0.0, (static_cast<double>(bits) / std::log2(static_cast<double>(x)) - 1.0) / 2.0));
  mpz_class limit;
  mpz_setbit(limit.get_mpz_t(), bits);
  const mpz_class xz = static_cast<unsigned long>(x);
  auto positive = [&](std::uint64_t kk) {
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), xz.get_mpz_t(), 2 * kk + 1);
    return p <= limit;
  };
  while (k > 0 && !positive(k - 1)) --k;
  while (positive(k)) ++k;
  return k;
}

}  // namespace

int max_threads() {
#ifdef DF_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<mpz_class> zigzag_row_parallel(std::span<const mpz_class> prev, int blocks) {
  const std::size_t n = prev.size();
  if (blocks <= 0) {
    if (n < kMinParallelRow || max_threads() == 1) return zigzag_row_serial(prev);
    blocks = max_threads();
  }
  const auto nb = static_cast<std::size_t>(blocks);
  std::vector<mpz_class> row(n + 1);
  row[0] = 0;
  // Entries 1..n split into nb contiguous blocks; local scans first, then
  // each block is offset by the sum of the blocks before it.
  std::vector<mpz_class> totals(nb);
  auto block_lo = [&](std::size_t b) { return 1 + n * b / nb; };
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(nb); ++b) {
    const std::size_t lo = block_lo(static_cast<std::size_t>(b));
    const std::size_t hi = block_lo(static_cast<std::size_t>(b) + 1);
    mpz_class acc = 0;
    for (std::size_t k = lo; k < hi; ++k) {
      acc += prev[n - k];
      row[k] = acc;
    }
    totals[static_cast<std::size_t>(b)] = acc;
  }
  std::vector<mpz_class> offsets(nb);
  offsets[0] = 0;
  for (std::size_t b = 1; b < nb; ++b) offsets[b] = offsets[b - 1] + totals[b - 1];
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 1; b < static_cast<std::ptrdiff_t>(nb); ++b) {
    const std::size_t lo = block_lo(static_cast<std::size_t>(b));
    const std::size_t hi = block_lo(static_cast<std::size_t>(b) + 1);
    const mpz_class& off = offsets[static_cast<std::size_t>(b)];
    for (std::size_t k = lo; k < hi; ++k) row[k] += off;
  }
  return row;
}

mpz_class range_product_parallel(std::uint64_t lo, std::uint64_t hi) {
  if (hi <= lo || hi - lo < kMinParallelProduct || max_threads() == 1) {
    return range_product_serial(lo, hi);
  }
  int depth = 0;
  for (int t = max_threads(); t > 1; t >>= 1) ++depth;
  depth += 1;
  mpz_class result;
#pragma omp parallel
#pragma omp single
  result = product_tasks(lo, hi, depth);
  return result;
}

void extend_partitions_parallel(std::vector<mpz_class>& table, std::uint64_t n) {
  if (table.empty()) table.emplace_back(1);
  const int threads = max_threads();
  for (std::uint64_t m = table.size(); m <= n; ++m) {
    if (m < kMinParallelPartition || threads == 1) {
      extend_partitions_serial(table, m);
      continue;
    }
    std::uint64_t kmax = 0;
    while ((kmax + 1) * (3 * (kmax + 1) - 1) / 2 <= m) ++kmax;
    std::vector<mpz_class> partial(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
    {
#ifdef DF_HAVE_OPENMP
      const auto tid = static_cast<std::size_t>(omp_get_thread_num());
#else
      const std::size_t tid = 0;
#endif
      mpz_class local = 0;
#pragma omp for schedule(static)
      for (std::int64_t k = 1; k <= static_cast<std::int64_t>(kmax); ++k) {
        const auto ku = static_cast<std::uint64_t>(k);
        const std::uint64_t g1 = ku * (3 * ku - 1) / 2;
        const std::uint64_t g2 = ku * (3 * ku + 1) / 2;
        mpz_class pair = table[m - g1];
        if (g2 <= m) pair += table[m - g2];
        if (ku % 2 == 1) {
          local += pair;
        } else {
          local -= pair;
        }
      }
      partial[tid] = std::move(local);
    }
    mpz_class sum = 0;
    for (const auto& p : partial) sum += p;
    table.push_back(std::move(sum));
  }
}

mpz_class arctan_inv_parallel(std::uint64_t x, std::uint64_t bits, int blocks,
                              std::uint64_t* terms) {
  const std::uint64_t count = arctan_term_count(x, bits);
  if (terms != nullptr) *terms = count;
  if (blocks <= 0) blocks = max_threads();
  const auto nb = static_cast<std::uint64_t>(std::max(1, blocks));
  const mpz_class xz = static_cast<unsigned long>(x);
  const mpz_class x2 = xz * xz;
  std::vector<mpz_class> partial(nb);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nb); ++b) {
    const std::uint64_t k0 = count * static_cast<std::uint64_t>(b) / nb;
    const std::uint64_t k1 = count * (static_cast<std::uint64_t>(b) + 1) / nb;
    if (k0 >= k1) continue;
    // floor(2^bits / x^(2k0+1)) equals the serial loop's iterated floors.
    mpz_class t;
    mpz_setbit(t.get_mpz_t(), bits);
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), xz.get_mpz_t(), 2 * k0 + 1);
    t /= p;
    mpz_class sum = 0;
    for (std::uint64_t k = k0; k < k1; ++k) {
      mpz_class term = t / static_cast<unsigned long>(2 * k + 1);
      if (k % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
      t /= x2;
    }
    partial[static_cast<std::size_t>(b)] = std::move(sum);
  }
  mpz_class total = 0;
  for (const auto& s : partial) total += s;
  return total;
}

}  // namespace df::kernels
