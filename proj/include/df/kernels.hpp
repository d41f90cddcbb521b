#pragma once

// Data-parallel big-integer kernels.
//
// Every kernel has a serial reference and an OpenMP version. The two must
// produce bit-identical results; tests compare them directly and bench/
// times them against each other. Without OpenMP the parallel entry points
// run the same blocked algorithm on one thread.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

namespace df::kernels {

/// Worker threads available to the parallel kernels (1 without OpenMP).
int max_threads();

/// One step of the Seidel boustrophedon triangle: given row n-1 (length n),
/// returns row n (length n+1) with r[0] = 0 and r[k] = r[k-1] + prev[n-k].
/// The last entry of row n is the zigzag number A_n.
std::vector<mpz_class> zigzag_row_serial(std::span<const mpz_class> prev);
/// Blocked prefix sum over `blocks` chunks (0 = one per thread). Falls back
/// to the serial loop for short rows unless `blocks` is given explicitly.
std::vector<mpz_class> zigzag_row_parallel(std::span<const mpz_class> prev, int blocks = 0);

/// Product lo * (lo+1) * ... * (hi-1); 1 for an empty range. Balanced tree.
mpz_class range_product_serial(std::uint64_t lo, std::uint64_t hi);
mpz_class range_product_parallel(std::uint64_t lo, std::uint64_t hi);

/// Extends `table` (p(0), p(1), ...) up to and including p(n) with the
/// pentagonal-number recurrence.
void extend_partitions_serial(std::vector<mpz_class>& table, std::uint64_t n);
void extend_partitions_parallel(std::vector<mpz_class>& table, std::uint64_t n);

/// sum_k (-1)^k floor(floor(2^bits / x^(2k+1)) / (2k+1)): arctan(1/x) in fixed
/// point. The truncation error is below the number of terms, which is
/// returned through `terms` when non-null.
mpz_class arctan_inv_serial(std::uint64_t x, std::uint64_t bits, std::uint64_t* terms = nullptr);
mpz_class arctan_inv_parallel(std::uint64_t x, std::uint64_t bits, int blocks = 0,
                              std::uint64_t* terms = nullptr);

}  // namespace df::kernels
