#pragma once

// Exact Bernoulli, Euler and partition numbers, factorials and central
// binomial coefficients.
//
// Bernoulli and Euler numbers come out of one Seidel boustrophedon (zigzag)
// triangle: the zigzag numbers A_n satisfy |E_2n| = A_2n and the tangent
// numbers are T_n = A_{2n-1}, with
//
//     B_2n = (-1)^(n-1) * 2n * T_n / (4^n (4^n - 1)).
//
// Values are stored signed; callers that need |B| or |E| take the absolute
// value themselves.

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <memory>
#include <shared_mutex>
#include <string_view>
#include <vector>

#include "df/errors.hpp"

namespace df {

using ExactInteger = mpz_class;
using ExactRational = mpq_class;

/// Growing Bernoulli/Euler table. Extension takes the writer lock; lookups of
/// already-computed indices only take the shared lock, so a table that has
/// been `ensure`d up front can be read from many threads.
class ZigzagTable {
 public:
  /// Makes B_k and E_k available for every even k <= max_even_index.
  void ensure(std::uint64_t max_even_index);
  ExactRational bernoulli(std::uint64_t k);
  ExactInteger euler(std::uint64_t k);
  /// Highest even index with both B and E known.
  std::uint64_t max_index() const;

  /// Adopt externally verified values (from a cache). Records must start at
  /// index 0 and be contiguous over even indices.
  void seed_bernoulli(const std::vector<ExactRational>& values);
  void seed_euler(const std::vector<ExactInteger>& values);

 private:
  void extend_locked(std::uint64_t max_even_index);

  mutable std::shared_mutex mutex_;
  std::vector<mpz_class> row_;        // last boustrophedon row
  std::uint64_t row_index_ = 0;       // index of row_ (row_ holds A_row_index_ last)
  std::vector<ExactRational> bernoulli_;  // bernoulli_[j] = B_2j
  std::vector<ExactInteger> euler_;       // euler_[j] = E_2j
};

/// Pentagonal-recurrence table of p(0..n).
class PartitionTable {
 public:
  void ensure(std::uint64_t n);
  ExactInteger at(std::uint64_t n);
  std::uint64_t max_index() const;
  void seed(const std::vector<ExactInteger>& values);

 private:
  mutable std::shared_mutex mutex_;
  std::vector<mpz_class> values_;
};

/// Process-wide tables used by the free functions below.
ZigzagTable& zigzag_table();
PartitionTable& partition_table();

/// B_k for even k >= 0 (B_0 = 1, B_2 = 1/6, ...). Odd k throws DomainError.
ExactRational bernoulli(std::uint64_t k);
/// E_k for even k >= 0 (E_0 = 1, E_2 = -1, E_4 = 5, ...).
ExactInteger euler(std::uint64_t k);
ExactInteger partition(std::uint64_t n);
ExactInteger central_binomial(std::uint64_t n);
/// n! by a balanced product tree.
ExactInteger factorial_exact(std::uint64_t n);

/// Product of the primes p with (p - 1) | k; the denominator of B_k for
/// even k >= 2 by von Staudt-Clausen.
ExactInteger staudt_clausen_denominator(std::uint64_t k);
bool is_prime(std::uint64_t n);

// ---------------------------------------------------------------------------
// Sequence cache files

enum class SequenceKind { bernoulli, euler, partition };

std::string_view to_string(SequenceKind kind);
SequenceKind sequence_kind_from_string(std::string_view name);

/// Contiguous run of exact values from index 0 to max_index. Bernoulli and
/// Euler records step over even indices only; integer kinds keep a
/// denominator of 1.
struct SequenceCache {
  SequenceKind kind = SequenceKind::bernoulli;
  std::uint64_t max_index = 0;
  std::vector<ExactRational> records;

  /// Index of the i-th record.
  std::uint64_t index_of(std::size_t i) const;
  std::size_t expected_records() const;
  friend bool operator==(const SequenceCache&, const SequenceCache&) = default;
};

SequenceCache make_cache(SequenceKind kind, std::uint64_t max_index);

/// Writes the file through a temporary and a rename.
void cache_store(const SequenceCache& cache, const std::filesystem::path& path);
/// Throws FormatError on any header, record, or checksum problem.
SequenceCache cache_load(const std::filesystem::path& path);
/// As above, and throws KindMismatch unless the file holds `expected`.
SequenceCache cache_load(const std::filesystem::path& path, SequenceKind expected);

/// Default file name inside a cache directory ("bernoulli.dfcache", ...).
std::filesystem::path cache_file_name(SequenceKind kind);
/// Loads every valid cache file from `dir` into the process-wide tables.
/// Returns one warning per file that failed verification.
std::vector<std::string> seed_tables_from_directory(const std::filesystem::path& dir);

}  // namespace df
