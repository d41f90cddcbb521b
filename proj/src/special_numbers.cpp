#include "df/special_numbers.hpp"

#include <mutex>

#include "df/kernels.hpp"

namespace df {

namespace {

template <typename T>
void put(std::vector<T>& v, std::size_t i, T value) {
  if (v.size() <= i) v.resize(i + 1);
  v[i] = std::move(value);
}

// B_2j from the tangent number T_j.
ExactRational bernoulli_from_tangent(std::uint64_t j, const mpz_class& tangent) {
  mpz_class four_j;
  mpz_ui_pow_ui(four_j.get_mpz_t(), 4, j);
  ExactRational b(tangent * static_cast<unsigned long>(2 * j), four_j * (four_j - 1));
  b.canonicalize();
  if (j % 2 == 0) b = -b;
  return b;
}

void require_even(std::uint64_t k, const char* what) {
  if (k % 2 != 0) throw DomainError(std::string(what) + " is only defined here for even indices");
}

}  // namespace

void ZigzagTable::ensure(std::uint64_t max_even_index) {
  {
    std::shared_lock lock(mutex_);
    if (!bernoulli_.empty() && !euler_.empty() && max_even_index / 2 < bernoulli_.size() &&
        max_even_index / 2 < euler_.size()) {
      return;
    }
  }
  std::unique_lock lock(mutex_);
  extend_locked(max_even_index);
}

void ZigzagTable::extend_locked(std::uint64_t max_even_index) {
  const std::size_t need = max_even_index / 2;
  if (bernoulli_.size() > need && euler_.size() > need) return;
  if (row_.empty()) {
    row_ = {mpz_class(1)};
    row_index_ = 0;
    put(euler_, 0, ExactInteger(1));
    put(bernoulli_, 0, ExactRational(1));
  }
  const std::uint64_t last_row = 2 * need;
  while (row_index_ < last_row) {
    row_ = kernels::zigzag_row_parallel(row_);
    ++row_index_;
    const mpz_class& a = row_.back();
    if (row_index_ % 2 == 0) {
      const std::uint64_t j = row_index_ / 2;
      put(euler_, j, j % 2 == 0 ? ExactInteger(a) : ExactInteger(-a));
    } else {
      const std::uint64_t j = (row_index_ + 1) / 2;
      put(bernoulli_, j, bernoulli_from_tangent(j, a));
    }
  }
}

ExactRational ZigzagTable::bernoulli(std::uint64_t k) {
  require_even(k, "bernoulli");
  {
    std::shared_lock lock(mutex_);
    if (k / 2 < bernoulli_.size()) return bernoulli_[k / 2];
  }
  ensure(k);
  std::shared_lock lock(mutex_);
  return bernoulli_[k / 2];
}

ExactInteger ZigzagTable::euler(std::uint64_t k) {
  require_even(k, "euler");
  {
    std::shared_lock lock(mutex_);
    if (k / 2 < euler_.size()) return euler_[k / 2];
  }
  ensure(k);
  std::shared_lock lock(mutex_);
  return euler_[k / 2];
}

std::uint64_t ZigzagTable::max_index() const {
  std::shared_lock lock(mutex_);
  if (bernoulli_.empty() || euler_.empty()) return 0;
  return 2 * (std::min(bernoulli_.size(), euler_.size()) - 1);
}

void ZigzagTable::seed_bernoulli(const std::vector<ExactRational>& values) {
  std::unique_lock lock(mutex_);
  if (values.size() > bernoulli_.size()) {
    for (std::size_t i = bernoulli_.size(); i < values.size(); ++i) bernoulli_.push_back(values[i]);
  }
}

void ZigzagTable::seed_euler(const std::vector<ExactInteger>& values) {
  std::unique_lock lock(mutex_);
  if (values.size() > euler_.size()) {
    for (std::size_t i = euler_.size(); i < values.size(); ++i) euler_.push_back(values[i]);
  }
}

void PartitionTable::ensure(std::uint64_t n) {
  {
    std::shared_lock lock(mutex_);
    if (n < values_.size()) return;
  }
  std::unique_lock lock(mutex_);
  kernels::extend_partitions_parallel(values_, n);
}

ExactInteger PartitionTable::at(std::uint64_t n) {
  ensure(n);
  std::shared_lock lock(mutex_);
  return values_[n];
}

std::uint64_t PartitionTable::max_index() const {
  std::shared_lock lock(mutex_);
  return values_.empty() ? 0 : values_.size() - 1;
}

void PartitionTable::seed(const std::vector<ExactInteger>& values) {
  std::unique_lock lock(mutex_);
  for (std::size_t i = values_.size(); i < values.size(); ++i) values_.push_back(values[i]);
}

ZigzagTable& zigzag_table() {
  static ZigzagTable table;
  return table;
}

PartitionTable& partition_table() {
  static PartitionTable table;
  return table;
}

ExactRational bernoulli(std::uint64_t k) { return zigzag_table().bernoulli(k); }
ExactInteger euler(std::uint64_t k) { return zigzag_table().euler(k); }
ExactInteger partition(std::uint64_t n) { return partition_table().at(n); }

ExactInteger factorial_exact(std::uint64_t n) { return kernels::range_product_parallel(1, n + 1); }

ExactInteger central_binomial(std::uint64_t n) {
  mpz_class top = kernels::range_product_parallel(n + 1, 2 * n + 1);
  const mpz_class bottom = factorial_exact(n);
  mpz_divexact(top.get_mpz_t(), top.get_mpz_t(), bottom.get_mpz_t());
  return top;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

ExactInteger staudt_clausen_denominator(std::uint64_t k) {
  if (k == 0 || k % 2 != 0) throw DomainError("von Staudt-Clausen needs an even index >= 2");
  mpz_class den = 1;
  for (std::uint64_t d = 1; d * d <= k; ++d) {
    if (k % d != 0) continue;
    if (is_prime(d + 1)) den *= static_cast<unsigned long>(d + 1);
    const std::uint64_t e = k / d;
    if (e != d && is_prime(e + 1)) den *= static_cast<unsigned long>(e + 1);
  }
  return den;
}

}  // namespace df
