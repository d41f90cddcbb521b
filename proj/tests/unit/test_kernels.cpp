#include <doctest.h>

#include "df/kernels.hpp"

using namespace df;

TEST_CASE("parallel zigzag rows equal the serial rows") {
  std::vector<mpz_class> row{1};
  for (int n = 1; n <= 600; ++n) {
    std::vector<mpz_class> serial = kernels::zigzag_row_serial(row);
    if (n % 50 == 0) {
      for (int blocks : {2, 3, 7, 16}) {
        CHECK(kernels::zigzag_row_parallel(row, blocks) == serial);
      }
      CHECK(kernels::zigzag_row_parallel(row) == serial);
    }
    row = std::move(serial);
  }
}

TEST_CASE("parallel range products equal the serial ones") {
  for (auto [lo, hi] : {std::pair<std::uint64_t, std::uint64_t>{1, 1}, {1, 2}, {5, 100}, {1, 5000},
                        {1234, 20000}}) {
    CHECK(kernels::range_product_parallel(lo, hi) == kernels::range_product_serial(lo, hi));
  }
  CHECK(kernels::range_product_serial(1, 6) == 120);
}

TEST_CASE("parallel partition extension equals the serial one") {
  std::vector<mpz_class> a{1}, b{1};
  kernels::extend_partitions_serial(a, 3000);
  kernels::extend_partitions_parallel(b, 3000);
  CHECK(a == b);
  CHECK(a[10] == 42);
}

TEST_CASE("parallel arctangent series equal the serial ones") {
  for (std::uint64_t x : {5, 18, 57, 239}) {
    for (std::uint64_t bits : {100, 4000, 30000}) {
      std::uint64_t ts = 0, tp = 0;
      const mpz_class s = kernels::arctan_inv_serial(x, bits, &ts);
      CHECK(kernels::arctan_inv_parallel(x, bits, 4, &tp) == s);
      CHECK(tp == ts);
      CHECK(kernels::arctan_inv_parallel(x, bits) == s);
    }
  }
}
