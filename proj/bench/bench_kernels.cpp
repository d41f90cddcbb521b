// Serial against OpenMP versions of the hot kernels.

#include <benchmark/benchmark.h>

#include "df/kernels.hpp"
#include "df/oracle.hpp"

using namespace df;

namespace {

std::vector<mpz_class> row_at(int n) {
  std::vector<mpz_class> row{1};
  for (int i = 1; i <= n; ++i) row = kernels::zigzag_row_serial(row);
  return row;
}

void BM_ZigzagRowSerial(benchmark::State& state) {
  const auto prev = row_at(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::zigzag_row_serial(prev));
}

void BM_ZigzagRowParallel(benchmark::State& state) {
  const auto prev = row_at(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::zigzag_row_parallel(prev));
}

void BM_FactorialSerial(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::range_product_serial(1, n + 1));
}

void BM_FactorialParallel(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::range_product_parallel(1, n + 1));
}

void BM_PartitionsSerial(benchmark::State& state) {
  for (auto _ : state) {
    std::vector<mpz_class> t{1};
    kernels::extend_partitions_serial(t, static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(t.back());
  }
}

void BM_PartitionsParallel(benchmark::State& state) {
  for (auto _ : state) {
    std::vector<mpz_class> t{1};
    kernels::extend_partitions_parallel(t, static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(t.back());
  }
}

void BM_MachinSerial(benchmark::State& state) {
  const auto bits = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::machin_pair(bits, false));
}

void BM_MachinParallel(benchmark::State& state) {
  const auto bits = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::machin_pair(bits, true));
}

}  // namespace

BENCHMARK(BM_ZigzagRowSerial)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZigzagRowParallel)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FactorialSerial)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FactorialParallel)->Arg(20000)->Arg(100000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_PartitionsSerial)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartitionsParallel)->Arg(5000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_MachinSerial)->Arg(66000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MachinParallel)->Arg(66000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
