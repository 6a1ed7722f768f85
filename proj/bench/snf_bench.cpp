// Compares the OpenMP SNF kernel against the serial reference on random
// square matrices.  The two are bit-identical by construction (same
// elementary-operation schedule), so this measures dispatch overhead at
// small sizes and the parallel payoff once the active submatrix is large.
#include <benchmark/benchmark.h>

#include <random>

#include "tdual/snf.hpp"

namespace {

tdual::Matrix random_matrix(std::size_t n, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> entry(-50, 50);
  tdual::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = entry(rng);
  return m;
}

void bm_snf_parallel(benchmark::State& state) {
  const auto m = random_matrix(state.range(0), 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(tdual::smith_normal_form(m));
}

void bm_snf_serial(benchmark::State& state) {
  const auto m = random_matrix(state.range(0), 42);
  for (auto _ : state)
    benchmark::DoNotOptimize(tdual::smith_normal_form_serial(m));
}

void bm_matmul(benchmark::State& state) {
  const auto a = random_matrix(state.range(0), 7);
  const auto b = random_matrix(state.range(0), 11);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}

}  // namespace

// Entry growth in exact integer elimination makes the cost superquadratic;
// 48x48 already carries ~100-digit invariant factors, so the grid stops
// there to keep a full run in seconds.
BENCHMARK(bm_snf_parallel)->Arg(8)->Arg(16)->Arg(32)->Arg(48);
BENCHMARK(bm_snf_serial)->Arg(8)->Arg(16)->Arg(32)->Arg(48);
BENCHMARK(bm_matmul)->Arg(16)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
