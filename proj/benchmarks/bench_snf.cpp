#include <random>

#include <benchmark/benchmark.h>

#include "dihedral/abgroups.hpp"

using namespace dihedral;

static void BM_SmithRandom(benchmark::State &state)
{
  auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(5);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = static_cast<long>(rng() % 201) - 100;
  for (auto _ : state)
    benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_SmithRandom)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_DiagonalOnly(benchmark::State &state)
{
  auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(6);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = static_cast<long>(rng() % 201) - 100;
  for (auto _ : state)
    benchmark::DoNotOptimize(smith_diagonal(m));
}
BENCHMARK(BM_DiagonalOnly)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
