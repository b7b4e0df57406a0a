#include <benchmark/benchmark.h>

#include "dihedral/analysis.hpp"
#include "dihedral/towers.hpp"

using namespace dihedral;

static void BM_FirstReturnCastle(benchmark::State &state)
{
  DenjoyFlipSystem d(QuadField::golden());
  auto base = d.symmetric_cell(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(first_return_castle(d, base));
}
BENCHMARK(BM_FirstReturnCastle)->Arg(1)->Arg(4)->Arg(16);

static void BM_Certificate(benchmark::State &state)
{
  DenjoyFlipSystem d(QuadField::golden());
  std::vector<GroupElement> K{GroupElement::identity(), GroupElement::phi(), GroupElement::sigma()};
  Rational eps(1, state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(almost_finite_certificate(d, std::span<GroupElement const>(K), eps));
}
BENCHMARK(BM_Certificate)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_DenjoyHomology(benchmark::State &state)
{
  DenjoyFlipSystem d(QuadField::golden());
  for (auto _ : state)
    benchmark::DoNotOptimize(analyze(d, static_cast<int>(state.range(0)), Method::both));
}
BENCHMARK(BM_DenjoyHomology)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
