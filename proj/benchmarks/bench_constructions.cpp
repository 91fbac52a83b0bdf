#include <benchmark/benchmark.h>

#include "hslope/constructions.hpp"

using namespace hslope;

namespace {

void BM_ValidateConditions(benchmark::State& state) {
  PrecisionScope scope(static_cast<Bits>(64 * state.range(0)));
  Generator g{1, 64, 1, 4096, static_cast<int>(state.range(0))};
  ConstructionSpec spec = build_construction(Variant::full_interval, g);
  for (auto _ : state) benchmark::DoNotOptimize(validate_conditions(spec));
}
BENCHMARK(BM_ValidateConditions)->Arg(4)->Arg(8)->Arg(16);

void BM_SearchConstants(benchmark::State& state) {
  const Variant v = state.range(0) == 0 ? Variant::full_interval : Variant::half_interval;
  for (auto _ : state) benchmark::DoNotOptimize(search_constants(v, 4));
}
BENCHMARK(BM_SearchConstants)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RegionLemmas(benchmark::State& state) {
  ConstructionSpec spec = build_construction(Variant::full_interval, Generator{1, 64, 1, 4096, 4});
  LemmaGridOptions opt;
  opt.samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_region_lemmas(spec, 2, opt));
}
BENCHMARK(BM_RegionLemmas)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
