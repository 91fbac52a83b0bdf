#include <benchmark/benchmark.h>

#include "hslope/dynamics.hpp"

using namespace hslope;

namespace {

ParabolicMap map_for(int id) {
  switch (id) {
    case 0: return ParabolicMap::translation(Real(1));
    case 1: return ParabolicMap::delta_at_zero();
    case 2: return ParabolicMap::alpha_right(Real(0.5));
    case 3: return ParabolicMap::alpha_left(Real(0.25));
    default: return ParabolicMap::log_example();
  }
}

const char* kNames[] = {"translation", "delta0", "alpha_right", "alpha_left", "log"};

void BM_OrbitStep(benchmark::State& state) {
  const int id = static_cast<int>(state.range(0));
  PrecisionScope scope(static_cast<Bits>(state.range(1)));
  ParabolicMap f = map_for(id);
  MapEvaluator ev(f);
  OrbitStepper s(ev, UHPoint::make(Real(0), Real(1)));
  for (auto _ : state) benchmark::DoNotOptimize(s.step());
  state.SetLabel(kNames[id]);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_OrbitStep)->ArgsProduct({{0, 1, 2, 3, 4}, {64, 256, 1024}});

void BM_IterateOrbit(benchmark::State& state) {
  ParabolicMap f = ParabolicMap::alpha_right(Real(0.5));
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(iterate_orbit(f, UHPoint::make(Real(0), Real(1)), n));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IterateOrbit)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
