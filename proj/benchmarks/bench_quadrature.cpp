#include <benchmark/benchmark.h>

#include "hslope/measures.hpp"

using namespace hslope;

namespace {

void BM_DensityReducedP(benchmark::State& state) {
  Density d{static_cast<DensityFamily>(state.range(0)), Real(0.5)};
  const std::complex<double> z = std::polar(2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(density_reduced_p(d, z));
}
BENCHMARK(BM_DensityReducedP)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_ClosedFormP(benchmark::State& state) {
  PrecisionScope scope(256);
  Density d{DensityFamily::alpha_right, Real(0.5)};
  Complex z = polar(Real(2), Real(1));
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_p(d, z));
}
BENCHMARK(BM_ClosedFormP);

void BM_DensityMoments(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(FiniteMeasure::density_only(DensityFamily::alpha_right, Real(0.25)));
  }
}
BENCHMARK(BM_DensityMoments)->Unit(benchmark::kMillisecond);

}  // namespace
