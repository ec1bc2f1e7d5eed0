#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "freecsk/conv.hpp"
#include "freecsk/csk.hpp"
#include "freecsk/limits.hpp"
#include "freecsk/series.hpp"
#include "freecsk/transforms.hpp"

using namespace freecsk;

namespace {

TruncatedSeries admissible(std::size_t order) {
  std::vector<double> c(order + 1, 0.0);
  c[1] = 1.3;
  for (std::size_t k = 2; k <= order; ++k) c[k] = (k % 2 ? -0.5 : 0.7) / static_cast<double>(k * k);
  return TruncatedSeries(std::move(c));
}

MomentSeq catalan(std::size_t order) {
  std::vector<double> m(order);
  double c = 1.0;
  for (std::size_t n = 1; n <= order; ++n) {
    c = c * 2.0 * (2.0 * n - 1.0) / (n + 1.0);
    m[n - 1] = c;
  }
  return MomentSeq(std::move(m), true);
}

}  // namespace

static void BM_Revert(benchmark::State& state) {
  const TruncatedSeries a = admissible(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(series::revert(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Revert)->RangeMultiplier(2)->Range(8, 128)->Complexity();

static void BM_SSeries(benchmark::State& state) {
  const MomentSeq m = catalan(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(s_series(m));
}
BENCHMARK(BM_SSeries)->Arg(10)->Arg(20)->Arg(40);

static void BM_BoxtimesPower(benchmark::State& state) {
  const MomentSeq m = catalan(20);
  for (auto _ : state) benchmark::DoNotOptimize(boxtimes_power(m, 2.5));
}
BENCHMARK(BM_BoxtimesPower);

static void BM_CauchyGReal(benchmark::State& state) {
  const Measure mp = Measure::marchenko_pastur_centered(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_G(mp, -3.0));
}
BENCHMARK(BM_CauchyGReal);

static void BM_CauchyGNearEdge(benchmark::State& state) {
  const Measure mp = Measure::marchenko_pastur_centered(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_G(mp, -1.0 - 1e-10));
}
BENCHMARK(BM_CauchyGNearEdge);

static void BM_CauchyGComplex(benchmark::State& state) {
  const Measure fp = Measure::free_poisson();
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_G(fp, std::complex<double>(2.0, 0.01)));
}
BENCHMARK(BM_CauchyGComplex);

static void BM_CskVariance(benchmark::State& state) {
  const CskFamily family(Measure::free_poisson());
  for (auto _ : state) benchmark::DoNotOptimize(family.variance(0.7));
}
BENCHMARK(BM_CskVariance);

static void BM_ConvergenceReport(benchmark::State& state) {
  const Measure fp = Measure::free_poisson();
  const auto kind = state.range(0) == 0 ? ScalingKind::boxplus : ScalingKind::uplus;
  for (auto _ : state) benchmark::DoNotOptimize(convergence_report(fp, kind));
}
BENCHMARK(BM_ConvergenceReport)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
