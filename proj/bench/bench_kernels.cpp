// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "colorvib/pairgen.hpp"
#include "colorvib/psychometrics.hpp"

namespace {

using namespace colorvib;

std::vector<double> sweep(std::size_t n) { return linspace(0.0, 50.0, n); }

void BM_GamutScanSerial(benchmark::State& state) {
  const auto r = sweep(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    for (const auto& e : builtin_atlas()) benchmark::DoNotOptimize(sample_gamut_serial(e, 0.4, r));
  }
}
void BM_GamutScanParallel(benchmark::State& state) {
  const auto r = sweep(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    for (const auto& e : builtin_atlas()) benchmark::DoNotOptimize(sample_gamut(e, 0.4, r));
  }
}
BENCHMARK(BM_GamutScanSerial)->Arg(1000)->Arg(10000);
BENCHMARK(BM_GamutScanParallel)->Arg(1000)->Arg(10000);

std::vector<std::vector<double>> grids(std::size_t per_color) {
  return std::vector<std::vector<double>>(builtin_atlas().size(), sweep(per_color));
}

void BM_StimulusSetSerial(benchmark::State& state) {
  const auto g = grids(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_stimulus_set_serial(builtin_atlas(), g, 0.4));
}
void BM_StimulusSetParallel(benchmark::State& state) {
  const auto g = grids(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_stimulus_set(builtin_atlas(), g, 0.4));
}
BENCHMARK(BM_StimulusSetSerial)->Arg(8)->Arg(1000);
BENCHMARK(BM_StimulusSetParallel)->Arg(8)->Arg(1000);

std::vector<ObservationBin> synthetic_bins(std::size_t count) {
  std::mt19937_64 rng(1);
  std::vector<ObservationBin> bins;
  for (double r : linspace(1.0, 40.0, count)) {
    const double p = 1.0 / (1.0 + std::exp(-0.3 * (r - 24.4)));
    std::binomial_distribution<std::size_t> draw(200, p);
    bins.push_back({r, 200, draw(rng)});
  }
  return bins;
}

void BM_GridSearchSerial(benchmark::State& state) {
  const auto bins = synthetic_bins(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(coarse_grid_search_serial(bins, FitGrid{}));
}
void BM_GridSearchParallel(benchmark::State& state) {
  const auto bins = synthetic_bins(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(coarse_grid_search(bins, FitGrid{}));
}
BENCHMARK(BM_GridSearchSerial)->Arg(8)->Arg(64);
BENCHMARK(BM_GridSearchParallel)->Arg(8)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
