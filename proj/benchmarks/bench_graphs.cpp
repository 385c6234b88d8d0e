#include <benchmark/benchmark.h>

#include "rngperc/point_process.hpp"
#include "rngperc/proximity.hpp"

using namespace rngperc;

static void BM_delaunay(benchmark::State& state) {
  const double side = std::sqrt(static_cast<double>(state.range(0)));
  const auto cfg = sample_poisson(Window::square(side), 1.0, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(delaunay(cfg));
  }
  state.SetComplexityN(cfg.size());
}
BENCHMARK(BM_delaunay)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();

static void BM_rng_pipeline(benchmark::State& state) {
  const double side = std::sqrt(static_cast<double>(state.range(0)));
  const auto cfg = sample_poisson(Window::square(side), 1.0, 42);
  for (auto _ : state) {
    const auto del = delaunay(cfg);
    const auto gab = gabriel(cfg, del);
    benchmark::DoNotOptimize(rng(cfg, gab));
  }
  state.SetComplexityN(cfg.size());
}
BENCHMARK(BM_rng_pipeline)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();

static void BM_brute_force_rng(benchmark::State& state) {
  const auto cfg = sample_uniform_count(Window::square(14.0), state.range(0), 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_rng(cfg));
  }
  state.SetComplexityN(cfg.size());
}
BENCHMARK(BM_brute_force_rng)->Arg(100)->Arg(200)->Complexity();

BENCHMARK_MAIN();
