#include <benchmark/benchmark.h>

#include "rngperc/bounds.hpp"
#include "rngperc/geometry.hpp"
#include "rngperc/rolling_ball.hpp"

using namespace rngperc;

static void BM_p_rn_bound(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  const double tol = 1e-8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p_rn_bound(r, r, tol));
  }
}
BENCHMARK(BM_p_rn_bound)->Arg(2)->Arg(8)->Arg(8000);

static void BM_certificate(benchmark::State& state) {
  BoundParameters params;
  params.r = params.s = static_cast<double>(state.range(0));
  params.m = default_m(params.r);
  for (auto _ : state) {
    benchmark::DoNotOptimize(certificate(params, 1e-8));
  }
}
BENCHMARK(BM_certificate)->Arg(2)->Arg(8000);

static void BM_two_square_event(benchmark::State& state) {
  const TwoSquareRegion region{2.0, 2.0};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const auto sample = make_two_square_sample(region, ++seed);
    benchmark::DoNotOptimize(test_event_E(sample));
    benchmark::DoNotOptimize(test_good_event(sample));
  }
}
BENCHMARK(BM_two_square_event);

BENCHMARK_MAIN();
