#include <benchmark/benchmark.h>

#include "rngperc/percolation.hpp"
#include "rngperc/point_process.hpp"
#include "rngperc/proximity.hpp"
#include "rngperc/random.hpp"

using namespace rngperc;

static void BM_union_find(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RandomStream rs(7);
  std::vector<std::pair<int, int>> pairs(4 * n);
  for (auto& p : pairs) p = {static_cast<int>(rs.below(n)), static_cast<int>(rs.below(n))};
  for (auto _ : state) {
    UnionFind uf(n);
    for (const auto& [a, b] : pairs) uf.unite(a, b);
    benchmark::DoNotOptimize(uf.find(0));
  }
  state.SetItemsProcessed(state.iterations() * pairs.size());
}
BENCHMARK(BM_union_find)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

static void BM_site_threshold(benchmark::State& state) {
  const double side = std::sqrt(static_cast<double>(state.range(0)));
  const auto cfg = sample_poisson(Window::square(side), 1.0, 11);
  const auto del = delaunay(cfg);
  const auto gab = gabriel(cfg, del);
  const auto g = rng(cfg, gab);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(crossing_threshold(g, cfg, MarkMode::Site, ++seed, cfg.window,
                                                default_crossing_delta(1.0)));
  }
  state.SetComplexityN(cfg.size());
}
BENCHMARK(BM_site_threshold)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();

static void BM_open_clusters(benchmark::State& state) {
  const double side = std::sqrt(static_cast<double>(state.range(0)));
  const auto cfg = sample_poisson(Window::square(side), 1.0, 13);
  const auto del = delaunay(cfg);
  const auto gab = gabriel(cfg, del);
  const auto g = rng(cfg, gab);
  const auto marks = mark_sites(cfg, 0.75, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(open_clusters(g, marks));
  }
  state.SetComplexityN(cfg.size());
}
BENCHMARK(BM_open_clusters)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Complexity();

BENCHMARK_MAIN();
