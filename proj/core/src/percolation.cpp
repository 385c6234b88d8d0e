#include "rngperc/percolation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "rngperc/error.hpp"
#include "rngperc/random.hpp"

namespace rngperc {

namespace {

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  workers = std::max(1, workers);
  if (workers == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

ProximityGraph build_kind(const PointConfiguration& cfg, GraphKind kind) {
  auto del = delaunay(cfg);
  if (kind == GraphKind::Delaunay) return std::move(del.graph);
  auto gab = gabriel(cfg, del);
  if (kind == GraphKind::Gabriel) return gab;
  return rng(cfg, gab);
}

}  // namespace

ClusterLabeling open_clusters(const ProximityGraph& graph, const MarkedConfiguration& marks) {
  const int n = graph.vertex_count;
  ClusterLabeling lab;
  lab.cluster_id.assign(n, -1);

  if (marks.mode == MarkMode::Site) {
    if (static_cast<int>(marks.marks.size()) != n)
      throw SizeMismatchError("open_clusters: site marks do not match vertex count");
    UnionFind uf(n);
    for (const auto& e : graph.edges)
      if (marks.marks[e.u] && marks.marks[e.v]) uf.unite(e.u, e.v);
    std::vector<std::int32_t> root_label(n, -1);
    for (int v = 0; v < n; ++v) {
      if (!marks.marks[v]) continue;
      ++lab.open_count;
      const int r = uf.find(v);
      if (root_label[r] < 0) {
        root_label[r] = static_cast<std::int32_t>(lab.cluster_sizes.size());
        lab.cluster_sizes.push_back(0);
      }
      lab.cluster_id[v] = root_label[r];
      ++lab.cluster_sizes[root_label[r]];
    }
  } else {
    if (marks.marks.size() != graph.edges.size())
      throw SizeMismatchError("open_clusters: bond marks do not match edge count");
    UnionFind uf(n);
    for (std::size_t e = 0; e < graph.edges.size(); ++e)
      if (marks.marks[e]) uf.unite(graph.edges[e].u, graph.edges[e].v);
    std::vector<std::int32_t> root_label(n, -1);
    lab.open_count = n;
    for (int v = 0; v < n; ++v) {
      const int r = uf.find(v);
      if (root_label[r] < 0) {
        root_label[r] = static_cast<std::int32_t>(lab.cluster_sizes.size());
        lab.cluster_sizes.push_back(0);
      }
      lab.cluster_id[v] = root_label[r];
      ++lab.cluster_sizes[root_label[r]];
    }
  }
  lab.largest_size = lab.cluster_sizes.empty()
                         ? 0
                         : *std::max_element(lab.cluster_sizes.begin(), lab.cluster_sizes.end());
  return lab;
}

bool crossing(const ProximityGraph& graph, const PointConfiguration& config,
              const ClusterLabeling& labeling, const Window& window, double delta) {
  (void)graph;
  const int k = labeling.cluster_count();
  if (k == 0) return false;
  std::vector<std::uint8_t> left(k, 0), right(k, 0);
  for (int v = 0; v < config.size(); ++v) {
    const auto c = labeling.cluster_id[v];
    if (c < 0) continue;
    if (config.points[v].x <= window.x0 + delta) left[c] = 1;
    if (config.points[v].x >= window.x1 - delta) right[c] = 1;
  }
  for (int c = 0; c < k; ++c)
    if (left[c] && right[c]) return true;
  return false;
}

double default_crossing_delta(double intensity) { return 2.0 / std::sqrt(intensity); }

double crossing_threshold(const ProximityGraph& graph, const PointConfiguration& config,
                          MarkMode mode, std::uint64_t marks_seed, const Window& window,
                          double delta) {
  const int n = graph.vertex_count;
  constexpr double kNever = std::numeric_limits<double>::infinity();
  if (n == 0) return kNever;

  UnionFind uf(n);
  std::vector<std::uint8_t> left(n, 0), right(n, 0);
  std::vector<std::uint8_t> active(n, 0);
  for (int v = 0; v < n; ++v) {
    left[v] = config.points[v].x <= window.x0 + delta;
    right[v] = config.points[v].x >= window.x1 - delta;
  }

  // Root flags merged on union; crossing appears when one root holds both.
  std::vector<std::uint8_t> root_left = left, root_right = right;
  auto unite_check = [&](int a, int b) -> bool {
    const int ra = uf.find(a), rb = uf.find(b);
    if (ra == rb) return root_left[ra] && root_right[ra];
    const int r = uf.unite(ra, rb);
    const int other = (r == ra) ? rb : ra;
    root_left[r] = root_left[r] || root_left[other];
    root_right[r] = root_right[r] || root_right[other];
    return root_left[r] && root_right[r];
  };

  if (mode == MarkMode::Site) {
    std::vector<std::pair<double, int>> order(n);
    for (int v = 0; v < n; ++v) order[v] = {site_uniform(config, v, marks_seed), v};
    std::sort(order.begin(), order.end());
    for (const auto& [u, v] : order) {
      active[v] = 1;
      bool crossed = root_left[uf.find(v)] && root_right[uf.find(v)];
      for (int i = graph.adj_offsets[v]; i < graph.adj_offsets[v + 1]; ++i) {
        const int w = graph.adj[i];
        if (active[w]) crossed = unite_check(v, w) || crossed;
      }
      if (crossed) return u;
    }
    return kNever;
  }

  std::vector<std::pair<double, int>> order(graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e)
    order[e] = {bond_uniform(config, graph.edges[e].u, graph.edges[e].v, marks_seed),
                static_cast<int>(e)};
  std::sort(order.begin(), order.end());
  // With every site occupied a single-band vertex may already cross only if
  // some vertex sits in both bands; check before any edge opens.
  for (int v = 0; v < n; ++v)
    if (left[v] && right[v]) return 0.0;
  for (const auto& [u, e] : order) {
    if (unite_check(graph.edges[e].u, graph.edges[e].v)) return u;
  }
  return kNever;
}

std::vector<double> replica_thresholds(const SweepConfig& cfg) {
  std::vector<double> thresholds(cfg.replicas);
  const double delta = default_crossing_delta(cfg.intensity);
  parallel_for(cfg.replicas, cfg.workers, [&](int rep) {
    const std::uint64_t rep_seed =
        derive_seed(derive_seed(cfg.master_seed, stream::kReplica), rep);
    const auto config = sample_poisson(cfg.window, cfg.intensity, rep_seed);
    const auto graph = build_kind(config, cfg.kind);
    thresholds[rep] =
        crossing_threshold(graph, config, cfg.mode, rep_seed, cfg.window, delta);
  });
  return thresholds;
}

SweepResult sweep(const SweepConfig& cfg) {
  if (cfg.replicas < 1) throw DomainError("sweep: need at least one replica");
  if (!std::is_sorted(cfg.p_grid.begin(), cfg.p_grid.end()))
    throw DomainError("sweep: p_grid must be sorted ascending");
  const auto thresholds = replica_thresholds(cfg);
  SweepResult out;
  out.p_grid = cfg.p_grid;
  out.replicas = cfg.replicas;
  out.window = cfg.window;
  out.kind = cfg.kind;
  out.mode = cfg.mode;
  out.crossing_prob.reserve(cfg.p_grid.size());
  out.std_err.reserve(cfg.p_grid.size());
  for (const double p : cfg.p_grid) {
    std::int64_t cnt = 0;
    for (const double t : thresholds) cnt += (p > t) ? 1 : 0;
    const double q = static_cast<double>(cnt) / cfg.replicas;
    out.crossing_prob.push_back(q);
    out.std_err.push_back(std::sqrt(q * (1.0 - q) / cfg.replicas));
  }
  return out;
}

namespace {

double bisect_cdf(const std::vector<double>& sorted_thresholds, double target, double tol) {
  // crossing probability at p equals the CDF fraction of thresholds < p
  double lo = 0.0, hi = 1.0;
  auto q = [&](double p) {
    const auto it =
        std::lower_bound(sorted_thresholds.begin(), sorted_thresholds.end(), p);
    return static_cast<double>(it - sorted_thresholds.begin()) / sorted_thresholds.size();
  };
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (q(mid) < target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

PcEstimate estimate_pc(const PcConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) throw DomainError("estimate_pc: tolerance must be positive");
  SweepConfig sc;
  sc.window = cfg.window;
  sc.intensity = cfg.intensity;
  sc.kind = cfg.kind;
  sc.mode = cfg.mode;
  sc.master_seed = cfg.master_seed;
  sc.workers = cfg.workers;

  std::vector<double> thresholds;
  int replicas = 0;
  int batch = std::max(2, cfg.initial_replicas);
  RandomStream boot(derive_seed(cfg.master_seed, stream::kBootstrap));

  while (true) {
    // Extend deterministically: replica seeds depend only on the index.
    SweepConfig ext = sc;
    ext.replicas = replicas + batch;
    auto all = replica_thresholds(ext);
    thresholds = std::move(all);
    replicas = static_cast<int>(thresholds.size());

    std::vector<double> sorted = thresholds;
    std::sort(sorted.begin(), sorted.end());
    const double p_hat = bisect_cdf(sorted, cfg.target, 1e-6);

    // Percentile bootstrap over replica thresholds.
    constexpr int kBoot = 800;
    std::vector<double> boots(kBoot);
    std::vector<double> resample(sorted.size());
    for (int b = 0; b < kBoot; ++b) {
      for (std::size_t i = 0; i < resample.size(); ++i)
        resample[i] = thresholds[boot.below(thresholds.size())];
      std::sort(resample.begin(), resample.end());
      boots[b] = bisect_cdf(resample, cfg.target, 1e-6);
    }
    std::sort(boots.begin(), boots.end());
    const double lo = boots[static_cast<int>(0.025 * kBoot)];
    const double hi = boots[static_cast<int>(0.975 * kBoot) - 1];

    if (hi - lo <= 2.0 * cfg.tolerance) {
      return {p_hat, lo, hi, replicas, cfg.target, cfg.mode, cfg.kind};
    }
    if (replicas >= cfg.max_replicas) {
      throw BudgetExhaustedError("estimate_pc: confidence interval still wider than tolerance at replica budget");
    }
    batch = std::min(replicas, cfg.max_replicas - replicas);
  }
}

std::pair<double, double> degree_relation(double pc_bond) {
  if (pc_bond < 0.2 - 1e-12 || pc_bond > 1.0 + 1e-12)
    throw DomainError("degree_relation: pc_bond outside [1/5, 1]");
  pc_bond = std::min(std::max(pc_bond, 0.2), 1.0);
  const double upper = 1.0 - std::pow(1.0 - pc_bond, 6.0);
  return {pc_bond, upper};
}

}  // namespace rngperc
