#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rngperc/point_process.hpp"
#include "rngperc/proximity.hpp"

namespace rngperc {

// Disjoint-set forest with union by size and path halving.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), size_(n, 1) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Returns the surviving root.
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }
  int component_size(int x) { return size_[find(x)]; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

struct ClusterLabeling {
  std::vector<std::int32_t> cluster_id;  // -1 for closed sites
  std::vector<std::int64_t> cluster_sizes;
  std::int64_t largest_size = 0;
  std::int64_t open_count = 0;
  int cluster_count() const { return static_cast<int>(cluster_sizes.size()); }
};

// Connected components of the open subgraph. Site mode: open vertices joined
// by graph edges with both endpoints open. Bond mode: every vertex occupied,
// open edges join them (isolated vertices are singleton clusters).
ClusterLabeling open_clusters(const ProximityGraph& graph, const MarkedConfiguration& marks);

// Left-right crossing: some cluster touches both vertical boundary bands of
// width `delta`.
bool crossing(const ProximityGraph& graph, const PointConfiguration& config,
              const ClusterLabeling& labeling, const Window& window, double delta);

double default_crossing_delta(double intensity);

// Smallest p at which the coupled-marks crossing event switches on, computed
// by activating carriers in increasing order of their uniforms (exact, one
// union-find pass). Returns +infinity when even the fully open graph does not
// cross. crossing(p) holds iff p > threshold.
double crossing_threshold(const ProximityGraph& graph, const PointConfiguration& config,
                          MarkMode mode, std::uint64_t marks_seed, const Window& window,
                          double delta);

struct SweepResult {
  std::vector<double> p_grid;
  std::vector<double> crossing_prob;
  std::vector<double> std_err;
  int replicas = 0;
  Window window;
  GraphKind kind = GraphKind::Rng;
  MarkMode mode = MarkMode::Site;
};

struct SweepConfig {
  Window window;
  double intensity = 1.0;
  GraphKind kind = GraphKind::Rng;
  MarkMode mode = MarkMode::Site;
  std::vector<double> p_grid;
  int replicas = 1;
  std::uint64_t master_seed = 0;
  int workers = 1;
};

SweepResult sweep(const SweepConfig& cfg);

// Per-replica crossing thresholds for a sweep configuration; the building
// block behind sweep() and estimate_pc().
std::vector<double> replica_thresholds(const SweepConfig& cfg);

struct PcEstimate {
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  int replicas = 0;
  double target = 0.5;
  MarkMode mode = MarkMode::Site;
  GraphKind kind = GraphKind::Rng;
};

struct PcConfig {
  Window window;
  double intensity = 1.0;
  GraphKind kind = GraphKind::Rng;
  MarkMode mode = MarkMode::Site;
  double target = 0.5;
  double tolerance = 0.01;  // bootstrap CI half width
  int initial_replicas = 64;
  int max_replicas = 1024;
  std::uint64_t master_seed = 0;
  int workers = 1;
};

// Bisection of the estimated crossing probability against `target`, with a
// bootstrap confidence interval. Doubles the replica count until the CI is
// narrow enough; throws BudgetExhaustedError past max_replicas.
PcEstimate estimate_pc(const PcConfig& cfg);

// Degree-6 bond/site threshold sandwich: [pc_bond, 1 - (1 - pc_bond)^6].
std::pair<double, double> degree_relation(double pc_bond);

}  // namespace rngperc
