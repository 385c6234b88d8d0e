#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rngperc/geometry.hpp"
#include "rngperc/percolation.hpp"
#include "rngperc/point_process.hpp"
#include "rngperc/proximity.hpp"

namespace rngperc {

// Two side-by-side squares of side R = 2r + 2s in canonical frame:
// S1 = [0,R] x [0,R], S2 = [R,2R] x [0,R], central disks C1, C2 of radius r,
// and the corridor band L between them (half-width r about the axis).
struct TwoSquareRegion {
  double r = 1.0;
  double s = 1.0;

  double R() const { return 2.0 * (r + s); }
  Window rect() const { return {0.0, 0.0, 2.0 * R(), R()}; }
  Point c1() const { return {0.5 * R(), 0.5 * R()}; }
  Point c2() const { return {1.5 * R(), 0.5 * R()}; }
  double axis_y() const { return 0.5 * R(); }

  bool in_c1(Point p) const { return dist2(p, c1()) <= r * r; }
  bool in_c2(Point p) const { return dist2(p, c2()) <= r * r; }
  // Corridor: central disk C1 plus the band between the disks, C2 excluded.
  bool in_corridor(Point p) const;
  // Stadium C1 ∪ L ∪ C2 (all points within r of the axis segment).
  bool in_stadium(Point p) const;

  // Center of the rolling disk for a corridor point v: the unique point on
  // the axis segment at distance r from v on the C2 side. The disk D_v then
  // lies inside the stadium with v on its C1-side boundary.
  Point rolling_center(Point v) const;
  bool in_rolling_disk(Point v, Point u) const {
    return dist2(u, rolling_center(v)) <= r * r;
  }
};

// A sampled two-square configuration with its relative neighborhood graph.
struct TwoSquareSample {
  TwoSquareRegion region;
  PointConfiguration config;
  ProximityGraph rng_graph;
};

TwoSquareSample make_two_square_sample(const TwoSquareRegion& region, std::uint64_t seed);
TwoSquareSample make_two_square_sample(const TwoSquareRegion& region,
                                       std::vector<Point> points);

// Forward-edge event: every corridor point v has a neighbor u with
// v ~ u in the restricted graph, d(u,v) <= s, and u in D_v.
bool test_event_E(const TwoSquareSample& sample);
bool test_event_E(const TwoSquareRegion& region, const std::vector<Point>& config);

// (corridor point count, points with no admissible forward step).
std::pair<std::int64_t, std::int64_t> count_forward_failures(const TwoSquareSample& sample);

struct OccupancyEvents {
  bool f1 = false;  // C1 holds at least one point
  bool f2 = false;
  bool a_m = true;  // stadium holds at most m points
};
OccupancyEvents test_events_F_A(const TwoSquareRegion& region,
                                const std::vector<Point>& config, std::int64_t m);

// Connection event: every vertex in C1 reaches some vertex in C2 through
// edges whose lune is certifiably inside the two squares. When `path` is
// given, it receives one explicit vertex path (from the greedy rolling chain)
// for the first C1 vertex, when such a chain exists.
bool test_good_event(const TwoSquareSample& sample, bool toward_c2 = true,
                     std::vector<int>* path = nullptr);
bool test_good_event(const TwoSquareRegion& region, const std::vector<Point>& config);

// Greedy rolling chain from `start`: repeatedly steps to the admissible
// neighbor maximizing forward progress. Returns the vertex path ending in C2,
// or nullopt if the chain stalls.
std::optional<std::vector<int>> greedy_rolling_path(const TwoSquareSample& sample, int start);

// Renormalized block process: vertex (i,j) of the grid owns square
// [R i, R(i+1)] x [R j, R(j+1)]; an edge is open iff both directed good
// events hold for its square pair, using only points in those two squares.
struct RenormalizedLattice {
  int grid_w = 0;
  int grid_h = 0;
  double R = 0.0;
  std::vector<std::uint8_t> horizontal_open;  // (grid_w-1) * grid_h
  std::vector<std::uint8_t> vertical_open;    // grid_w * (grid_h-1)

  int h_index(int i, int j) const { return j * (grid_w - 1) + i; }
  int v_index(int i, int j) const { return j * grid_w + i; }
};

RenormalizedLattice build_renormalized_lattice(const PointConfiguration& big_config, double r,
                                               double s, int grid_w, int grid_h);

// Recompute one edge state from exactly the two squares' points (independence
// diagnostics).
bool renormalized_edge_state(const PointConfiguration& big_config, double r, double s, int i,
                             int j, bool horizontal);

// The lattice as a bond-marked grid graph, ready for cluster analysis.
struct RenormalizedBondProcess {
  ProximityGraph grid_graph;
  MarkedConfiguration marks;
  PointConfiguration vertex_positions;  // square centers, for crossing tests
};
RenormalizedBondProcess renormalized_to_bond_process(const RenormalizedLattice& lattice);

struct EventStatistics {
  double r = 0.0, s = 0.0;
  std::int64_t m = 0;
  int replicas = 0;
  double p_E_fail = 0.0;
  double p_F_fail = 0.0;
  double p_Am_fail = 0.0;
  double p_good = 0.0;
  double analytic_E = 0.0;   // min(1, 2r(2r+2s) p_rn_bound)
  double analytic_F = 0.0;   // e^{-pi r^2}
  double analytic_Am = 0.0;  // exact Poisson tail
  std::int64_t containment_violations = 0;  // E∩F1∩A_m samples without the good event
  // Per-point statistics: fraction of corridor points with no admissible
  // forward step. Its expectation is the quantity the analytic p_rn_bound
  // forms bound from above (Slivnyak: the process seen from one of its
  // corridor points is again Poisson).
  std::int64_t corridor_points = 0;
  std::int64_t forward_failures = 0;
  double p_point_fail = 0.0;
};

EventStatistics rolling_ball_statistics(double r, double s, std::int64_t m, int replicas,
                                        std::uint64_t seed, int workers = 1,
                                        double quadrature_tol = 1e-8);

}  // namespace rngperc
