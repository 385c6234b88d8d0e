#include "rngperc/rolling_ball.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "rngperc/bounds.hpp"
#include "rngperc/error.hpp"
#include "rngperc/random.hpp"

namespace rngperc {

namespace {

constexpr double kSqrt3Half = 0.8660254037844386;

ProximityGraph rng_of_points(const PointConfiguration& cfg) {
  if (cfg.size() <= 2) {
    std::vector<Edge> edges;
    if (cfg.size() == 2) edges.push_back({0, 1});
    return make_graph(GraphKind::Rng, cfg.size(), std::move(edges));
  }
  try {
    const auto del = delaunay(cfg);
    const auto gab = gabriel(cfg, del);
    return rng(cfg, gab);
  } catch (const DegenerateInputError&) {
    // Degenerate fixtures (exact ties the perturbation rule cannot absorb)
    // fall back to the definition-literal construction.
    return brute_force_rng(cfg);
  }
}

// Lune of an edge fits inside the two-square rectangle: conservative test via
// the covering disk of radius (sqrt(3)/2) d(u,v) around the midpoint.
bool edge_certifiable(const TwoSquareRegion& region, Point a, Point b) {
  const double rad = kSqrt3Half * dist(a, b);
  const Point mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  const Window rect = region.rect();
  return mid.x - rad >= rect.x0 && mid.x + rad <= rect.x1 && mid.y - rad >= rect.y0 &&
         mid.y + rad <= rect.y1;
}

// Admissible rolling move from corridor vertex v to neighbor u.
bool admissible_move(const TwoSquareRegion& region, const TwoSquareSample& sample, int v, int u) {
  const Point pv = sample.config.points[v];
  const Point pu = sample.config.points[u];
  if (dist2(pv, pu) > region.s * region.s) return false;
  return region.in_rolling_disk(pv, pu);
}

void parallel_replicas(int n, int workers, const std::function<void(int)>& body) {
  workers = std::max(1, workers);
  if (workers == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

bool TwoSquareRegion::in_corridor(Point p) const {
  if (in_c2(p)) return false;
  if (in_c1(p)) return true;
  const double dy = p.y - axis_y();
  return p.x >= c1().x && p.x <= c2().x && std::abs(dy) <= r;
}

bool TwoSquareRegion::in_stadium(Point p) const {
  if (in_c1(p) || in_c2(p)) return true;
  const double dy = p.y - axis_y();
  return p.x >= c1().x && p.x <= c2().x && std::abs(dy) <= r;
}

Point TwoSquareRegion::rolling_center(Point v) const {
  const double dy = v.y - axis_y();
  const double reach = std::sqrt(std::max(0.0, r * r - dy * dy));
  return {v.x + reach, axis_y()};
}

TwoSquareSample make_two_square_sample(const TwoSquareRegion& region, std::uint64_t seed) {
  TwoSquareSample s;
  s.region = region;
  s.config = sample_poisson(region.rect(), 1.0, seed);
  s.rng_graph = rng_of_points(s.config);
  return s;
}

TwoSquareSample make_two_square_sample(const TwoSquareRegion& region,
                                       std::vector<Point> points) {
  TwoSquareSample s;
  s.region = region;
  s.config.window = region.rect();
  s.config.points = std::move(points);
  canonical_sort(s.config.points);
  s.rng_graph = rng_of_points(s.config);
  return s;
}

bool test_event_E(const TwoSquareSample& sample) {
  return count_forward_failures(sample).second == 0;
}

// (corridor point count, points with no admissible forward step)
std::pair<std::int64_t, std::int64_t> count_forward_failures(const TwoSquareSample& sample) {
  const auto& region = sample.region;
  const auto& pts = sample.config.points;
  const auto& g = sample.rng_graph;
  std::int64_t corridor = 0, failures = 0;
  for (int v = 0; v < sample.config.size(); ++v) {
    if (!region.in_corridor(pts[v])) continue;
    ++corridor;
    bool has_forward = false;
    for (int i = g.adj_offsets[v]; i < g.adj_offsets[v + 1] && !has_forward; ++i)
      has_forward = admissible_move(region, sample, v, g.adj[i]);
    if (!has_forward) ++failures;
  }
  return {corridor, failures};
}

bool test_event_E(const TwoSquareRegion& region, const std::vector<Point>& config) {
  return test_event_E(make_two_square_sample(region, config));
}

OccupancyEvents test_events_F_A(const TwoSquareRegion& region,
                                const std::vector<Point>& config, std::int64_t m) {
  OccupancyEvents ev;
  std::int64_t stadium = 0;
  for (const auto& p : config) {
    if (region.in_c1(p)) ev.f1 = true;
    if (region.in_c2(p)) ev.f2 = true;
    if (region.in_stadium(p)) ++stadium;
  }
  ev.a_m = stadium <= m;
  return ev;
}

bool test_good_event(const TwoSquareSample& sample, bool toward_c2, std::vector<int>* path) {
  const auto& region = sample.region;
  const auto& pts = sample.config.points;
  const auto& g = sample.rng_graph;
  const int n = sample.config.size();

  auto in_source = [&](Point p) { return toward_c2 ? region.in_c1(p) : region.in_c2(p); };
  auto in_target = [&](Point p) { return toward_c2 ? region.in_c2(p) : region.in_c1(p); };

  // Multi-source BFS from the target disk over certifiable edges.
  std::vector<std::uint8_t> reaches(n, 0);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    if (in_target(pts[v])) {
      reaches[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int i = g.adj_offsets[v]; i < g.adj_offsets[v + 1]; ++i) {
      const int w = g.adj[i];
      if (!reaches[w] && edge_certifiable(region, pts[v], pts[w])) {
        reaches[w] = 1;
        stack.push_back(w);
      }
    }
  }

  bool ok = true;
  int first_source = -1;
  for (int v = 0; v < n; ++v) {
    if (!in_source(pts[v])) continue;
    if (first_source < 0) first_source = v;
    if (!reaches[v]) {
      ok = false;
      break;
    }
  }
  if (path && ok && first_source >= 0 && toward_c2) {
    if (auto chain = greedy_rolling_path(sample, first_source)) *path = std::move(*chain);
  }
  return ok;
}

bool test_good_event(const TwoSquareRegion& region, const std::vector<Point>& config) {
  return test_good_event(make_two_square_sample(region, config));
}

std::optional<std::vector<int>> greedy_rolling_path(const TwoSquareSample& sample, int start) {
  const auto& region = sample.region;
  const auto& pts = sample.config.points;
  const auto& g = sample.rng_graph;
  std::vector<std::uint8_t> visited(sample.config.size(), 0);
  std::vector<int> path{start};
  visited[start] = 1;
  int v = start;
  while (!region.in_c2(pts[v])) {
    // progress potential: x-coordinate of the rolling center
    int best = -1;
    double best_progress = -1.0;
    for (int i = g.adj_offsets[v]; i < g.adj_offsets[v + 1]; ++i) {
      const int u = g.adj[i];
      if (visited[u] || !admissible_move(region, sample, v, u)) continue;
      const double progress = region.in_c2(pts[u])
                                  ? std::numeric_limits<double>::infinity()
                                  : region.rolling_center(pts[u]).x;
      if (progress > best_progress) {
        best_progress = progress;
        best = u;
      }
    }
    if (best < 0) return std::nullopt;
    visited[best] = 1;
    path.push_back(best);
    v = best;
    if (path.size() > sample.config.points.size()) return std::nullopt;
  }
  return path;
}

namespace {

// Map a square pair of the big window onto the canonical two-square frame.
std::vector<Point> extract_pair_points(const PointConfiguration& big, double R, int i, int j,
                                       bool horizontal) {
  std::vector<Point> out;
  const double x0 = i * R, y0 = j * R;
  if (horizontal) {
    for (const auto& p : big.points) {
      if (p.x >= x0 && p.x <= x0 + 2.0 * R && p.y >= y0 && p.y <= y0 + R)
        out.push_back({p.x - x0, p.y - y0});
    }
  } else {
    // rotate the vertical pair into the horizontal frame
    for (const auto& p : big.points) {
      if (p.x >= x0 && p.x <= x0 + R && p.y >= y0 && p.y <= y0 + 2.0 * R)
        out.push_back({p.y - y0, (x0 + R) - p.x});
    }
  }
  return out;
}

bool pair_edge_open(const TwoSquareRegion& region, std::vector<Point> pts) {
  auto sample = make_two_square_sample(region, std::move(pts));
  if (!test_good_event(sample, true)) return false;
  return test_good_event(sample, false);
}

}  // namespace

RenormalizedLattice build_renormalized_lattice(const PointConfiguration& big_config, double r,
                                               double s, int grid_w, int grid_h) {
  if (grid_w < 1 || grid_h < 1)
    throw DomainError("build_renormalized_lattice: grid must be at least 1x1");
  const TwoSquareRegion region{r, s};
  const double R = region.R();
  const Window need{0.0, 0.0, grid_w * R, grid_h * R};
  if (big_config.window.x1 < need.x1 - 1e-9 || big_config.window.y1 < need.y1 - 1e-9 ||
      big_config.window.x0 > need.x0 + 1e-9 || big_config.window.y0 > need.y0 + 1e-9)
    throw DomainError("build_renormalized_lattice: configuration window does not cover the grid");

  RenormalizedLattice lat;
  lat.grid_w = grid_w;
  lat.grid_h = grid_h;
  lat.R = R;
  lat.horizontal_open.assign(static_cast<std::size_t>(std::max(0, grid_w - 1)) * grid_h, 0);
  lat.vertical_open.assign(static_cast<std::size_t>(grid_w) * std::max(0, grid_h - 1), 0);

  for (int j = 0; j < grid_h; ++j)
    for (int i = 0; i + 1 < grid_w; ++i)
      lat.horizontal_open[lat.h_index(i, j)] =
          pair_edge_open(region, extract_pair_points(big_config, R, i, j, true));
  for (int j = 0; j + 1 < grid_h; ++j)
    for (int i = 0; i < grid_w; ++i)
      lat.vertical_open[lat.v_index(i, j)] =
          pair_edge_open(region, extract_pair_points(big_config, R, i, j, false));
  return lat;
}

bool renormalized_edge_state(const PointConfiguration& big_config, double r, double s, int i,
                             int j, bool horizontal) {
  const TwoSquareRegion region{r, s};
  return pair_edge_open(region, extract_pair_points(big_config, region.R(), i, j, horizontal));
}

RenormalizedBondProcess renormalized_to_bond_process(const RenormalizedLattice& lattice) {
  RenormalizedBondProcess out;
  const int w = lattice.grid_w, h = lattice.grid_h;
  std::vector<Edge> edges;
  std::vector<std::uint8_t> marks;
  auto vid = [&](int i, int j) { return j * w + i; };
  for (int j = 0; j < h; ++j)
    for (int i = 0; i + 1 < w; ++i) {
      edges.push_back({vid(i, j), vid(i + 1, j)});
      marks.push_back(lattice.horizontal_open[lattice.h_index(i, j)]);
    }
  for (int j = 0; j + 1 < h; ++j)
    for (int i = 0; i < w; ++i) {
      edges.push_back({vid(i, j), vid(i, j + 1)});
      marks.push_back(lattice.vertical_open[lattice.v_index(i, j)]);
    }
  // make_graph sorts edges; keep marks aligned by sorting jointly.
  std::vector<std::size_t> order(edges.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  std::vector<Edge> sorted_edges(edges.size());
  std::vector<std::uint8_t> sorted_marks(edges.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    sorted_edges[k] = edges[order[k]];
    sorted_marks[k] = marks[order[k]];
  }
  out.grid_graph = make_graph(GraphKind::Rng, w * h, sorted_edges);
  out.marks.mode = MarkMode::Bond;
  out.marks.p = 0.0;
  out.marks.marks = std::move(sorted_marks);
  out.vertex_positions.window = {-0.5, -0.5, w - 0.5, h - 0.5};
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) out.vertex_positions.points.push_back({double(i), double(j)});
  return out;
}

EventStatistics rolling_ball_statistics(double r, double s, std::int64_t m, int replicas,
                                        std::uint64_t seed, int workers, double quadrature_tol) {
  const TwoSquareRegion region{r, s};
  EventStatistics st;
  st.r = r;
  st.s = s;
  st.m = m;
  st.replicas = replicas;

  std::atomic<std::int64_t> e_fail{0}, f_fail{0}, am_fail{0}, good{0}, contain{0};
  std::atomic<std::int64_t> corridor{0}, forward_failures{0};
  parallel_replicas(replicas, workers, [&](int rep) {
    const auto sample =
        make_two_square_sample(region, derive_seed(derive_seed(seed, stream::kReplica), rep));
    const auto [pts, failures] = count_forward_failures(sample);
    const bool E = failures == 0;
    const auto occ = test_events_F_A(region, sample.config.points, m);
    const bool G = test_good_event(sample, true);
    corridor += pts;
    forward_failures += failures;
    if (!E) ++e_fail;
    if (!occ.f1) ++f_fail;
    if (!occ.a_m) ++am_fail;
    if (G) ++good;
    if (E && occ.f1 && occ.a_m && !G) ++contain;
  });

  const double n = static_cast<double>(replicas);
  st.p_E_fail = e_fail / n;
  st.p_F_fail = f_fail / n;
  st.p_Am_fail = am_fail / n;
  st.p_good = good / n;
  st.containment_violations = contain;
  st.corridor_points = corridor;
  st.forward_failures = forward_failures;
  st.p_point_fail = corridor > 0 ? static_cast<double>(forward_failures) /
                                       static_cast<double>(corridor)
                                 : 0.0;

  st.analytic_E = std::min(1.0, std::exp(e_bar_bound(r, s, quadrature_tol).log_value));
  st.analytic_F = std::exp(f_bar_log(r));
  st.analytic_Am = std::min(1.0, std::exp(a_m_tail(r, s, m).log_exact));
  return st;
}

}  // namespace rngperc
