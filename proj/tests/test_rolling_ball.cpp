#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rngperc/bounds.hpp"
#include "rngperc/percolation.hpp"
#include "rngperc/random.hpp"
#include "rngperc/rolling_ball.hpp"

using namespace rngperc;

namespace {

// Jittered grid covering the two-square rectangle; dense enough that every
// corridor point has a short forward neighbor.
std::vector<Point> dense_cloud(const TwoSquareRegion& region, double spacing,
                               std::uint64_t seed) {
  std::vector<Point> pts;
  RandomStream rs(seed);
  const Window rect = region.rect();
  for (double x = rect.x0 + 0.3 * spacing; x < rect.x1; x += spacing)
    for (double y = rect.y0 + 0.3 * spacing; y < rect.y1; y += spacing)
      pts.push_back({x + 0.05 * spacing * (rs.uniform() - 0.5),
                     y + 0.05 * spacing * (rs.uniform() - 0.5)});
  return pts;
}

}  // namespace

TEST_CASE("region geometry: corridor, stadium, rolling disk") {
  const TwoSquareRegion region{2.0, 2.0};
  CHECK(region.R() == 8.0);
  const Point c1 = region.c1(), c2 = region.c2();
  CHECK(region.in_c1(c1));
  CHECK(region.in_c2(c2));
  CHECK(region.in_corridor(c1));
  CHECK_FALSE(region.in_corridor(c2));
  CHECK(region.in_corridor({8.0, 4.0}));       // band interior
  CHECK_FALSE(region.in_corridor({8.0, 6.5}));  // above the band
  CHECK(region.in_stadium({11.9, 4.0}));

  // rolling center: on the axis, at distance r, on the c2 side
  for (const Point v : {Point{5.0, 4.0}, Point{7.0, 5.5}, Point{6.0, 2.5}, Point{4.3, 4.7}}) {
    if (!region.in_corridor(v)) continue;
    const Point o = region.rolling_center(v);
    CHECK(o.y == doctest::Approx(region.axis_y()));
    CHECK(dist(o, v) == doctest::Approx(region.r).epsilon(1e-12));
    CHECK(o.x >= v.x - 1e-12);
    // the rolling disk stays inside the stadium
    CHECK(o.x >= c1.x - 1e-9);
    CHECK(o.x <= c2.x + 1e-9);
  }
}

TEST_CASE("event E trivial cases") {
  const TwoSquareRegion region{2.0, 2.0};
  CHECK(test_event_E(region, {}));  // vacuous
  CHECK_FALSE(test_event_E(region, {region.c1()}));  // lone corridor point
  // lone point in C2 imposes nothing
  CHECK(test_event_E(region, {region.c2()}));
}

TEST_CASE("occupancy events F and A_m") {
  const TwoSquareRegion region{2.0, 2.0};
  auto ev = test_events_F_A(region, {}, 5);
  CHECK_FALSE(ev.f1);
  CHECK_FALSE(ev.f2);
  CHECK(ev.a_m);
  ev = test_events_F_A(region, {region.c1(), region.c2(), {8.0, 4.0}}, 0);
  CHECK(ev.f1);
  CHECK(ev.f2);
  CHECK_FALSE(ev.a_m);
  // points outside the stadium do not count toward A_m
  ev = test_events_F_A(region, {{0.5, 0.5}, {15.5, 7.5}}, 0);
  CHECK(ev.a_m);
}

TEST_CASE("empirical F-bar frequency matches the void probability") {
  const TwoSquareRegion region{2.0, 2.0};
  const int n = 30000;
  int f_fail = 0;
  for (int rep = 0; rep < n; ++rep) {
    const auto cfg = sample_poisson(region.rect(), 1.0, derive_seed(606, rep));
    bool has = false;
    for (const auto& p : cfg.points)
      if (region.in_c1(p)) {
        has = true;
        break;
      }
    f_fail += !has;
  }
  const double p = std::exp(f_bar_log(2.0));  // e^{-4 pi} ~ 3.49e-6
  const double sigma = std::sqrt(p * (1.0 - p) / n);
  CHECK(std::abs(double(f_fail) / n - p) <= 3.0 * sigma + 1.0 / n);
}

TEST_CASE("good event on dense cloud and its vacuous case") {
  const TwoSquareRegion region{2.0, 2.0};
  CHECK(test_good_event(region, {}));  // empty C1 is vacuous
  auto sample = make_two_square_sample(region, dense_cloud(region, 0.5, 9));
  CHECK(test_good_event(sample, true));
  CHECK(test_good_event(sample, false));
}

TEST_CASE("containment: E and F and A_m imply the good event, with a path") {
  const TwoSquareRegion region{2.0, 2.0};
  const std::int64_t m = default_m(2.0);
  int checked = 0, with_path = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const auto sample = make_two_square_sample(region, derive_seed(2468, rep));
    const bool E = test_event_E(sample);
    const auto occ = test_events_F_A(region, sample.config.points, m);
    if (!(E && occ.f1 && occ.a_m)) continue;
    ++checked;
    std::vector<int> path;
    const bool good = test_good_event(sample, true, &path);
    CHECK(good);
    if (!path.empty()) {
      ++with_path;
      // path validity: starts in C1, ends in C2, every hop admissible
      CHECK(region.in_c1(sample.config.points[path.front()]));
      CHECK(region.in_c2(sample.config.points[path.back()]));
      for (std::size_t i = 1; i < path.size(); ++i) {
        const Point a = sample.config.points[path[i - 1]];
        const Point b = sample.config.points[path[i]];
        CHECK(dist(a, b) <= region.s + 1e-12);
      }
      // generous slack over the straight-line step count
      const double span = dist(region.c1(), region.c2());
      CHECK(path.size() <= static_cast<std::size_t>(std::ceil(span / (region.r / 4.0))) + 16);
    }
  }
  INFO("containment samples checked: " << checked << ", with explicit path: " << with_path);
  CHECK(checked > 100);
  CHECK(with_path > 0);
}

TEST_CASE("greedy rolling chain reaches C2 when E holds and C1 is occupied") {
  // The E event is rare (its failure probability per corridor point is a few
  // percent and the corridor holds dozens of points), so scan many replicas.
  const TwoSquareRegion region{2.0, 2.0};
  int attempts = 0, successes = 0;
  for (int rep = 0; rep < 20000 && attempts < 120; ++rep) {
    const auto sample = make_two_square_sample(region, derive_seed(1357, rep));
    if (!test_event_E(sample)) continue;
    int start = -1;
    for (int v = 0; v < sample.config.size(); ++v)
      if (region.in_c1(sample.config.points[v])) {
        start = v;
        break;
      }
    if (start < 0) continue;
    ++attempts;
    if (const auto path = greedy_rolling_path(sample, start)) {
      ++successes;
      CHECK(region.in_c2(sample.config.points[path->back()]));
    }
  }
  INFO("greedy attempts " << attempts << " successes " << successes);
  CHECK(attempts > 50);
  CHECK(successes == attempts);  // E guarantees the chain cannot stall
}

TEST_CASE("outside independence: points beyond the two squares change nothing") {
  const TwoSquareRegion region{2.0, 2.0};
  RandomStream rs(468);
  for (int rep = 0; rep < 200; ++rep) {
    auto sample = make_two_square_sample(region, derive_seed(8642, rep));
    const bool e0 = test_event_E(sample);
    const bool g0 = test_good_event(sample, true);
    // augment with random exterior points in a ring around the rectangle
    auto pts = sample.config.points;
    const Window rect = region.rect();
    for (int k = 0; k < 30; ++k) {
      double x = rect.x0 - 3.0 + (rect.width() + 6.0) * rs.uniform();
      double y = rect.y1 + 0.05 + 3.0 * rs.uniform();
      if (k % 2) y = rect.y0 - 0.05 - 3.0 * rs.uniform();
      pts.push_back({x, y});
    }
    auto augmented = make_two_square_sample(region, pts);
    // evaluate events on the restricted configuration only
    std::vector<Point> restricted;
    for (const auto& p : augmented.config.points)
      if (rect.contains(p)) restricted.push_back(p);
    auto again = make_two_square_sample(region, restricted);
    CHECK(test_event_E(again) == e0);
    CHECK(test_good_event(again, true) == g0);
  }
}

TEST_CASE("renormalized lattice: hand-built and empty configurations") {
  const TwoSquareRegion region{2.0, 2.0};
  const double R = region.R();

  // dense 1x2 grid: the single horizontal edge must be open
  PointConfiguration big;
  big.window = {0.0, 0.0, 2.0 * R, R};
  big.points = dense_cloud(region, 0.5, 31);
  canonical_sort(big.points);
  const auto lat = build_renormalized_lattice(big, 2.0, 2.0, 2, 1);
  REQUIRE(lat.horizontal_open.size() == 1);
  CHECK(lat.horizontal_open[0] == 1);

  // empty configuration: good events hold vacuously, edges all open
  PointConfiguration empty;
  empty.window = {0.0, 0.0, 3.0 * R, 3.0 * R};
  const auto lat3 = build_renormalized_lattice(empty, 2.0, 2.0, 3, 3);
  for (const auto e : lat3.horizontal_open) CHECK(e == 1);
  for (const auto e : lat3.vertical_open) CHECK(e == 1);

  // insufficient coverage
  PointConfiguration narrow;
  narrow.window = {0.0, 0.0, R, R};
  CHECK_THROWS_AS(build_renormalized_lattice(narrow, 2.0, 2.0, 2, 2), DomainError);
}

TEST_CASE("renormalized edges recompute identically from isolated square pairs") {
  const double r = 2.0, s = 2.0;
  const TwoSquareRegion region{r, s};
  const double R = region.R();
  const auto big = sample_poisson(Window{0, 0, 3 * R, 2 * R}, 1.0, 13579);
  const auto lat = build_renormalized_lattice(big, r, s, 3, 2);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i + 1 < 3; ++i)
      CHECK(static_cast<bool>(lat.horizontal_open[lat.h_index(i, j)]) ==
            renormalized_edge_state(big, r, s, i, j, true));
  for (int j = 0; j + 1 < 2; ++j)
    for (int i = 0; i < 3; ++i)
      CHECK(static_cast<bool>(lat.vertical_open[lat.v_index(i, j)]) ==
            renormalized_edge_state(big, r, s, i, j, false));

  // feed into the percolation module as a bond process
  const auto proc = renormalized_to_bond_process(lat);
  const auto lab = open_clusters(proc.grid_graph, proc.marks);
  std::int64_t total = 0;
  for (const auto c : lab.cluster_sizes) total += c;
  CHECK(total == 6);
}

TEST_CASE("rolling ball statistics against analytic bounds") {
  const auto st = rolling_ball_statistics(2.0, 2.0, default_m(2.0), 4000, 24680, 2);
  CHECK(st.containment_violations == 0);
  CHECK(st.p_E_fail <= st.analytic_E + 3.0 * std::sqrt(0.25 / st.replicas));
  CHECK(st.p_Am_fail <= st.analytic_Am + 3.0 * std::sqrt(0.25 / st.replicas));
  const double sig_f = std::sqrt(st.analytic_F * (1 - st.analytic_F) / st.replicas);
  CHECK(std::abs(st.p_F_fail - st.analytic_F) <= 3.0 * sig_f + 1.0 / st.replicas);
  INFO("p_E_fail=" << st.p_E_fail << " p_good=" << st.p_good);
  CHECK(st.p_good > 0.0);
}

TEST_CASE("analytic bound forms dominate the per-point failure frequency") {
  // The fraction of corridor points with no admissible forward step estimates
  // the per-point failure probability that every bound form dominates.
  for (const double r : {2.0, 3.0}) {
    const auto st = rolling_ball_statistics(r, r, default_m(r), 20000, 86420, 2);
    REQUIRE(st.corridor_points > 100000);
    const double p_hat = st.p_point_fail;
    // conservative error bar: per-replica clustering inflates the binomial
    const double sigma = 3.0 * std::sqrt(p_hat * (1 - p_hat) /
                                         (st.corridor_points / 40.0));
    const double exact = std::exp(p_rn_bound_exact_region(r, r, 1e-7).log_value);
    const double final_form = p_rn_bound_final_form(r, r, 1e-7);
    const double additive = std::exp(p_rn_bound(r, r, 1e-7).log_value);
    INFO("r=s=" << r << " empirical per-point failure " << p_hat << " exact bound " << exact);
    CHECK(p_hat <= exact + sigma);
    CHECK(p_hat <= final_form + sigma);
    CHECK(p_hat <= additive + sigma);
  }
}
