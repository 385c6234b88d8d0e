#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "rngperc/point_process.hpp"
#include "rngperc/proximity.hpp"
#include "rngperc/random.hpp"

using namespace rngperc;

TEST_CASE("sample_poisson determinism and canonical order") {
  const Window w = Window::square(10.0);
  const auto a = sample_poisson(w, 1.0, 12345);
  const auto b = sample_poisson(w, 1.0, 12345);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].x == b.points[i].x);
    CHECK(a.points[i].y == b.points[i].y);
  }
  CHECK(std::is_sorted(a.points.begin(), a.points.end(), [](Point p, Point q) {
    if (p.y != q.y) return p.y < q.y;
    return p.x < q.x;
  }));
  for (const auto& p : a.points) CHECK(w.contains(p));
  CHECK_THROWS_AS(sample_poisson(w, 0.0, 1), DomainError);
  CHECK_THROWS_AS(sample_poisson(Window{1, 1, 1, 2}, 1.0, 1), DomainError);
}

TEST_CASE("poisson mean approaches intensity times area") {
  const Window w = Window::square(1.0);
  double total = 0.0;
  const int n = 40000;
  for (int seed = 0; seed < n; ++seed) total += sample_poisson(w, 1.0, seed).points.size();
  const double mean = total / n;
  CHECK(std::abs(mean - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("tiny intensity rarely yields points") {
  const Window w = Window::square(1.0);
  int nonzero = 0;
  const int n = 20000;
  for (int seed = 0; seed < n; ++seed)
    nonzero += sample_poisson(w, 1e-4, 1000000 + seed).points.size() > 0;
  // expectation ~ n * 1e-4 = 2
  CHECK(nonzero <= 10);
}

TEST_CASE("count distribution passes chi-square against Poisson(100)") {
  const Window w = Window::square(10.0);
  const int n = 10000;
  std::vector<int> counts(n);
  for (int seed = 0; seed < n; ++seed)
    counts[seed] = static_cast<int>(sample_poisson(w, 1.0, 777000 + seed).points.size());

  // bins with expected count >= 5, tails merged
  const double mu = 100.0;
  auto pmf = [&](int k) {
    return std::exp(k * std::log(mu) - std::lgamma(k + 1.0) - mu);
  };
  const int klo = 60, khi = 140;
  std::vector<double> expected;
  std::vector<double> observed;
  double e_acc = 0.0, o_acc = 0.0;
  double p_lo = 0.0;
  for (int k = 0; k < klo; ++k) p_lo += pmf(k);
  e_acc = n * p_lo;
  for (const int c : counts) o_acc += c < klo;
  for (int k = klo; k <= khi; ++k) {
    e_acc += n * pmf(k);
    for (const int c : counts) o_acc += c == k;
    if (e_acc >= 5.0) {
      expected.push_back(e_acc);
      observed.push_back(o_acc);
      e_acc = o_acc = 0.0;
    }
  }
  double p_hi = 1.0;
  for (int k = 0; k <= khi; ++k) p_hi -= pmf(k);
  e_acc += n * p_hi;
  for (const int c : counts) o_acc += c > khi;
  expected.push_back(e_acc);
  observed.push_back(o_acc);

  double chi2 = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const double d = observed[i] - expected[i];
    chi2 += d * d / expected[i];
  }
  const int dof = static_cast<int>(expected.size()) - 1;
  const double crit = oracle::chi2_quantile(0.01, dof);
  INFO("chi2 = " << chi2 << " dof = " << dof << " critical(0.01) = " << crit);
  CHECK(chi2 < crit);
}

TEST_CASE("independent streams are uncorrelated in counts") {
  const Window w = Window::square(3.0);
  const int n = 100000;  // pairs
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(sample_poisson(w, 1.0, derive_seed(5, 2 * i)).points.size());
    const double y =
        static_cast<double>(sample_poisson(w, 1.0, derive_seed(5, 2 * i + 1)).points.size());
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double vx = sxx / n - (sx / n) * (sx / n);
  const double vy = syy / n - (sy / n) * (sy / n);
  const double rho = cov / std::sqrt(vx * vy);
  CHECK(std::abs(rho) < 0.01);
}

TEST_CASE("site marks: trivial p, concentration, permutation invariance") {
  const Window w = Window::square(320.0);  // ~102k points
  const auto cfg = sample_poisson(w, 1.0, 99);
  const auto closed = mark_sites(cfg, 0.0, 7);
  CHECK(closed.open_count() == 0);
  const auto open = mark_sites(cfg, 1.0, 7);
  CHECK(open.open_count() == cfg.size());

  const auto half = mark_sites(cfg, 0.5, 7);
  const double n = static_cast<double>(cfg.size());
  const double frac = static_cast<double>(half.open_count()) / n;
  CHECK(std::abs(frac - 0.5) <= 5.0 * 0.5 / std::sqrt(n));

  // permuting the points leaves each point's mark unchanged
  PointConfiguration shuffled = cfg;
  std::reverse(shuffled.points.begin(), shuffled.points.end());
  const auto marks2 = mark_sites(shuffled, 0.5, 7);
  for (int i = 0; i < cfg.size(); ++i) {
    const int j = cfg.size() - 1 - i;
    CHECK(half.marks[i] == marks2.marks[j]);
  }
}

TEST_CASE("bond marks mirror site-mark behavior on edges") {
  const Window w = Window::square(60.0);
  const auto cfg = sample_poisson(w, 1.0, 1234);
  const auto del = delaunay(cfg);
  const auto gab = gabriel(cfg, del);
  const auto g = rng(cfg, gab);

  CHECK(mark_bonds(cfg, g, 0.0, 3).open_count() == 0);
  CHECK(mark_bonds(cfg, g, 1.0, 3).open_count() == static_cast<std::int64_t>(g.edges.size()));
  const auto half = mark_bonds(cfg, g, 0.5, 3);
  const double m = static_cast<double>(g.edges.size());
  CHECK(std::abs(half.open_count() / m - 0.5) <= 5.0 * 0.5 / std::sqrt(m));
}

TEST_CASE("general position validator flags crafted ties") {
  PointConfiguration cfg;
  cfg.window = Window::square(10.0);
  cfg.points = {{0, 0}, {1, 0}, {2, 0}};  // collinear
  auto rep = validate_general_position(cfg);
  CHECK(rep.collinear_triples == 1);

  cfg.points = {{0, 0}, {2, 0}, {0, 2}, {2, 2}};  // cocircular square
  rep = validate_general_position(cfg);
  CHECK(rep.cocircular_quadruples == 1);
  CHECK(rep.equal_distance_pairs > 0);

  const auto rnd = sample_poisson(Window::square(8.0), 1.0, 5);
  CHECK(validate_general_position(rnd).ok());
}
