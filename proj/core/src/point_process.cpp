#include "rngperc/point_process.hpp"

#include <algorithm>
#include <cmath>

#include "rngperc/error.hpp"
#include "rngperc/predicates.hpp"
#include "rngperc/proximity.hpp"
#include "rngperc/random.hpp"

namespace rngperc {

void canonical_sort(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
}

PointConfiguration sample_poisson(const Window& window, double intensity, std::uint64_t seed) {
  if (!(intensity > 0.0)) throw DomainError("sample_poisson: intensity must be positive");
  if (!window.valid()) throw DomainError("sample_poisson: degenerate window");
  RandomStream count_stream(derive_seed(seed, stream::kPoissonCount));
  const std::uint64_t n = count_stream.poisson(intensity * window.area());
  RandomStream pos_stream(derive_seed(seed, stream::kPoissonPosition));
  PointConfiguration cfg;
  cfg.window = window;
  cfg.seed = seed;
  cfg.points.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double x = window.x0 + window.width() * pos_stream.uniform();
    const double y = window.y0 + window.height() * pos_stream.uniform();
    cfg.points.push_back({x, y});
  }
  canonical_sort(cfg.points);
  return cfg;
}

PointConfiguration sample_uniform_count(const Window& window, int count, std::uint64_t seed) {
  if (count < 0) throw DomainError("sample_uniform_count: negative count");
  if (!window.valid()) throw DomainError("sample_uniform_count: degenerate window");
  RandomStream pos_stream(derive_seed(seed, stream::kPoissonPosition));
  PointConfiguration cfg;
  cfg.window = window;
  cfg.seed = seed;
  cfg.points.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double x = window.x0 + window.width() * pos_stream.uniform();
    const double y = window.y0 + window.height() * pos_stream.uniform();
    cfg.points.push_back({x, y});
  }
  canonical_sort(cfg.points);
  return cfg;
}

std::int64_t MarkedConfiguration::open_count() const {
  std::int64_t n = 0;
  for (const auto m : marks) n += m;
  return n;
}

double site_uniform(const PointConfiguration& config, int site, std::uint64_t seed) {
  const Point& p = config.points[site];
  const std::uint64_t marks_seed = derive_seed(seed, stream::kSiteMarks);
  return to_unit_double(splitmix64(marks_seed + point_key(p.x, p.y)));
}

double bond_uniform(const PointConfiguration& config, int u, int v, std::uint64_t seed) {
  const Point& a = config.points[u];
  const Point& b = config.points[v];
  std::uint64_t ka = point_key(a.x, a.y);
  std::uint64_t kb = point_key(b.x, b.y);
  // Canonicalize by coordinate order so the draw is endpoint-order free.
  const bool a_first = (a.y != b.y) ? (a.y < b.y) : (a.x < b.x);
  if (!a_first) std::swap(ka, kb);
  const std::uint64_t marks_seed = derive_seed(seed, stream::kBondMarks);
  return to_unit_double(splitmix64(marks_seed + pair_key(ka, kb)));
}

MarkedConfiguration mark_sites(const PointConfiguration& config, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw DomainError("mark_sites: p outside [0,1]");
  MarkedConfiguration mc;
  mc.mode = MarkMode::Site;
  mc.p = p;
  mc.seed = seed;
  mc.marks.resize(config.points.size());
  for (int i = 0; i < config.size(); ++i) mc.marks[i] = site_uniform(config, i, seed) < p;
  return mc;
}

MarkedConfiguration mark_bonds(const PointConfiguration& config, const ProximityGraph& graph,
                               double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw DomainError("mark_bonds: p outside [0,1]");
  MarkedConfiguration mc;
  mc.mode = MarkMode::Bond;
  mc.p = p;
  mc.seed = seed;
  mc.marks.resize(graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e)
    mc.marks[e] = bond_uniform(config, graph.edges[e].u, graph.edges[e].v, seed) < p;
  return mc;
}

GeneralPositionReport validate_general_position(const PointConfiguration& config) {
  GeneralPositionReport rep;
  const auto& pts = config.points;
  const int n = config.size();

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        if (orient2d_sign(pts[i], pts[j], pts[k]) == 0) ++rep.collinear_triples;
        for (int l = k + 1; l < n; ++l)
          if (orient2d_sign(pts[i], pts[j], pts[k]) != 0 &&
              incircle_sign(pts[i], pts[j], pts[k], pts[l]) == 0)
            ++rep.cocircular_quadruples;
      }

  // Equal inter-point distances: sort squared distances, confirm near ties
  // with exact arithmetic.
  struct PairDist {
    double d2;
    int a, b;
  };
  std::vector<PairDist> ds;
  ds.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) ds.push_back({dist2(pts[i], pts[j]), i, j});
  std::sort(ds.begin(), ds.end(), [](const PairDist& a, const PairDist& b) { return a.d2 < b.d2; });
  for (std::size_t i = 1; i < ds.size(); ++i) {
    if (ds[i].d2 == ds[i - 1].d2 &&
        compare_dist2_exact(pts[ds[i].a], pts[ds[i].b], pts[ds[i - 1].a], pts[ds[i - 1].b]) == 0)
      ++rep.equal_distance_pairs;
  }
  return rep;
}

}  // namespace rngperc
