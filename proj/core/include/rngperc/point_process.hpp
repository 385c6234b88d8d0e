#pragma once

#include <cstdint>
#include <vector>

#include "rngperc/geometry.hpp"

namespace rngperc {

// Finite planar sample in a rectangular window. Points are kept in canonical
// (y, then x) order so downstream algorithms are order-stable.
struct PointConfiguration {
  Window window;
  std::vector<Point> points;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(points.size()); }
};

// Homogeneous Poisson sample: N ~ Poisson(intensity * area), positions i.i.d.
// uniform. Deterministic for a given seed.
PointConfiguration sample_poisson(const Window& window, double intensity, std::uint64_t seed);

// Fixed-count uniform sample (a Poisson sample conditioned on its count).
PointConfiguration sample_uniform_count(const Window& window, int count, std::uint64_t seed);

void canonical_sort(std::vector<Point>& pts);

enum class MarkMode { Site, Bond };

// Open/closed marks over sites or bonds. Each carrier gets one uniform draw in
// [0,1) derived from (seed, carrier identity); the mark is open iff the draw
// is < p, so marks for different p on the same seed are coupled monotonically.
struct MarkedConfiguration {
  MarkMode mode = MarkMode::Site;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> marks;

  std::int64_t open_count() const;
};

struct ProximityGraph;  // proximity.hpp

// Per-site uniform draw; keyed by the point's coordinate identity, so it is
// invariant under reordering of the configuration.
double site_uniform(const PointConfiguration& config, int site, std::uint64_t seed);
double bond_uniform(const PointConfiguration& config, int u, int v, std::uint64_t seed);

MarkedConfiguration mark_sites(const PointConfiguration& config, double p, std::uint64_t seed);
MarkedConfiguration mark_bonds(const PointConfiguration& config, const ProximityGraph& graph,
                               double p, std::uint64_t seed);

// Exact-tie scan for hand-crafted fixtures: collinear triples, cocircular
// quadruples, and equal inter-point distances. Intended for small inputs.
struct GeneralPositionReport {
  std::int64_t collinear_triples = 0;
  std::int64_t cocircular_quadruples = 0;
  std::int64_t equal_distance_pairs = 0;
  bool ok() const {
    return collinear_triples == 0 && cocircular_quadruples == 0 && equal_distance_pairs == 0;
  }
};
GeneralPositionReport validate_general_position(const PointConfiguration& config);

}  // namespace rngperc
