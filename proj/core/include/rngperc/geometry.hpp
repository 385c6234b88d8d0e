#pragma once

#include <cmath>
#include <cstdint>

#include "rngperc/error.hpp"
#include "rngperc/random.hpp"

namespace rngperc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double k, Point p) { return {k * p.x, k * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

inline double dist2(Point a, Point b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}
inline double dist(Point a, Point b) { return std::sqrt(dist2(a, b)); }

struct Disk {
  Point center;
  double radius = 0.0;
  bool contains(Point p) const { return dist2(p, center) <= radius * radius; }
  bool strictly_contains(Point p) const { return dist2(p, center) < radius * radius; }
};

struct Window {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool contains(Point p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  bool valid() const { return x0 < x1 && y0 < y1; }

  static Window square(double side) { return {0.0, 0.0, side, side}; }
};

// Radius-r disk with its boundary through v, center at v + r * axis; the step
// radius s caps how far a neighbor may be. Used by the rolling-ball machinery.
struct RollingDiskFrame {
  double r = 1.0;
  double s = 1.0;
  Point v;
  Point axis{1.0, 0.0};  // unit vector toward the far block

  Point disk_center() const { return {v.x + r * axis.x, v.y + r * axis.y}; }
  Disk disk() const { return {disk_center(), r}; }
};

// asin/acos with arguments clamped into [-1,1]; beyond `tol` it is a real
// domain violation rather than rounding noise.
double clamped_asin(double x, double tol = 1e-12);
double clamped_acos(double x, double tol = 1e-12);

// Area of D_v ∩ D(v,t): D_v has radius r and its boundary passes through v
// (center at distance r), D(v,t) is the radius-t disk around v.
// Valid for 0 <= t <= 2r; at t = 2r the whole of D_v is covered (pi r^2).
double lens_area_dv(double r, double t);

// Closed-form area used by the rolling-edge failure bound, for a neighbor u at
// polar coordinates (alpha, theta) from v (theta measured against the v->center
// axis). Equals |D(u,alpha) \ D_v|; see docs/rolling_ball.md for the numeric
// identification of the region.
double lune_area(double alpha, double r, double theta);

// The same closed form evaluated at the split angle arccos(alpha/2r) - pi/3.
// May be negative when alpha > r (the split angle leaves the valid range).
double lune_area_at_split(double alpha, double r);

struct AreaEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Hit-or-miss Monte Carlo area of a region described by a membership
// predicate, sampled inside `bbox`. Deterministic for a given seed.
template <class Pred>
AreaEstimate mc_region_area(Pred&& inside, const Window& bbox, std::uint64_t n_samples,
                            std::uint64_t seed) {
  if (n_samples < 1) throw DomainError("mc_region_area: need at least one sample");
  if (!bbox.valid()) throw DomainError("mc_region_area: degenerate bounding box");
  RandomStream rs(derive_seed(seed, stream::kMcArea));
  const double w = bbox.width(), h = bbox.height();
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const double ux = rs.uniform();
    const double uy = rs.uniform();
    if (inside(Point{bbox.x0 + w * ux, bbox.y0 + h * uy})) ++hits;
  }
  const double area = bbox.area();
  const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
  return {area * p, area * std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples))};
}

}  // namespace rngperc
