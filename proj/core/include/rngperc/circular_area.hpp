#pragma once

#include <span>
#include <vector>

#include "rngperc/geometry.hpp"

namespace rngperc {

// One clause of a boolean region description: inside (or outside) a circle.
struct CircleConstraint {
  Point center;
  double radius = 0.0;
  bool inside = true;
};

// Exact area of the intersection of the given constraints, computed by arc
// decomposition of the boundary (Green's theorem). Intended for small sets of
// circles in generic position; tangential configurations are resolved with a
// small tolerance.
double circular_boolean_area(std::span<const CircleConstraint> constraints);

double disk_intersection_area(const Disk& a, const Disk& b);

// The two candidate regions behind the closed-form `lune_area`, with v at the
// origin, the rolling disk centered at (r, 0), and u at polar (alpha, theta):
//   beyond:  |D(u,alpha) \ D_v|
//   witness: |D(v,alpha) ∩ D(u,alpha) \ D_v|  (the true blocking region)
double disk_beyond_rolling_area(double alpha, double r, double theta);
double witness_region_area(double alpha, double r, double theta);

}  // namespace rngperc
