#pragma once

#include <array>
#include <vector>

#include "rngperc/geometry.hpp"

namespace rngperc {

// Finite part of a Delaunay triangulation. Triangles are counterclockwise;
// nb[i] is the triangle opposite vertex v[i], or -1 across a hull edge.
struct Triangulation {
  struct Tri {
    std::array<int, 3> v;
    std::array<int, 3> nb;
  };
  int vertex_count = 0;
  std::vector<Tri> tris;
};

// Robust incremental (Bowyer-Watson) Delaunay triangulation with exact
// predicates. Requires >= 3 pairwise distinct points, not all collinear.
//
// Tie handling (the symbolic perturbation rule, see docs/rolling_ball.md):
// exact cocircular ties are broken deterministically by treating the point
// being inserted as lying outside the circumcircle; exact collinearity that
// would create a zero-area triangle on the hull raises DegenerateInputError.
Triangulation delaunay_triangulate(const std::vector<Point>& pts);

}  // namespace rngperc
