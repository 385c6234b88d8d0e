#pragma once

#include "rngperc/geometry.hpp"

namespace rngperc {

// Robust planar orientation and in-circle tests: a fast floating-point filter
// with a forward error bound, falling back to exact expansion arithmetic when
// the filter cannot certify the sign.
//
// orient2d_sign:  +1 if (a,b,c) counterclockwise, -1 clockwise, 0 collinear.
// incircle_sign:  +1 if d lies strictly inside the circumcircle of the
//                 counterclockwise triangle (a,b,c), -1 outside, 0 cocircular.
int orient2d_sign(Point a, Point b, Point c);
int incircle_sign(Point a, Point b, Point c, Point d);

// Exact sign of dist2(a,b) - dist2(c,d); used to detect exact distance ties.
int compare_dist2_exact(Point a, Point b, Point c, Point d);

}  // namespace rngperc
