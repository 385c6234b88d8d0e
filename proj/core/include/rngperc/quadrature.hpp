#pragma once

#include <functional>

#include "rngperc/error.hpp"

namespace rngperc {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

// Adaptive Gauss-Kronrod (7/15) integration of f on [a, b] to absolute
// tolerance abs_tol (or relative rel_tol, whichever is met first).
// Throws QuadratureError if the panel budget is exhausted first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol = 0.0, int max_panels = 4000);

}  // namespace rngperc
