#include "rngperc/circular_area.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rngperc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTau = 2.0 * std::numbers::pi;

bool satisfies(const CircleConstraint& c, Point p, double tol) {
  const double d = dist(p, c.center);
  return c.inside ? d <= c.radius + tol : d >= c.radius - tol;
}

Point at_angle(const CircleConstraint& c, double ang) {
  return {c.center.x + c.radius * std::cos(ang), c.center.y + c.radius * std::sin(ang)};
}

}  // namespace

double circular_boolean_area(std::span<const CircleConstraint> cs) {
  const int n = static_cast<int>(cs.size());
  double scale = 0.0;
  for (const auto& c : cs) scale = std::max(scale, c.radius);
  const double tol = 1e-12 * std::max(1.0, scale);

  double area = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& ci = cs[i];
    if (ci.radius <= 0.0) {
      if (ci.inside) return 0.0;  // empty disk clause
      continue;                   // outside of an empty disk is everything
    }

    // Angles where other circles cut circle i.
    std::vector<double> cuts;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto& cj = cs[j];
      if (cj.radius <= 0.0) continue;
      const double d = dist(ci.center, cj.center);
      if (d >= ci.radius + cj.radius - tol) continue;            // separate or tangent
      if (d <= std::abs(ci.radius - cj.radius) + tol) continue;  // nested or tangent
      const double a = (d * d + ci.radius * ci.radius - cj.radius * cj.radius) / (2.0 * d);
      const double h2 = ci.radius * ci.radius - a * a;
      const double h = std::sqrt(std::max(h2, 0.0));
      const double base = std::atan2(cj.center.y - ci.center.y, cj.center.x - ci.center.x);
      const double delta = std::atan2(h, a);
      auto wrap = [](double ang) {
        while (ang < 0.0) ang += kTau;
        while (ang >= kTau) ang -= kTau;
        return ang;
      };
      cuts.push_back(wrap(base - delta));
      cuts.push_back(wrap(base + delta));
    }

    auto arc_contribution = [&](double a0, double a1) {
      // Keep the arc if its midpoint satisfies every other constraint.
      const double mid = 0.5 * (a0 + a1);
      const Point pm = at_angle(ci, mid);
      for (int j = 0; j < n; ++j) {
        if (j != i && !satisfies(cs[j], pm, tol)) return;
      }
      const Point p0 = at_angle(ci, a0);
      const Point p1 = at_angle(ci, a1);
      const double sweep = a1 - a0;
      if (ci.inside) {
        // region lies inside circle i: boundary traversed counterclockwise
        area += 0.5 * (ci.radius * ci.radius * sweep +
                       cross(Point{ci.center.x, ci.center.y}, p1 - p0));
      } else {
        // region lies outside: traverse clockwise
        area += 0.5 * (-ci.radius * ci.radius * sweep +
                       cross(Point{ci.center.x, ci.center.y}, p0 - p1));
      }
    };

    if (cuts.empty()) {
      // Whole circle is either boundary or irrelevant.
      const Point probe = at_angle(ci, 0.0);
      bool ok = true;
      for (int j = 0; j < n && ok; ++j) ok = (j == i) || satisfies(cs[j], probe, tol);
      if (ok) area += (ci.inside ? 1.0 : -1.0) * kPi * ci.radius * ci.radius;
      continue;
    }

    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) arc_contribution(cuts[k], cuts[k + 1]);
    arc_contribution(cuts.back(), cuts.front() + kTau);
  }
  return std::max(area, 0.0);
}

double disk_intersection_area(const Disk& a, const Disk& b) {
  const CircleConstraint cs[2] = {{a.center, a.radius, true}, {b.center, b.radius, true}};
  return circular_boolean_area(cs);
}

double disk_beyond_rolling_area(double alpha, double r, double theta) {
  const Point u{alpha * std::cos(theta), alpha * std::sin(theta)};
  const CircleConstraint cs[2] = {
      {u, alpha, true},
      {{r, 0.0}, r, false},
  };
  return circular_boolean_area(cs);
}

double witness_region_area(double alpha, double r, double theta) {
  const Point u{alpha * std::cos(theta), alpha * std::sin(theta)};
  const CircleConstraint cs[3] = {
      {{0.0, 0.0}, alpha, true},
      {u, alpha, true},
      {{r, 0.0}, r, false},
  };
  return circular_boolean_area(cs);
}

}  // namespace rngperc
