#include "rngperc/geometry.hpp"

#include <numbers>

namespace rngperc {

namespace {
constexpr double kPi = std::numbers::pi;
}

double clamped_asin(double x, double tol) {
  if (x > 1.0) {
    if (x > 1.0 + tol) throw DomainError("asin argument out of range");
    x = 1.0;
  } else if (x < -1.0) {
    if (x < -1.0 - tol) throw DomainError("asin argument out of range");
    x = -1.0;
  }
  return std::asin(x);
}

double clamped_acos(double x, double tol) {
  if (x > 1.0) {
    if (x > 1.0 + tol) throw DomainError("acos argument out of range");
    x = 1.0;
  } else if (x < -1.0) {
    if (x < -1.0 - tol) throw DomainError("acos argument out of range");
    x = -1.0;
  }
  return std::acos(x);
}

double lens_area_dv(double r, double t) {
  if (!(r > 0.0)) throw DomainError("lens_area_dv: r must be positive");
  const double slack = 1e-12 * std::max(1.0, 2.0 * r);
  if (t < -slack || t > 2.0 * r + slack) throw DomainError("lens_area_dv: t outside [0, 2r]");
  t = std::min(std::max(t, 0.0), 2.0 * r);
  if (t == 0.0) return 0.0;
  const double q = t / (2.0 * r);
  const double root = std::sqrt(std::max(0.0, 1.0 - q * q));
  return -r * t * root + (2.0 * r * r - t * t) * clamped_asin(q) + t * t * kPi / 2.0;
}

double lune_area(double alpha, double r, double theta) {
  if (!(alpha > 0.0) || !(r > 0.0)) throw DomainError("lune_area: alpha and r must be positive");
  const double slack = 1e-9;
  if (alpha > 2.0 * r * (1.0 + slack)) throw DomainError("lune_area: alpha exceeds 2r");
  alpha = std::min(alpha, 2.0 * r);
  const double theta_max = clamped_acos(alpha / (2.0 * r));
  if (theta < -slack || theta > theta_max + slack)
    throw DomainError("lune_area: theta outside [0, arccos(alpha/2r)]");
  theta = std::min(std::max(theta, 0.0), theta_max);
  if (theta == 0.0) return 0.0;
  const double st = std::sin(theta);
  const double d2 = r * r + alpha * alpha - 2.0 * alpha * r * std::cos(theta);
  const double d = std::sqrt(std::max(d2, 0.0));
  // At alpha == r, theta -> 0 the ratio tends to cos(theta/2); the coefficient
  // (alpha^2 - r^2) vanishes there, so any clamped value is harmless.
  const double ratio = d > 0.0 ? alpha * st / d : 1.0;
  return alpha * alpha * theta + (alpha * alpha - r * r) * clamped_asin(ratio, 1e-9) +
         alpha * r * st;
}

double lune_area_at_split(double alpha, double r) {
  if (!(alpha > 0.0) || !(r > 0.0))
    throw DomainError("lune_area_at_split: alpha and r must be positive");
  if (alpha > 2.0 * r * (1.0 + 1e-9)) throw DomainError("lune_area_at_split: alpha exceeds 2r");
  alpha = std::min(alpha, 2.0 * r);
  const double q = alpha / (2.0 * r);
  const double root = std::sqrt(std::max(0.0, 1.0 - q * q));
  return 0.5 * alpha * alpha * (kPi / 3.0 - std::sqrt(3.0) / 2.0) -
         r * r * clamped_asin(q) + 0.5 * r * alpha * root;
}

}  // namespace rngperc
