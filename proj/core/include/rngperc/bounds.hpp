#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rngperc/quadrature.hpp"

namespace rngperc {

// Percolation threshold for 1-independent bond models on the square lattice,
// paired with the certificate slack so that 1 - kDefaultEpsilon compares
// bit-exactly against the threshold.
inline constexpr double kLatticeThreshold = 0.8639;
inline constexpr double kDefaultEpsilon = 1.0 - kLatticeThreshold;

struct BoundParameters {
  double r = 1.0;
  double s = 1.0;
  std::int64_t m = 1;
  double epsilon = kDefaultEpsilon;
};

// Point-count cap that makes the Poisson tail negligible: ceil(e(8+pi)r^2)+1.
std::int64_t default_m(double r);

struct QuadratureInfo {
  int panels = 0;
  double error_estimate = 0.0;
};

struct LogBound {
  double log_value = 0.0;
  QuadratureInfo info;
};

// Upper bound on the probability that a corridor point has no forward
// relative-neighborhood edge (additive form): log of
//   e^{-lens(r,s)} + 2 int_0^s a e^{-lens(a)} int_0^{acos(a/2r)} (1-e^{-L}) dth da
// with L the closed-form lune_area. Log-domain absolute error <= quadrature_tol.
LogBound p_rn_bound(double r, double s, double quadrature_tol);

// Same bound with the integrand using the exact witness region
// |D(v,a) ∩ D(u,a) \ D_v| (arc decomposition) instead of the closed form.
// Tighter; serves as the reference for bound-direction checks.
LogBound p_rn_bound_exact_region(double r, double s, double quadrature_tol);

struct FinalFormInfo {
  double subtracted_integral = 0.0;
  bool cancellation_warning = false;
  QuadratureInfo quadrature;
};

// The fully reduced single-integral form
//   1 - 2 int_0^s a e^{-lens(a)-L*(a)} [acos(a/2r) - pi/3 + 2(1-e^{-a^2 pi/6})/a^2] da.
// Meaningful for s <= r (use r = s); destroyed by cancellation when the
// subtracted integral approaches 1.
double p_rn_bound_final_form(double r, double s, double quadrature_tol,
                             FinalFormInfo* info = nullptr);

namespace detail {
// Intermediate split form: exact first angular piece, linearized second piece.
double p_rn_bound_split_form(double r, double s, double quadrature_tol);
}  // namespace detail

// log of 2r(2r+2s) * p_rn_bound: expected number of corridor points whose
// forward-edge conditions fail.
LogBound e_bar_bound(double r, double s, double quadrature_tol);

// log probability that a radius-r disk holds no point: -pi r^2.
double f_bar_log(double r);

struct AmTail {
  double log_exact = 0.0;       // log P(N > m), N ~ Poisson(2r(2r+2s) + pi r^2)
  double log_simplified = 0.0;  // log of ((8+pi) r^2)^{m+1} / (m+1)!  (r = s form)
};
AmTail a_m_tail(double r, double s, std::int64_t m);

struct CertificateCheck {
  std::string name;
  bool passed = false;
  double log_margin = 0.0;  // positive = inequality satisfied with room
};

struct CertificateReport {
  BoundParameters params;
  double quadrature_tol = 0.0;
  double log_p_rn_bound = 0.0;
  double log_e_bar = 0.0;
  double log_f_bar = 0.0;
  double log_a_m = 0.0;
  bool e_bar_capped = false;  // raw expected count exceeded 1 (vacuous bound)
  double bad_event_total = 0.0;
  double good_event_lower = 0.0;
  double site_prob_p = 0.0;   // 1 - epsilon / (2m)
  double final_product = 0.0; // (1 - epsilon/2) * p^m
  double threshold = kLatticeThreshold;
  double pc_site_upper = 0.0;
  bool valid = false;
  std::string failed_check;
  std::vector<CertificateCheck> checks;
  QuadratureInfo quadrature;
};

// Evaluates the whole renormalization chain at the given parameters. valid is
// true only when every inequality holds with a 10 * quadrature_tol log-domain
// margin.
CertificateReport certificate(const BoundParameters& params, double quadrature_tol);

}  // namespace rngperc
