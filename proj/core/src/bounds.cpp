#include "rngperc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rngperc/circular_area.hpp"
#include "rngperc/error.hpp"
#include "rngperc/geometry.hpp"

namespace rngperc {

namespace {

constexpr double kPi = std::numbers::pi;

double lens_capped(double r, double t) {
  return lens_area_dv(r, std::min(t, 2.0 * r));
}

// The lens area exceeds 720 beyond this alpha; the integrand tail past it is
// below e^-720 and ignored (folded into the error budget as ~1e-300).
double alpha_cutoff(double r, double smax) {
  if (lens_capped(r, smax) < 720.0) return smax;
  double lo = 0.0, hi = smax;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * smax; ++i) {
    const double mid = 0.5 * (lo + hi);
    (lens_capped(r, mid) < 720.0 ? lo : hi) = mid;
  }
  return hi;
}

double logsumexp2(double a, double b) {
  const double m = std::max(a, b);
  if (m == -std::numeric_limits<double>::infinity()) return m;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

struct InnerCounter {
  int panels = 0;
  double err = 0.0;
};

// int_0^{acos(a/2r)} (1 - e^{-area(a, theta)}) dtheta for a given area model.
template <class AreaFn>
double inner_integral(double alpha, double r, const AreaFn& area, double tol,
                      InnerCounter& counter, const std::vector<double>& splits) {
  const double c = clamped_acos(alpha / (2.0 * r));
  if (c <= 0.0) return 0.0;
  auto f = [&](double th) { return -std::expm1(-area(alpha, r, th)); };
  double total = 0.0;
  double prev = 0.0;
  std::vector<double> cuts;
  for (const double s : splits)
    if (s > 1e-15 && s < c - 1e-15) cuts.push_back(s);
  cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  for (const double cut : cuts) {
    const auto res = integrate(f, prev, cut, tol, 1e-12);
    total += res.value;
    counter.panels += res.panels;
    counter.err += res.error_estimate;
    prev = cut;
  }
  return total;
}

template <class AreaFn>
LogBound p_rn_bound_impl(double r, double s, double quadrature_tol, const AreaFn& area,
                         bool split_inner_at_kinks) {
  if (!(r > 0.0) || !(s > 0.0)) throw DomainError("p_rn_bound: r and s must be positive");
  if (!(quadrature_tol > 0.0)) throw DomainError("p_rn_bound: tolerance must be positive");

  const double smax = std::min(s, 2.0 * r);
  const double lens_full = lens_capped(r, smax);
  const double hi = alpha_cutoff(r, smax);

  InnerCounter inner_counter;
  const double inner_tol = std::min(1e-8, 0.05 * quadrature_tol);

  auto outer = [&](double alpha) -> double {
    if (alpha <= 0.0) return 0.0;
    std::vector<double> splits;
    if (split_inner_at_kinks) {
      const double c = clamped_acos(alpha / (2.0 * r));
      splits.push_back(c - kPi / 3.0);              // lune corner leaves the disk
      if (alpha < r) splits.push_back(std::acos(alpha / r));  // near-v tangency
    }
    const double inner = inner_integral(alpha, r, area, inner_tol, inner_counter, splits);
    return alpha * std::exp(-lens_capped(r, alpha)) * inner;
  };

  const auto res = integrate(outer, 0.0, hi, 1e-300, 0.25 * quadrature_tol, 20000);
  const double integral = 2.0 * res.value;

  const double log_first = -lens_full;
  double log_value;
  if (integral > 0.0) {
    log_value = logsumexp2(log_first, std::log(integral));
  } else {
    log_value = log_first;
  }
  LogBound out;
  out.log_value = log_value;
  out.info.panels = res.panels + inner_counter.panels;
  out.info.error_estimate = 2.0 * res.error_estimate + inner_counter.err;
  return out;
}

}  // namespace

std::int64_t default_m(double r) {
  if (!(r > 0.0)) throw DomainError("default_m: r must be positive");
  return static_cast<std::int64_t>(std::ceil(std::numbers::e * (8.0 + kPi) * r * r)) + 1;
}

LogBound p_rn_bound(double r, double s, double quadrature_tol) {
  return p_rn_bound_impl(
      r, s, quadrature_tol,
      [](double alpha, double rr, double th) { return lune_area(alpha, rr, th); }, false);
}

LogBound p_rn_bound_exact_region(double r, double s, double quadrature_tol) {
  return p_rn_bound_impl(
      r, s, quadrature_tol,
      [](double alpha, double rr, double th) { return witness_region_area(alpha, rr, th); },
      true);
}

double p_rn_bound_final_form(double r, double s, double quadrature_tol, FinalFormInfo* info) {
  if (!(r > 0.0) || !(s > 0.0))
    throw DomainError("p_rn_bound_final_form: r and s must be positive");
  const double smax = std::min(s, 2.0 * r);
  const double hi = alpha_cutoff(r, smax);

  auto f = [&](double alpha) -> double {
    if (alpha <= 0.0) return 0.0;
    const double c = clamped_acos(alpha / (2.0 * r));
    const double bracket_geom = c - kPi / 3.0;
    const double y = alpha * alpha * kPi / 6.0;
    const double bracket_exp = -2.0 * std::expm1(-y) / (alpha * alpha);
    const double expo = -lens_capped(r, alpha) - lune_area_at_split(alpha, r);
    return alpha * std::exp(expo) * (bracket_geom + bracket_exp);
  };
  const auto res = integrate(f, 0.0, hi, 1e-14, 0.25 * quadrature_tol, 20000);
  const double integral = 2.0 * res.value;
  const double value = 1.0 - integral;
  if (info) {
    info->subtracted_integral = integral;
    info->cancellation_warning = std::abs(value) < 1e-12;
    info->quadrature.panels = res.panels;
    info->quadrature.error_estimate = 2.0 * res.error_estimate;
  }
  return value;
}

namespace detail {

double p_rn_bound_split_form(double r, double s, double quadrature_tol) {
  if (!(r > 0.0) || !(s > 0.0))
    throw DomainError("p_rn_bound_split_form: r and s must be positive");
  const double smax = std::min(s, 2.0 * r);
  const double hi = alpha_cutoff(r, smax);
  const double inner_tol = std::min(1e-9, 0.05 * quadrature_tol);

  // exact first angular piece: 2 int a e^{-lens} int_0^{theta*} e^{-L} dth da
  auto piece1 = [&](double alpha) -> double {
    if (alpha <= 0.0) return 0.0;
    const double c = clamped_acos(alpha / (2.0 * r));
    const double th_star = c - kPi / 3.0;
    if (th_star <= 0.0) return 0.0;
    auto g = [&](double th) { return std::exp(-lune_area(alpha, r, th)); };
    const auto res = integrate(g, 0.0, th_star, inner_tol, 1e-12);
    return alpha * std::exp(-lens_capped(r, alpha)) * res.value;
  };
  // linearized second piece: 4 int (1/a) e^{-lens - L*} (1 - e^{-a^2 pi/6}) da
  auto piece2 = [&](double alpha) -> double {
    if (alpha <= 0.0) return 0.0;
    const double expo = -lens_capped(r, alpha) - lune_area_at_split(alpha, r);
    return -std::expm1(-alpha * alpha * kPi / 6.0) / alpha * std::exp(expo);
  };
  const auto r1 = integrate(piece1, 0.0, hi, 1e-14, 0.25 * quadrature_tol, 20000);
  const auto r2 = integrate(piece2, 0.0, hi, 1e-14, 0.25 * quadrature_tol, 20000);
  return 1.0 - 2.0 * r1.value - 4.0 * r2.value;
}

}  // namespace detail

LogBound e_bar_bound(double r, double s, double quadrature_tol) {
  auto b = p_rn_bound(r, s, quadrature_tol);
  b.log_value += std::log(2.0 * r * (2.0 * r + 2.0 * s));
  return b;
}

double f_bar_log(double r) {
  if (!(r > 0.0)) throw DomainError("f_bar_log: r must be positive");
  return -kPi * r * r;
}

AmTail a_m_tail(double r, double s, std::int64_t m) {
  if (!(r > 0.0) || !(s > 0.0)) throw DomainError("a_m_tail: r and s must be positive");
  if (m < 0) throw DomainError("a_m_tail: m must be nonnegative");
  const double mu = 2.0 * r * (2.0 * r + 2.0 * s) + kPi * r * r;
  const double md = static_cast<double>(m);

  auto log_pmf = [&](double k) { return k * std::log(mu) - std::lgamma(k + 1.0) - mu; };

  double log_exact;
  if (md + 1.0 >= mu) {
    // ascending series from k = m+1; ratio mu/(k+1) < 1 throughout
    const double t0 = log_pmf(md + 1.0);
    double series = 1.0, term = 1.0;
    for (double k = md + 2.0; term > 1e-18 * series; k += 1.0) {
      term *= mu / k;
      series += term;
      if (k > md + 1e7) break;
    }
    log_exact = t0 + std::log(series);
  } else {
    // P(N <= m) summed downward from k = m, then complemented
    const double t0 = log_pmf(md);
    double series = 1.0, term = 1.0;
    for (double k = md; k >= 1.0; k -= 1.0) {
      term *= k / mu;
      series += term;
      if (term < 1e-18 * series) break;
    }
    const double log_cdf = std::min(t0 + std::log(series), -1e-300);
    log_exact = std::log(-std::expm1(log_cdf));
  }

  AmTail out;
  out.log_exact = log_exact;
  out.log_simplified =
      (md + 1.0) * std::log((8.0 + kPi) * r * r) - std::lgamma(md + 2.0);
  return out;
}

CertificateReport certificate(const BoundParameters& params, double quadrature_tol) {
  if (params.m < 1) throw DomainError("certificate: m must be at least 1");
  if (!(params.epsilon > 0.0) || !(params.epsilon < 1.0))
    throw DomainError("certificate: epsilon must lie in (0,1)");

  CertificateReport rep;
  rep.params = params;
  rep.quadrature_tol = quadrature_tol;

  const auto pb = p_rn_bound(params.r, params.s, quadrature_tol);
  rep.log_p_rn_bound = pb.log_value;
  rep.quadrature = pb.info;
  rep.log_e_bar = pb.log_value + std::log(2.0 * params.r * (2.0 * params.r + 2.0 * params.s));
  rep.log_f_bar = f_bar_log(params.r);
  rep.log_a_m = a_m_tail(params.r, params.s, params.m).log_exact;

  const double e_bar_raw = std::exp(rep.log_e_bar);
  rep.e_bar_capped = e_bar_raw > 1.0;
  const double e_bar = std::min(e_bar_raw, 1.0);
  const double f_bar = std::exp(rep.log_f_bar);
  const double a_m = std::min(std::exp(rep.log_a_m), 1.0);
  rep.bad_event_total = 2.0 * e_bar + 2.0 * f_bar + a_m;
  rep.good_event_lower = 1.0 - rep.bad_event_total;

  const double eps = params.epsilon;
  const double md = static_cast<double>(params.m);
  rep.site_prob_p = 1.0 - eps / (2.0 * md);
  const double log_p_pow_m = md * std::log1p(-eps / (2.0 * md));
  rep.final_product = (1.0 - eps / 2.0) * std::exp(log_p_pow_m);
  rep.pc_site_upper = 1.0 - eps / (2.0 * md);
  rep.threshold = kLatticeThreshold;

  const double margin_req = 10.0 * quadrature_tol;
  auto add_check = [&](const std::string& name, double log_margin, bool strict_ok) {
    CertificateCheck c;
    c.name = name;
    c.log_margin = log_margin;
    c.passed = strict_ok && log_margin >= margin_req;
    rep.checks.push_back(c);
  };

  // bad_event_total <= eps/2
  add_check("bad_event_total_le_half_epsilon",
            std::log(eps / 2.0) - std::log(rep.bad_event_total), true);
  // (1 - eps/2) p^m > 1 - eps
  add_check("product_exceeds_one_minus_epsilon",
            std::log(rep.final_product) - std::log1p(-eps), true);
  // 1 - eps >= lattice threshold (exact comparison, no quadrature slack)
  {
    CertificateCheck c;
    c.name = "one_minus_epsilon_meets_threshold";
    c.log_margin = std::log1p(-eps) - std::log(kLatticeThreshold);
    c.passed = (1.0 - eps) >= kLatticeThreshold;
    rep.checks.push_back(c);
  }

  rep.valid = true;
  for (const auto& c : rep.checks) {
    if (!c.passed) {
      rep.valid = false;
      rep.failed_check = c.name;
      break;
    }
  }
  return rep;
}

}  // namespace rngperc
