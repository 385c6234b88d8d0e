// Acceptance suite: every criterion prints exactly one [PASS]/[FAIL] line;
// the exit code is the number of failed criteria.
//
// Statistical criteria use fixed seeds (base 20260808 + criterion index) so
// runs are reproducible; each line carries the measured quantities.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "rngperc/bounds.hpp"
#include "rngperc/circular_area.hpp"
#include "rngperc/geometry.hpp"
#include "rngperc/io.hpp"
#include "rngperc/percolation.hpp"
#include "rngperc/point_process.hpp"
#include "rngperc/proximity.hpp"
#include "rngperc/random.hpp"
#include "rngperc/rolling_ball.hpp"

using namespace rngperc;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeedBase = 20260808;
constexpr int kWorkers = 2;

int g_failures = 0;

void report(int id, const std::string& name, bool passed, const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", passed ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!passed) ++g_failures;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < kWorkers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& t : pool) t.join();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Quantitative bound reproduction through the CLI, with runtime budget.
void criterion_1() {
  const auto out = fs::temp_directory_path() / "acceptance_certificate.json";
#ifdef RNGPERC_CLI_PATH
  const std::string cli = RNGPERC_CLI_PATH;
#else
  const std::string cli = "rngperc";
#endif
  const auto t0 = std::chrono::steady_clock::now();
  const std::string cmd = cli + " certificate --r 8000 --s 8000 --tol 1e-10 --out " +
                          out.string() + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (rc != 0) {
    report(1, "bound reproduction at r=s=8000", false, fmt("cmd_certificate exited with %d", rc));
    return;
  }
  std::ifstream in(out);
  const auto j = nlohmann::json::parse(in);
  const double log10_e_bar = j.at("log10_e_bar").get<double>();
  const bool in_range = log10_e_bar >= -45.0 && log10_e_bar <= -35.0;
  const bool in_time = secs < 300.0;
  report(1, "bound reproduction at r=s=8000", in_range && in_time,
         fmt("log10(e_bar) = %.4f (required [-45,-35]); runtime %.1fs (< 300s). The additive "
             "bound saturates near 0.19 as r grows, so e_bar = 2r(2r+2s) p never reaches 1e-40; "
             "see docs/rolling_ball.md",
             log10_e_bar, secs));
}

// ---------------------------------------------------------------------------
// 2. Certificate validity chain at the documented parameters.
void criterion_2() {
  BoundParameters params;
  params.r = params.s = 8000.0;
  params.m = default_m(8000.0);
  params.epsilon = kDefaultEpsilon;
  const auto rep = certificate(params, 1e-10);

  const double product_margin = rep.final_product - kLatticeThreshold;
  const bool product_ok = rep.final_product > kLatticeThreshold && product_margin >= 1e-6;
  const bool pc_ok = rep.pc_site_upper < 1.0;
  const bool all_ok = rep.valid && product_ok && pc_ok;
  report(2, "certificate validity at r=s=8000", all_ok,
         fmt("valid=%s (failed check: %s, bad_event_total=%.3g vs eps/2=%.3g); product check "
             "(1-eps/2)(1-eps/2m)^m = %.6f > 0.8639 %s (margin %.2e >= 1e-6); pc_site_upper=%.12g",
             rep.valid ? "true" : "false",
             rep.failed_check.empty() ? "none" : rep.failed_check.c_str(), rep.bad_event_total,
             params.epsilon / 2.0, rep.final_product, product_ok ? "holds" : "fails",
             product_margin, rep.pc_site_upper));
}

// ---------------------------------------------------------------------------
// 3. Oracle equivalence for Gabriel and RNG extraction, plus subgraph chain.
void criterion_3() {
  const int seeds = 100, n = 200;
  std::atomic<int> mismatches{0}, chain_breaks{0};
  parallel_for(seeds, [&](int s) {
    const auto cfg = sample_uniform_count(Window::square(14.0), n, derive_seed(kSeedBase + 3, s));
    const auto del = delaunay(cfg);
    const auto gab = gabriel(cfg, del);
    const auto g = rng(cfg, gab);
    if (!edges_equal(gab, brute_force_gabriel(cfg))) ++mismatches;
    if (!edges_equal(g, brute_force_rng(cfg))) ++mismatches;
    if (!is_subgraph(g, gab) || !is_subgraph(gab, del.graph)) ++chain_breaks;
  });
  report(3, "fast vs brute-force graph oracles", mismatches == 0 && chain_breaks == 0,
         fmt("%d seeds x n=%d: %d edge-set mismatches, %d subgraph-chain violations", seeds, n,
             mismatches.load(), chain_breaks.load()));
}

// ---------------------------------------------------------------------------
// 4. RNG degree bound over 1000 ~10^4-point samples.
void criterion_4() {
  const int samples = 1000;
  std::atomic<int> max_degree{0}, over{0};
  std::atomic<long long> total_points{0};
  parallel_for(samples, [&](int s) {
    const auto cfg = sample_poisson(Window::square(100.0), 1.0, derive_seed(kSeedBase + 4, s));
    const auto g = rng(cfg, gabriel(cfg, delaunay(cfg)));
    const int d = g.max_degree();
    int cur = max_degree.load();
    while (d > cur && !max_degree.compare_exchange_weak(cur, d)) {
    }
    if (d > 6) ++over;
    total_points += cfg.size();
  });
  report(4, "RNG maximum degree <= 6", over == 0,
         fmt("%d samples, mean n=%.0f: observed max degree %d (violations above 6: %d)", samples,
             double(total_points.load()) / samples, max_degree.load(), over.load()));
}

// ---------------------------------------------------------------------------
// 5 and 6. Two-square Monte Carlo: analytic domination and containment.
struct TwoSquareAggregate {
  long long e_fail = 0, f_fail = 0, am_fail = 0, good = 0;
  long long qualifying = 0, violations = 0, paths = 0, path_failures = 0;
};

TwoSquareAggregate run_two_square(double r, int replicas, std::int64_t m, bool build_paths,
                                  std::uint64_t seed) {
  const TwoSquareRegion region{r, r};
  std::atomic<long long> e_fail{0}, f_fail{0}, am_fail{0}, good{0}, qualifying{0}, violations{0},
      paths{0}, path_failures{0};
  parallel_for(replicas, [&](int rep) {
    const auto sample = make_two_square_sample(region, derive_seed(seed, rep));
    const bool E = test_event_E(sample);
    const auto occ = test_events_F_A(region, sample.config.points, m);
    const bool G = test_good_event(sample, true);
    if (!E) ++e_fail;
    if (!occ.f1) ++f_fail;
    if (!occ.a_m) ++am_fail;
    if (G) ++good;
    if (E && occ.f1 && occ.a_m) {
      ++qualifying;
      if (!G) ++violations;
      if (build_paths) {
        // explicit rolling chain from every C1 vertex
        bool all_paths = true;
        for (int v = 0; v < sample.config.size(); ++v) {
          if (!region.in_c1(sample.config.points[v])) continue;
          const auto path = greedy_rolling_path(sample, v);
          if (!path || !region.in_c2(sample.config.points[path->back()])) all_paths = false;
        }
        if (all_paths) ++paths;
        else ++path_failures;
      }
    }
  });
  return {e_fail, f_fail, am_fail, good, qualifying, violations, paths, path_failures};
}

void criteria_5_and_6() {
  const int replicas = 100000;
  bool dominated = true;
  std::string detail5;
  bool contained = true;
  std::string detail6;

  for (const double r : {2.0, 3.0, 4.0}) {
    const std::int64_t m = default_m(r);
    const bool with_paths = r < 3.5;  // criterion 6 covers r = 2 and 3
    const auto agg =
        run_two_square(r, replicas, m, with_paths, derive_seed(kSeedBase + 5, std::lround(r)));
    const double n = replicas;
    const double pE = agg.e_fail / n, pF = agg.f_fail / n, pA = agg.am_fail / n;
    const double aE = std::min(1.0, std::exp(e_bar_bound(r, r, 1e-8).log_value));
    const double aF = std::exp(f_bar_log(r));
    const double aA = std::min(1.0, std::exp(a_m_tail(r, r, m).log_exact));
    const double sE = std::sqrt(std::max(pE * (1 - pE), 1.0 / n) / n);
    const double sF = std::sqrt(std::max(aF * (1 - aF), 1.0 / n) / n);
    const double sA = std::sqrt(std::max(pA * (1 - pA), 1.0 / n) / n);
    const bool okE = pE <= aE + 3 * sE;
    const bool okF = std::abs(pF - aF) <= 3 * sF;
    const bool okA = pA <= aA + 3 * sA;
    dominated = dominated && okE && okF && okA;
    detail5 += fmt("[r=%.0f: P(E-fail)=%.4f<=%.4f %s; P(F-fail)=%.2e vs %.2e %s; "
                   "P(Am-fail)=%.2e<=%.2e %s] ",
                   r, pE, aE, okE ? "ok" : "VIOLATION", pF, aF, okF ? "ok" : "VIOLATION", pA, aA,
                   okA ? "ok" : "VIOLATION");

    if (with_paths) {
      contained = contained && agg.violations == 0 && agg.path_failures == 0;
      detail6 += fmt("[r=%.0f: qualifying=%lld, containment violations=%lld, full path sets=%lld, "
                     "path failures=%lld] ",
                     r, agg.qualifying, agg.violations, agg.paths, agg.path_failures);
    }
  }
  report(5, "analytic bounds dominate two-square empirics", dominated, detail5);
  report(6, "E∩F∩A_m inside the good event with explicit paths", contained, detail6);
}

// ---------------------------------------------------------------------------
// 7. Threshold estimation with sandwich and exact monotonicity.
void criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  for (const double side : {64.0, 128.0}) {
    PcConfig pc;
    pc.window = Window::square(side);
    pc.tolerance = 0.0095;
    pc.initial_replicas = 192;
    pc.max_replicas = 768;
    pc.master_seed = derive_seed(kSeedBase + 7, std::lround(side));
    pc.workers = kWorkers;

    pc.mode = MarkMode::Site;
    const auto site = estimate_pc(pc);
    pc.mode = MarkMode::Bond;
    const auto bond = estimate_pc(pc);

    const double site_w = site.ci_hi - site.ci_lo;
    const double bond_w = bond.ci_hi - bond.ci_lo;
    const bool widths = site_w < 0.02 && bond_w < 0.02;
    const bool inside = site.p_hat > 0.2 && site.p_hat < 1.0;
    // sandwich within combined confidence intervals:
    // 1/5 <= pc_bond, pc_bond <= pc_site, pc_site <= 1 - (1 - pc_bond)^6
    const bool lower5 = bond.ci_hi >= 0.2;
    const bool order = bond.ci_lo <= site.ci_hi;
    const auto [unused_lo, upper] = degree_relation(std::max(0.2, bond.ci_lo));
    (void)unused_lo;
    const bool upper6 = site.ci_lo <= upper;
    ok = ok && widths && inside && lower5 && order && upper6;
    detail += fmt("[side %.0f: pc_site=%.4f (CI %.4f..%.4f, w=%.4f), pc_bond=%.4f (CI "
                  "%.4f..%.4f, w=%.4f), sandwich %s] ",
                  side, site.p_hat, site.ci_lo, site.ci_hi, site_w, bond.p_hat, bond.ci_lo,
                  bond.ci_hi, bond_w,
                  (lower5 && order && upper6) ? "holds" : "VIOLATION");
  }

  // exact monotonicity of the coupled crossing estimates
  SweepConfig sc;
  sc.window = Window::square(64.0);
  sc.kind = GraphKind::Rng;
  sc.mode = MarkMode::Site;
  for (double p = 0.0; p <= 1.0 + 1e-9; p += 0.05) sc.p_grid.push_back(std::min(p, 1.0));
  sc.replicas = 100;
  sc.master_seed = derive_seed(kSeedBase + 7, 999);
  sc.workers = kWorkers;
  const auto sweep_res = sweep(sc);
  bool monotone = true;
  for (std::size_t i = 1; i < sweep_res.crossing_prob.size(); ++i)
    monotone = monotone && sweep_res.crossing_prob[i] >= sweep_res.crossing_prob[i - 1];
  ok = ok && monotone;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  detail += fmt("crossing curve exactly monotone: %s; runtime %.0fs (< 1800s)",
                monotone ? "yes" : "NO", secs);
  report(7, "threshold estimation, sandwich, monotone curves", ok && secs < 1800.0, detail);
}

// ---------------------------------------------------------------------------
// 8. Renormalized lattice: locality and 1-independence correlations.
void criterion_8() {
  const double r = 2.0, s = 2.0;
  const TwoSquareRegion region{r, s};
  const double R = region.R();
  const int grid_w = 3, grid_h = 3;
  const int replicas = 1000;

  // edge inventory: horizontal then vertical, with endpoint vertex ids
  struct GridEdge {
    int a, b;
    bool horizontal;
    int i, j;
  };
  std::vector<GridEdge> edges;
  for (int j = 0; j < grid_h; ++j)
    for (int i = 0; i + 1 < grid_w; ++i) edges.push_back({j * grid_w + i, j * grid_w + i + 1, true, i, j});
  for (int j = 0; j + 1 < grid_h; ++j)
    for (int i = 0; i < grid_w; ++i)
      edges.push_back({j * grid_w + i, (j + 1) * grid_w + i, false, i, j});

  std::vector<std::vector<std::uint8_t>> states(replicas);
  std::atomic<int> locality_mismatches{0};
  parallel_for(replicas, [&](int rep) {
    const auto big = sample_poisson(Window{0, 0, grid_w * R, grid_h * R}, 1.0,
                                    derive_seed(kSeedBase + 8, rep));
    const auto lat = build_renormalized_lattice(big, r, s, grid_w, grid_h);
    std::vector<std::uint8_t> st;
    for (const auto& e : edges)
      st.push_back(e.horizontal ? lat.horizontal_open[lat.h_index(e.i, e.j)]
                                : lat.vertical_open[lat.v_index(e.i, e.j)]);
    if (rep < 25) {
      for (const auto& e : edges) {
        const bool again = renormalized_edge_state(big, r, s, e.i, e.j, e.horizontal);
        const bool full = e.horizontal ? lat.horizontal_open[lat.h_index(e.i, e.j)]
                                       : lat.vertical_open[lat.v_index(e.i, e.j)];
        if (again != full) ++locality_mismatches;
      }
    }
    states[rep] = std::move(st);
  });

  // max |rho| over non-adjacent edge pairs
  double max_rho = 0.0;
  int pairs = 0;
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      const bool share = edges[a].a == edges[b].a || edges[a].a == edges[b].b ||
                         edges[a].b == edges[b].a || edges[a].b == edges[b].b;
      if (share) continue;
      ++pairs;
      double sx = 0, sy = 0, sxy = 0;
      for (int rep = 0; rep < replicas; ++rep) {
        sx += states[rep][a];
        sy += states[rep][b];
        sxy += states[rep][a] & states[rep][b];
      }
      const double mx = sx / replicas, my = sy / replicas;
      const double cov = sxy / replicas - mx * my;
      const double vx = mx * (1 - mx), vy = my * (1 - my);
      if (vx > 0 && vy > 0) max_rho = std::max(max_rho, std::abs(cov / std::sqrt(vx * vy)));
    }
  }
  const double rho_limit = 4.0 / std::sqrt(double(replicas));
  report(8, "renormalized lattice locality and 1-independence",
         locality_mismatches == 0 && max_rho < rho_limit,
         fmt("isolated-pair recomputation mismatches: %d; max |rho| over %d non-adjacent edge "
             "pairs = %.4f (< %.4f) at %d replicas",
             locality_mismatches.load(), pairs, max_rho, rho_limit, replicas));
}

// Standard score of a closed-form area against a hit-or-miss estimate. In the
// sparse-hit regime the binomial standard error collapses, so floor it with
// the Poisson counting resolution sqrt(max(hits,1)) * box/n.
double z_score(double closed, const AreaEstimate& mc, const Window& box, std::uint64_t n) {
  const double hits = mc.value / box.area() * static_cast<double>(n);
  const double floor_se = box.area() * std::sqrt(std::max(hits, 1.0)) / static_cast<double>(n);
  return std::abs(closed - mc.value) / std::max(mc.std_error, floor_se);
}

// ---------------------------------------------------------------------------
// 9. Closed forms vs Monte Carlo area oracle on random parameter draws.
void criterion_9() {
  const int draws = 1000;
  const std::uint64_t n = 200000;
  std::atomic<int> worst_case_over_4sigma{0};
  std::atomic<int> exact_disagreements{0};
  double max_z = 0.0;
  std::mutex z_mutex;

  parallel_for(draws, [&](int d) {
    RandomStream rs(derive_seed(kSeedBase + 9, d));
    const double r = 0.3 + 5.0 * rs.uniform();
    double local_max = 0.0;

    // lens
    {
      const double t = 2.0 * r * (0.02 + 0.96 * rs.uniform());
      const double closed = lens_area_dv(r, t);
      const Disk rolling{{r, 0.0}, r};
      const Disk around{{0.0, 0.0}, t};
      const Window box{-t, -t, t, t};
      const auto mc = mc_region_area(
          [&](Point p) { return rolling.contains(p) && around.contains(p); }, box, n,
          derive_seed(kSeedBase + 90, d));
      const double z = z_score(closed, mc, box, n);
      local_max = std::max(local_max, z);
      if (z > 4.0) {
        ++worst_case_over_4sigma;
        if (std::abs(closed - disk_intersection_area(rolling, around)) > 1e-9)
          ++exact_disagreements;
      }
    }
    // lune and its split-point form; alpha <= r is the regime the closed form
    // is specified on (it equals |D(u,alpha) \ D_v| there)
    {
      const double alpha = r * (0.05 + 0.95 * rs.uniform());
      const double c = clamped_acos(alpha / (2.0 * r));
      const double theta = c * rs.uniform();
      const double closed = lune_area(alpha, r, theta);
      const Point u{alpha * std::cos(theta), alpha * std::sin(theta)};
      const Disk du{u, alpha};
      const Disk rolling{{r, 0.0}, r};
      const Window box{u.x - alpha, u.y - alpha, u.x + alpha, u.y + alpha};
      const auto mc = mc_region_area(
          [&](Point p) { return du.contains(p) && !rolling.strictly_contains(p); }, box, n,
          derive_seed(kSeedBase + 91, d));
      const double z = z_score(closed, mc, box, n);
      local_max = std::max(local_max, z);
      if (z > 4.0) {
        ++worst_case_over_4sigma;
        if (std::abs(closed - disk_beyond_rolling_area(alpha, r, theta)) > 1e-9)
          ++exact_disagreements;
      }

      const double split = c - std::numbers::pi / 3.0;
      const double at_split = lune_area_at_split(alpha, r);
      const Point us{alpha * std::cos(split), alpha * std::sin(split)};
      const Disk dus{us, alpha};
      const Window boxs{us.x - alpha, us.y - alpha, us.x + alpha, us.y + alpha};
      const auto mcs = mc_region_area(
          [&](Point p) { return dus.contains(p) && !rolling.strictly_contains(p); }, boxs, n,
          derive_seed(kSeedBase + 92, d));
      const double zs = z_score(at_split, mcs, boxs, n);
      local_max = std::max(local_max, zs);
      if (zs > 4.0) {
        ++worst_case_over_4sigma;
        if (std::abs(at_split - disk_beyond_rolling_area(alpha, r, split)) > 1e-9)
          ++exact_disagreements;
      }
    }
    std::lock_guard<std::mutex> lock(z_mutex);
    max_z = std::max(max_z, local_max);
  });

  report(9, "closed-form areas vs Monte Carlo oracle", worst_case_over_4sigma == 0,
         fmt("%d draws x 3 forms at n=%llu samples: max |Z| = %.2f, draws over 4 sigma: %d "
             "(exact-arc disagreements among them: %d)",
             draws, static_cast<unsigned long long>(n), max_z, worst_case_over_4sigma.load(),
             exact_disagreements.load()));
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  const auto t0 = std::chrono::steady_clock::now();
  if (!only || only == 1) criterion_1();
  if (!only || only == 2) criterion_2();
  if (!only || only == 3) criterion_3();
  if (!only || only == 4) criterion_4();
  if (!only || only == 5 || only == 6) criteria_5_and_6();
  if (!only || only == 7) criterion_7();
  if (!only || only == 8) criterion_8();
  if (!only || only == 9) criterion_9();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("acceptance finished in %.0fs with %d failing criterion(s)\n", secs, g_failures);
  return g_failures;
}
