// rngperc: proximity-graph percolation toolbox.
//
// Subcommands cover Poisson sampling, Delaunay/Gabriel/RNG construction,
// cluster analysis, crossing-probability sweeps, threshold estimation, the
// rolling-ball analytic bounds, renormalization certificates, and the
// two-square Monte Carlo experiments. Every output is written atomically and
// accompanied by a .run.json manifest sufficient to reproduce it.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rngperc/bounds.hpp"
#include "rngperc/io.hpp"
#include "rngperc/percolation.hpp"
#include "rngperc/point_process.hpp"
#include "rngperc/proximity.hpp"
#include "rngperc/random.hpp"
#include "rngperc/rolling_ball.hpp"

using namespace rngperc;

namespace {

Window parse_window(const std::string& spec) {
  std::vector<double> vals;
  std::string token;
  std::istringstream in(spec);
  while (std::getline(in, token, ',')) vals.push_back(std::stod(token));
  if (vals.size() == 1) return Window::square(vals[0]);
  if (vals.size() == 4) return {vals[0], vals[1], vals[2], vals[3]};
  throw DomainError("--window expects SIDE or x0,y0,x1,y1");
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    double lo, hi, step;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0)
      throw DomainError("--p-grid expects lo:hi:step or a comma list");
    for (double p = lo; p <= hi + 1e-12; p += step) grid.push_back(std::min(p, hi));
  } else {
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, ',')) grid.push_back(std::stod(token));
  }
  return grid;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

RunManifest make_manifest(std::string command,
                          std::vector<std::pair<std::string, std::string>> params,
                          std::uint64_t master_seed) {
  RunManifest m;
  m.command = std::move(command);
  m.parameters = std::move(params);
  m.master_seed = master_seed;
  return m;
}

void finish_manifest(RunManifest manifest, const std::filesystem::path& out, const Timer& timer,
                     const std::vector<std::filesystem::path>& outputs) {
  manifest.wall_time_seconds = timer.seconds();
  for (const auto& p : outputs)
    manifest.output_hashes.emplace_back(p.filename().string(), fnv1a_file_hex(p));
  write_run_manifest(out, manifest);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ProximityGraph build_graph_kind(const PointConfiguration& cfg, GraphKind kind) {
  auto del = delaunay(cfg);
  if (kind == GraphKind::Delaunay) return std::move(del.graph);
  auto gab = gabriel(cfg, del);
  if (kind == GraphKind::Gabriel) return gab;
  return rng(cfg, gab);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proximity-graph percolation toolbox"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value config file; flags take precedence");

  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "master seed (env RNGPERC_SEED)")->envname("RNGPERC_SEED");
  int workers = 1;
  app.add_option("--workers", workers, "worker threads for replica-parallel commands");

  // ---- sample ----
  auto* c_sample = app.add_subcommand("sample", "draw a Poisson configuration");
  c_sample->fallthrough();
  std::string sample_window = "32";
  double sample_intensity = 1.0;
  std::string sample_out = "points.csv";
  c_sample->add_option("--window", sample_window, "SIDE or x0,y0,x1,y1");
  c_sample->add_option("--intensity", sample_intensity, "points per unit area");
  c_sample->add_option("--out", sample_out)->required();

  // ---- graph ----
  auto* c_graph = app.add_subcommand("graph", "build a proximity graph from points");
  c_graph->fallthrough();
  std::string graph_in, graph_out = "graph.csv", graph_kind = "rng";
  c_graph->add_option("--in", graph_in, "points CSV")->required();
  c_graph->add_option("--kind", graph_kind, "delaunay|gabriel|rng");
  c_graph->add_option("--out", graph_out)->required();

  // ---- percolate ----
  auto* c_perc = app.add_subcommand("percolate", "mark and label one configuration");
  c_perc->fallthrough();
  std::string perc_graph, perc_points, perc_out = "clusters.csv", perc_mode = "site";
  double perc_p = 0.5;
  c_perc->add_option("--in", perc_graph, "graph CSV")->required();
  c_perc->add_option("--points", perc_points, "points CSV the graph was built from")->required();
  c_perc->add_option("--mode", perc_mode, "site|bond");
  c_perc->add_option("--p", perc_p, "open probability");
  c_perc->add_option("--out", perc_out)->required();

  // ---- sweep ----
  auto* c_sweep = app.add_subcommand("sweep", "crossing probability over a p grid");
  c_sweep->fallthrough();
  std::string sweep_window = "64", sweep_kind = "rng", sweep_mode = "site",
              sweep_grid = "0:1:0.05", sweep_out = "sweep.csv";
  double sweep_intensity = 1.0;
  int sweep_replicas = 50;
  c_sweep->add_option("--window", sweep_window);
  c_sweep->add_option("--intensity", sweep_intensity);
  c_sweep->add_option("--kind", sweep_kind);
  c_sweep->add_option("--mode", sweep_mode);
  c_sweep->add_option("--p-grid", sweep_grid, "lo:hi:step or comma list");
  c_sweep->add_option("--replicas", sweep_replicas);
  c_sweep->add_option("--out", sweep_out)->required();

  // ---- estimate-pc ----
  auto* c_pc = app.add_subcommand("estimate-pc", "bisect the crossing probability to 1/2");
  c_pc->fallthrough();
  std::string pc_window = "64", pc_kind = "rng", pc_mode = "site", pc_out = "pc.json";
  double pc_intensity = 1.0, pc_tol = 0.01;
  int pc_replicas = 128, pc_max_replicas = 1024;
  c_pc->add_option("--window", pc_window);
  c_pc->add_option("--intensity", pc_intensity);
  c_pc->add_option("--kind", pc_kind);
  c_pc->add_option("--mode", pc_mode);
  c_pc->add_option("--tol", pc_tol, "target CI half-width");
  c_pc->add_option("--replicas", pc_replicas, "initial replica count");
  c_pc->add_option("--max-replicas", pc_max_replicas);
  c_pc->add_option("--out", pc_out)->required();

  // ---- bound ----
  auto* c_bound = app.add_subcommand("bound", "rolling-edge failure bound at (r, s)");
  c_bound->fallthrough();
  double bound_r = 1.0, bound_s = 1.0, bound_tol = 1e-10;
  std::string bound_out = "bound.json";
  c_bound->add_option("--r", bound_r)->required();
  c_bound->add_option("--s", bound_s)->required();
  c_bound->add_option("--tol", bound_tol, "log-domain quadrature tolerance");
  c_bound->add_option("--out", bound_out)->required();

  // ---- certificate ----
  auto* c_cert = app.add_subcommand("certificate", "full renormalization certificate");
  c_cert->fallthrough();
  double cert_r = 8000.0, cert_s = 8000.0, cert_eps = kDefaultEpsilon, cert_tol = 1e-10;
  std::int64_t cert_m = -1;
  std::string cert_out = "certificate.json";
  c_cert->add_option("--r", cert_r);
  c_cert->add_option("--s", cert_s);
  c_cert->add_option("--m", cert_m, "point cap (default ceil(e(8+pi)r^2)+1)");
  c_cert->add_option("--epsilon", cert_eps);
  c_cert->add_option("--tol", cert_tol);
  c_cert->add_option("--out", cert_out)->required();

  // ---- rollingball ----
  auto* c_roll = app.add_subcommand("rollingball", "two-square Monte Carlo event statistics");
  c_roll->fallthrough();
  double roll_r = 2.0, roll_s = 2.0;
  std::int64_t roll_m = -1;
  int roll_replicas = 10000;
  std::string roll_out = "rollingball.csv";
  c_roll->add_option("--r", roll_r);
  c_roll->add_option("--s", roll_s);
  c_roll->add_option("--m", roll_m);
  c_roll->add_option("--replicas", roll_replicas);
  c_roll->add_option("--out", roll_out)->required();

  // ---- gridsearch ----
  auto* c_gridsearch = app.add_subcommand("gridsearch", "certificate scan over (r, s) values");
  c_gridsearch->fallthrough();
  std::string gs_r = "1,2,4,8", gs_s, gs_out = "gridsearch.csv";
  double gs_eps = kDefaultEpsilon, gs_tol = 1e-8;
  c_gridsearch->add_option("--r-values", gs_r, "comma list");
  c_gridsearch->add_option("--s-values", gs_s, "comma list (default: same as r)");
  c_gridsearch->add_option("--epsilon", gs_eps);
  c_gridsearch->add_option("--tol", gs_tol);
  c_gridsearch->add_option("--out", gs_out)->required();

  try {
    app.parse(argc, argv);
    Timer timer;

    if (*c_sample) {
      const Window w = parse_window(sample_window);
      const auto cfg = sample_poisson(w, sample_intensity, seed);
      write_points(sample_out, cfg, sample_intensity);
      RunManifest m = make_manifest("sample", {{"window", sample_window},
                     {"intensity", fmt(sample_intensity)},
                     {"out", sample_out}}, seed);
      finish_manifest(m, sample_out, timer, {sample_out, sample_out + ".meta.json"});
    } else if (*c_graph) {
      const auto cfg = read_points(graph_in);
      const auto kind = graph_kind_from_string(graph_kind);
      const auto g = build_graph_kind(cfg, kind);
      write_graph(graph_out, g, fnv1a_file_hex(graph_in));
      RunManifest m = make_manifest("graph", {{"in", graph_in}, {"kind", graph_kind}, {"out", graph_out}}, seed);
      finish_manifest(m, graph_out, timer, {graph_out, graph_out + ".meta.json"});
    } else if (*c_perc) {
      const auto cfg = read_points(perc_points);
      const auto gf = read_graph(perc_graph);
      auto g = make_graph(gf.kind, gf.vertex_count, gf.edges);
      const auto mode = perc_mode == "bond" ? MarkMode::Bond : MarkMode::Site;
      const auto marks = mode == MarkMode::Site ? mark_sites(cfg, perc_p, seed)
                                                : mark_bonds(cfg, g, perc_p, seed);
      const auto lab = open_clusters(g, marks);
      const bool crossed =
          crossing(g, cfg, lab, cfg.window, default_crossing_delta(1.0));
      write_labeling(perc_out, lab, crossed);
      RunManifest m = make_manifest("percolate", {{"in", perc_graph},
                     {"points", perc_points},
                     {"mode", perc_mode},
                     {"p", fmt(perc_p)},
                     {"out", perc_out}}, seed);
      finish_manifest(m, perc_out, timer, {perc_out, perc_out + ".meta.json"});
    } else if (*c_sweep) {
      SweepConfig sc;
      sc.window = parse_window(sweep_window);
      sc.intensity = sweep_intensity;
      sc.kind = graph_kind_from_string(sweep_kind);
      sc.mode = sweep_mode == "bond" ? MarkMode::Bond : MarkMode::Site;
      sc.p_grid = parse_grid(sweep_grid);
      sc.replicas = sweep_replicas;
      sc.master_seed = seed;
      sc.workers = workers;
      write_sweep_csv(sweep_out, sweep(sc));
      RunManifest m = make_manifest("sweep", {{"window", sweep_window},
                     {"intensity", fmt(sweep_intensity)},
                     {"kind", sweep_kind},
                     {"mode", sweep_mode},
                     {"p_grid", sweep_grid},
                     {"replicas", std::to_string(sweep_replicas)},
                     {"workers", std::to_string(workers)},
                     {"out", sweep_out}}, seed);
      finish_manifest(m, sweep_out, timer, {sweep_out});
    } else if (*c_pc) {
      PcConfig pc;
      pc.window = parse_window(pc_window);
      pc.intensity = pc_intensity;
      pc.kind = graph_kind_from_string(pc_kind);
      pc.mode = pc_mode == "bond" ? MarkMode::Bond : MarkMode::Site;
      pc.tolerance = pc_tol;
      pc.initial_replicas = pc_replicas;
      pc.max_replicas = pc_max_replicas;
      pc.master_seed = seed;
      pc.workers = workers;
      const auto est = estimate_pc(pc);
      write_pc_estimate(pc_out, est, pc.window, seed);
      RunManifest m = make_manifest("estimate-pc", {{"window", pc_window},
                     {"kind", pc_kind},
                     {"mode", pc_mode},
                     {"tol", fmt(pc_tol)},
                     {"replicas", std::to_string(pc_replicas)},
                     {"max_replicas", std::to_string(pc_max_replicas)},
                     {"out", pc_out}}, seed);
      finish_manifest(m, pc_out, timer, {pc_out});
    } else if (*c_bound) {
      const auto b = p_rn_bound(bound_r, bound_s, bound_tol);
      const auto e = e_bar_bound(bound_r, bound_s, bound_tol);
      FinalFormInfo ff_info;
      const double ff = p_rn_bound_final_form(bound_r, bound_s, bound_tol, &ff_info);
      nlohmann::ordered_json j;
      j["format_version"] = kFormatVersion;
      j["r"] = bound_r;
      j["s"] = bound_s;
      j["quadrature_tol"] = bound_tol;
      j["log_p_rn_bound"] = b.log_value;
      j["log10_p_rn_bound"] = b.log_value / std::log(10.0);
      j["log_e_bar"] = e.log_value;
      j["log10_e_bar"] = e.log_value / std::log(10.0);
      j["p_rn_bound_final_form"] = ff;
      j["final_form_cancellation_warning"] = ff_info.cancellation_warning;
      j["quadrature"] = {{"panels", b.info.panels}, {"error_estimate", b.info.error_estimate}};
      atomic_write(bound_out, j.dump(2) + "\n");
      RunManifest m = make_manifest("bound", {{"r", fmt(bound_r)}, {"s", fmt(bound_s)}, {"tol", fmt(bound_tol)},
                     {"out", bound_out}}, seed);
      finish_manifest(m, bound_out, timer, {bound_out});
    } else if (*c_cert) {
      BoundParameters params;
      params.r = cert_r;
      params.s = cert_s;
      params.m = cert_m > 0 ? cert_m : default_m(cert_r);
      params.epsilon = cert_eps;
      const auto rep = certificate(params, cert_tol);
      write_certificate(cert_out, rep);
      RunManifest m = make_manifest("certificate", {{"r", fmt(cert_r)},
                     {"s", fmt(cert_s)},
                     {"m", std::to_string(params.m)},
                     {"epsilon", fmt(cert_eps)},
                     {"tol", fmt(cert_tol)},
                     {"out", cert_out}}, seed);
      finish_manifest(m, cert_out, timer, {cert_out});
      std::printf("valid=%s pc_site_upper=%.12g log10_e_bar=%.6g\n",
                  rep.valid ? "true" : "false", rep.pc_site_upper,
                  rep.log_e_bar / std::log(10.0));
    } else if (*c_roll) {
      const std::int64_t m_eff = roll_m > 0 ? roll_m : default_m(roll_r);
      const auto st =
          rolling_ball_statistics(roll_r, roll_s, m_eff, roll_replicas, seed, workers);
      write_event_statistics_csv(roll_out, {st});
      RunManifest m = make_manifest("rollingball", {{"r", fmt(roll_r)},
                     {"s", fmt(roll_s)},
                     {"m", std::to_string(m_eff)},
                     {"replicas", std::to_string(roll_replicas)},
                     {"workers", std::to_string(workers)},
                     {"out", roll_out}}, seed);
      finish_manifest(m, roll_out, timer, {roll_out});
    } else if (*c_gridsearch) {
      const auto rs = parse_grid(gs_r);
      const auto ss = gs_s.empty() ? rs : parse_grid(gs_s);
      if (rs.size() != ss.size())
        throw DomainError("gridsearch: r and s lists must have equal length");
      std::ostringstream csv;
      csv << "r,s,m,log10_e_bar,log_f_bar,log_a_m,bad_event_total,valid\n";
      for (std::size_t i = 0; i < rs.size(); ++i) {
        BoundParameters params;
        params.r = rs[i];
        params.s = ss[i];
        params.m = default_m(rs[i]);
        params.epsilon = gs_eps;
        const auto rep = certificate(params, gs_tol);
        csv << fmt(rs[i]) << ',' << fmt(ss[i]) << ',' << params.m << ','
            << fmt(rep.log_e_bar / std::log(10.0)) << ',' << fmt(rep.log_f_bar) << ','
            << fmt(rep.log_a_m) << ',' << fmt(rep.bad_event_total) << ','
            << (rep.valid ? "true" : "false") << '\n';
      }
      atomic_write(gs_out, csv.str());
      RunManifest m = make_manifest("gridsearch", {{"r_values", gs_r},
                     {"s_values", gs_s.empty() ? gs_r : gs_s},
                     {"epsilon", fmt(gs_eps)},
                     {"tol", fmt(gs_tol)},
                     {"out", gs_out}}, seed);
      finish_manifest(m, gs_out, timer, {gs_out});
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    nlohmann::ordered_json err;
    err["error"] = {{"type", typeid(e).name()}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
