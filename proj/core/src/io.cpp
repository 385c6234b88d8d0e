#include "rngperc/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rngperc/error.hpp"

namespace rngperc {

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json window_json(const Window& w) {
  return Json{{"x0", w.x0}, {"y0", w.y0}, {"x1", w.x1}, {"y1", w.y1}};
}

Window window_from_json(const Json& j) {
  return {j.at("x0").get<double>(), j.at("y0").get<double>(), j.at("x1").get<double>(),
          j.at("y1").get<double>()};
}

std::filesystem::path meta_path(const std::filesystem::path& p) {
  return std::filesystem::path(p.string() + ".meta.json");
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

std::string fnv1a_file_hex(const std::filesystem::path& path) {
  return fnv1a_hex(read_file(path));
}

void atomic_write(const std::filesystem::path& path, const std::string& contents) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << contents;
  }
  std::filesystem::rename(tmp, path);
}

void write_points(const std::filesystem::path& path, const PointConfiguration& config,
                  double intensity) {
  std::ostringstream csv;
  csv << "x,y\n";
  for (const auto& p : config.points) csv << fmt_double(p.x) << ',' << fmt_double(p.y) << '\n';
  atomic_write(path, csv.str());

  Json meta;
  meta["format_version"] = kFormatVersion;
  meta["window"] = window_json(config.window);
  meta["intensity"] = intensity;
  meta["seed"] = config.seed;
  meta["count"] = config.points.size();
  atomic_write(meta_path(path), meta.dump(2) + "\n");
}

PointConfiguration read_points(const std::filesystem::path& path) {
  PointConfiguration cfg;
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || line != "x,y")
    throw IoError("points file missing 'x,y' header: " + path.string());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("bad points row: " + line);
    cfg.points.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  const auto mp = meta_path(path);
  if (std::filesystem::exists(mp)) {
    const Json meta = Json::parse(read_file(mp));
    cfg.window = window_from_json(meta.at("window"));
    cfg.seed = meta.at("seed").get<std::uint64_t>();
  } else {
    // fall back to the bounding box
    Window w{0, 0, 1, 1};
    if (!cfg.points.empty()) {
      w = {cfg.points[0].x, cfg.points[0].y, cfg.points[0].x, cfg.points[0].y};
      for (const auto& p : cfg.points) {
        w.x0 = std::min(w.x0, p.x);
        w.y0 = std::min(w.y0, p.y);
        w.x1 = std::max(w.x1, p.x);
        w.y1 = std::max(w.y1, p.y);
      }
    }
    cfg.window = w;
  }
  return cfg;
}

void write_graph(const std::filesystem::path& path, const ProximityGraph& graph,
                 const std::string& source_config_hash) {
  std::ostringstream csv;
  csv << "u_index,v_index\n";
  for (const auto& e : graph.edges) csv << e.u << ',' << e.v << '\n';
  atomic_write(path, csv.str());

  Json meta;
  meta["format_version"] = kFormatVersion;
  meta["kind"] = to_string(graph.kind);
  meta["vertex_count"] = graph.vertex_count;
  meta["edge_count"] = graph.edges.size();
  meta["source_config_hash"] = source_config_hash;
  atomic_write(meta_path(path), meta.dump(2) + "\n");
}

GraphFile read_graph(const std::filesystem::path& path) {
  GraphFile gf;
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line) || line != "u_index,v_index")
    throw IoError("graph file missing header: " + path.string());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    gf.edges.push_back({std::stoi(line.substr(0, comma)), std::stoi(line.substr(comma + 1))});
  }
  const Json meta = Json::parse(read_file(meta_path(path)));
  gf.kind = graph_kind_from_string(meta.at("kind").get<std::string>());
  gf.vertex_count = meta.at("vertex_count").get<int>();
  gf.source_config_hash = meta.value("source_config_hash", "");
  return gf;
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result) {
  std::ostringstream csv;
  csv << "p,crossing_prob,std_err,replicas\n";
  for (std::size_t i = 0; i < result.p_grid.size(); ++i)
    csv << fmt_double(result.p_grid[i]) << ',' << fmt_double(result.crossing_prob[i]) << ','
        << fmt_double(result.std_err[i]) << ',' << result.replicas << '\n';
  atomic_write(path, csv.str());
}

void write_pc_estimate(const std::filesystem::path& path, const PcEstimate& est,
                       const Window& window, std::uint64_t seed) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["p_hat"] = est.p_hat;
  j["ci_lo"] = est.ci_lo;
  j["ci_hi"] = est.ci_hi;
  j["mode"] = est.mode == MarkMode::Site ? "site" : "bond";
  j["kind"] = to_string(est.kind);
  j["window"] = window_json(window);
  j["replicas"] = est.replicas;
  j["seed"] = seed;
  j["target"] = est.target;
  atomic_write(path, j.dump(2) + "\n");
}

void write_certificate(const std::filesystem::path& path, const CertificateReport& rep) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["params"] = {{"r", rep.params.r},
                 {"s", rep.params.s},
                 {"m", rep.params.m},
                 {"epsilon", rep.params.epsilon}};
  j["quadrature_tol"] = rep.quadrature_tol;
  j["log_p_rn_bound"] = rep.log_p_rn_bound;
  j["log10_p_rn_bound"] = rep.log_p_rn_bound / std::log(10.0);
  j["log_e_bar"] = rep.log_e_bar;
  j["log10_e_bar"] = rep.log_e_bar / std::log(10.0);
  j["log_f_bar"] = rep.log_f_bar;
  j["log_a_m"] = rep.log_a_m;
  j["e_bar_capped"] = rep.e_bar_capped;
  j["bad_event_total"] = rep.bad_event_total;
  j["good_event_lower"] = rep.good_event_lower;
  j["site_prob_p"] = rep.site_prob_p;
  j["final_product"] = rep.final_product;
  j["threshold"] = rep.threshold;
  j["pc_site_upper"] = rep.pc_site_upper;
  j["valid"] = rep.valid;
  j["failed_check"] = rep.failed_check;
  Json checks = Json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"log_margin", c.log_margin}});
  j["checks"] = checks;
  j["quadrature"] = {{"panels", rep.quadrature.panels},
                     {"error_estimate", rep.quadrature.error_estimate}};
  atomic_write(path, j.dump(2) + "\n");
}

void write_event_statistics_csv(const std::filesystem::path& path,
                                const std::vector<EventStatistics>& rows) {
  std::ostringstream csv;
  csv << "r,s,m,replicas,p_E_fail,p_F_fail,p_Am_fail,p_good,analytic_E,analytic_F,analytic_Am\n";
  for (const auto& r : rows)
    csv << fmt_double(r.r) << ',' << fmt_double(r.s) << ',' << r.m << ',' << r.replicas << ','
        << fmt_double(r.p_E_fail) << ',' << fmt_double(r.p_F_fail) << ','
        << fmt_double(r.p_Am_fail) << ',' << fmt_double(r.p_good) << ','
        << fmt_double(r.analytic_E) << ',' << fmt_double(r.analytic_F) << ','
        << fmt_double(r.analytic_Am) << '\n';
  atomic_write(path, csv.str());
}

void write_labeling(const std::filesystem::path& path, const ClusterLabeling& labeling,
                    bool crossed) {
  std::ostringstream csv;
  csv << "index,cluster_id\n";
  for (std::size_t i = 0; i < labeling.cluster_id.size(); ++i)
    csv << i << ',' << labeling.cluster_id[i] << '\n';
  atomic_write(path, csv.str());

  Json j;
  j["format_version"] = kFormatVersion;
  j["open_count"] = labeling.open_count;
  j["cluster_count"] = labeling.cluster_count();
  j["largest_size"] = labeling.largest_size;
  j["crossing"] = crossed;
  atomic_write(meta_path(path), j.dump(2) + "\n");
}

void write_run_manifest(const std::filesystem::path& out_path, const RunManifest& manifest) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["command"] = manifest.command;
  Json params = Json::object();
  for (const auto& [k, v] : manifest.parameters) params[k] = v;
  j["parameters"] = params;
  j["master_seed"] = manifest.master_seed;
  j["wall_time_seconds"] = manifest.wall_time_seconds;
  Json hashes = Json::object();
  for (const auto& [k, v] : manifest.output_hashes) hashes[k] = v;
  j["output_hashes"] = hashes;
  atomic_write(std::filesystem::path(out_path.string() + ".run.json"), j.dump(2) + "\n");
}

}  // namespace rngperc
