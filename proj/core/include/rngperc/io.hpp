#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rngperc/bounds.hpp"
#include "rngperc/percolation.hpp"
#include "rngperc/point_process.hpp"
#include "rngperc/proximity.hpp"
#include "rngperc/rolling_ball.hpp"

namespace rngperc {

inline constexpr int kFormatVersion = 1;

// FNV-1a over the file bytes, hex encoded; the hash recorded in manifests.
std::string fnv1a_file_hex(const std::filesystem::path& path);
std::string fnv1a_hex(const std::string& bytes);

// All writes go through a temp file + rename.
void atomic_write(const std::filesystem::path& path, const std::string& contents);

// Points CSV ("x,y") with a JSON metadata sidecar at <path>.meta.json.
void write_points(const std::filesystem::path& path, const PointConfiguration& config,
                  double intensity);
PointConfiguration read_points(const std::filesystem::path& path);

// Edge-list CSV ("u_index,v_index") with a sidecar carrying
// {kind, vertex_count, edge_count, source_config_hash}.
void write_graph(const std::filesystem::path& path, const ProximityGraph& graph,
                 const std::string& source_config_hash);
struct GraphFile {
  GraphKind kind;
  int vertex_count;
  std::vector<Edge> edges;
  std::string source_config_hash;
};
GraphFile read_graph(const std::filesystem::path& path);

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result);
void write_pc_estimate(const std::filesystem::path& path, const PcEstimate& est,
                       const Window& window, std::uint64_t seed);
void write_certificate(const std::filesystem::path& path, const CertificateReport& report);
void write_event_statistics_csv(const std::filesystem::path& path,
                                const std::vector<EventStatistics>& rows);

// Cluster labeling CSV plus a JSON summary.
void write_labeling(const std::filesystem::path& path, const ClusterLabeling& labeling,
                    bool crossed);

// Run manifest at <out>.run.json: command, parameters, output hashes, timing.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::uint64_t master_seed = 0;
  double wall_time_seconds = 0.0;
  std::vector<std::pair<std::string, std::string>> output_hashes;  // path -> fnv1a
};
void write_run_manifest(const std::filesystem::path& out_path, const RunManifest& manifest);

}  // namespace rngperc
