#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rngperc/delaunay.hpp"
#include "rngperc/geometry.hpp"
#include "rngperc/point_process.hpp"

namespace rngperc {

enum class GraphKind { Delaunay, Gabriel, Rng };

std::string to_string(GraphKind k);
GraphKind graph_kind_from_string(const std::string& s);

struct Edge {
  int u = 0;
  int v = 0;  // u < v
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Undirected simple graph on point indices, edges sorted lexicographically,
// adjacency in CSR form.
struct ProximityGraph {
  GraphKind kind = GraphKind::Delaunay;
  int vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<int> adj_offsets;  // size vertex_count + 1
  std::vector<int> adj;

  int degree(int v) const { return adj_offsets[v + 1] - adj_offsets[v]; }
  int max_degree() const;
  bool is_connected() const;  // true for vertex_count <= 1
};

ProximityGraph make_graph(GraphKind kind, int vertex_count, std::vector<Edge> edges);

struct DelaunayResult {
  ProximityGraph graph;
  Triangulation triangulation;
};

// Delaunay graph of a configuration. Fewer than 3 points yield the complete
// graph on those points; fully collinear input raises DegenerateInputError.
DelaunayResult delaunay(const PointConfiguration& config);

// Gabriel subgraph, extracted locally from the triangulation: a Delaunay edge
// is Gabriel iff neither opposite vertex lies strictly inside its open
// diametral disk.
ProximityGraph gabriel(const PointConfiguration& config, const DelaunayResult& del);

// Relative neighborhood subgraph of the Gabriel graph: edge {u,v} survives iff
// no witness w has d(w,u) < d(u,v) and d(w,v) < d(u,v) (open lune, strict).
ProximityGraph rng(const PointConfiguration& config, const ProximityGraph& gabriel_graph);

// Definition-literal O(n^3) oracles.
ProximityGraph brute_force_gabriel(const PointConfiguration& config);
ProximityGraph brute_force_rng(const PointConfiguration& config);

// Diagnostics used by tests and the acceptance suite.
bool is_subgraph(const ProximityGraph& sub, const ProximityGraph& super);
bool edges_equal(const ProximityGraph& a, const ProximityGraph& b);

// Verifies the empty-circumdisk property of every triangle against every
// point; O(n * triangles).
bool delaunay_empty_circumdisk(const PointConfiguration& config, const Triangulation& tri);

// True if some pair of edges properly crosses (shared endpoints excluded).
bool has_proper_edge_crossing(const PointConfiguration& config, const ProximityGraph& g);

// Uniform cell index over the window for neighborhood queries.
class CellGrid {
 public:
  CellGrid(const std::vector<Point>& pts, const Window& window, double cell_size);

  // Append indices of all points within `radius` of `center` to `out`.
  void query_disk(Point center, double radius, std::vector<int>& out) const;

 private:
  const std::vector<Point>& pts_;
  Window window_;
  double cell_ = 1.0;
  int nx_ = 1, ny_ = 1;
  std::vector<int> cell_start_;
  std::vector<int> items_;
};

}  // namespace rngperc
