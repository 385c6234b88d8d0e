#include "rngperc/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rngperc/error.hpp"
#include "rngperc/predicates.hpp"

namespace rngperc {

std::string to_string(GraphKind k) {
  switch (k) {
    case GraphKind::Delaunay: return "delaunay";
    case GraphKind::Gabriel: return "gabriel";
    case GraphKind::Rng: return "rng";
  }
  return "unknown";
}

GraphKind graph_kind_from_string(const std::string& s) {
  if (s == "delaunay") return GraphKind::Delaunay;
  if (s == "gabriel") return GraphKind::Gabriel;
  if (s == "rng") return GraphKind::Rng;
  throw DomainError("unknown graph kind: " + s);
}

ProximityGraph make_graph(GraphKind kind, int vertex_count, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.u == e.v) throw DomainError("make_graph: self loop");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  ProximityGraph g;
  g.kind = kind;
  g.vertex_count = vertex_count;
  g.edges = std::move(edges);
  g.adj_offsets.assign(vertex_count + 1, 0);
  for (const auto& e : g.edges) {
    ++g.adj_offsets[e.u + 1];
    ++g.adj_offsets[e.v + 1];
  }
  for (int v = 0; v < vertex_count; ++v) g.adj_offsets[v + 1] += g.adj_offsets[v];
  g.adj.resize(2 * g.edges.size());
  std::vector<int> cursor(g.adj_offsets.begin(), g.adj_offsets.end() - 1);
  for (const auto& e : g.edges) {
    g.adj[cursor[e.u]++] = e.v;
    g.adj[cursor[e.v]++] = e.u;
  }
  return g;
}

int ProximityGraph::max_degree() const {
  int m = 0;
  for (int v = 0; v < vertex_count; ++v) m = std::max(m, degree(v));
  return m;
}

bool ProximityGraph::is_connected() const {
  if (vertex_count <= 1) return true;
  std::vector<int> stack{0};
  std::vector<std::uint8_t> seen(vertex_count, 0);
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int i = adj_offsets[v]; i < adj_offsets[v + 1]; ++i) {
      const int w = adj[i];
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == vertex_count;
}

DelaunayResult delaunay(const PointConfiguration& config) {
  const int n = config.size();
  DelaunayResult out;
  if (n <= 2) {
    std::vector<Edge> edges;
    if (n == 2) edges.push_back({0, 1});
    out.graph = make_graph(GraphKind::Delaunay, n, std::move(edges));
    out.triangulation.vertex_count = n;
    return out;
  }
  out.triangulation = delaunay_triangulate(config.points);
  std::vector<Edge> edges;
  edges.reserve(3 * out.triangulation.tris.size() / 2 + 4);
  for (const auto& t : out.triangulation.tris) {
    for (int i = 0; i < 3; ++i) {
      const int a = t.v[(i + 1) % 3], b = t.v[(i + 2) % 3];
      if (a < b) edges.push_back({a, b});
      else if (t.nb[i] < 0) edges.push_back({b, a});  // hull edge seen once
    }
  }
  out.graph = make_graph(GraphKind::Delaunay, n, std::move(edges));
  return out;
}

ProximityGraph gabriel(const PointConfiguration& config, const DelaunayResult& del) {
  const auto& pts = config.points;
  const int n = config.size();
  if (n <= 2) {
    auto g = del.graph;
    g.kind = GraphKind::Gabriel;
    return g;
  }

  // Opposite vertices per Delaunay edge, collected from the triangulation.
  std::map<std::pair<int, int>, std::array<int, 2>> opposites;
  for (const auto& t : del.triangulation.tris) {
    for (int i = 0; i < 3; ++i) {
      int a = t.v[(i + 1) % 3], b = t.v[(i + 2) % 3];
      if (a > b) std::swap(a, b);
      auto [it, fresh] = opposites.try_emplace({a, b}, std::array<int, 2>{-1, -1});
      if (fresh) it->second[0] = t.v[i];
      else it->second[1] = t.v[i];
    }
  }

  std::vector<Edge> edges;
  for (const auto& e : del.graph.edges) {
    const Point mid{0.5 * (pts[e.u].x + pts[e.v].x), 0.5 * (pts[e.u].y + pts[e.v].y)};
    const double r2 = 0.25 * dist2(pts[e.u], pts[e.v]);
    bool open_disk_empty = true;
    const auto it = opposites.find({e.u, e.v});
    if (it != opposites.end()) {
      for (const int w : it->second) {
        if (w >= 0 && dist2(pts[w], mid) < r2) {
          open_disk_empty = false;
          break;
        }
      }
    }
    if (open_disk_empty) edges.push_back(e);
  }
  return make_graph(GraphKind::Gabriel, n, std::move(edges));
}

ProximityGraph rng(const PointConfiguration& config, const ProximityGraph& gabriel_graph) {
  const auto& pts = config.points;
  const int n = config.size();
  if (n <= 2) {
    auto g = gabriel_graph;
    g.kind = GraphKind::Rng;
    return g;
  }

  const double cell = std::max(1e-9, std::sqrt(config.window.area() / std::max(1, n)));
  const CellGrid grid(pts, config.window, cell);

  std::vector<Edge> edges;
  std::vector<int> candidates;
  for (const auto& e : gabriel_graph.edges) {
    const double d2uv = dist2(pts[e.u], pts[e.v]);
    const Point mid{0.5 * (pts[e.u].x + pts[e.v].x), 0.5 * (pts[e.u].y + pts[e.v].y)};
    candidates.clear();
    // The open lune lies within this disk around the midpoint.
    grid.query_disk(mid, std::sqrt(d2uv) * 0.8660254037844387 + 1e-12, candidates);
    bool lune_empty = true;
    for (const int w : candidates) {
      if (w == e.u || w == e.v) continue;
      if (dist2(pts[w], pts[e.u]) < d2uv && dist2(pts[w], pts[e.v]) < d2uv) {
        lune_empty = false;
        break;
      }
    }
    if (lune_empty) edges.push_back(e);
  }
  return make_graph(GraphKind::Rng, n, std::move(edges));
}

ProximityGraph brute_force_gabriel(const PointConfiguration& config) {
  const auto& pts = config.points;
  const int n = config.size();
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const Point mid{0.5 * (pts[u].x + pts[v].x), 0.5 * (pts[u].y + pts[v].y)};
      const double r2 = 0.25 * dist2(pts[u], pts[v]);
      bool empty = true;
      for (int w = 0; w < n && empty; ++w) {
        if (w == u || w == v) continue;
        empty = !(dist2(pts[w], mid) < r2);
      }
      if (empty) edges.push_back({u, v});
    }
  }
  return make_graph(GraphKind::Gabriel, n, std::move(edges));
}

ProximityGraph brute_force_rng(const PointConfiguration& config) {
  const auto& pts = config.points;
  const int n = config.size();
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double d2uv = dist2(pts[u], pts[v]);
      bool empty = true;
      for (int w = 0; w < n && empty; ++w) {
        if (w == u || w == v) continue;
        empty = !(dist2(pts[w], pts[u]) < d2uv && dist2(pts[w], pts[v]) < d2uv);
      }
      if (empty) edges.push_back({u, v});
    }
  }
  return make_graph(GraphKind::Rng, n, std::move(edges));
}

bool is_subgraph(const ProximityGraph& sub, const ProximityGraph& super) {
  return std::includes(super.edges.begin(), super.edges.end(), sub.edges.begin(),
                       sub.edges.end());
}

bool edges_equal(const ProximityGraph& a, const ProximityGraph& b) { return a.edges == b.edges; }

bool delaunay_empty_circumdisk(const PointConfiguration& config, const Triangulation& tri) {
  const auto& pts = config.points;
  for (const auto& t : tri.tris) {
    for (int w = 0; w < config.size(); ++w) {
      if (w == t.v[0] || w == t.v[1] || w == t.v[2]) continue;
      if (incircle_sign(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]], pts[w]) > 0) return false;
    }
  }
  return true;
}

bool has_proper_edge_crossing(const PointConfiguration& config, const ProximityGraph& g) {
  const auto& pts = config.points;
  auto orient = [&](Point a, Point b, Point c) {
    const double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
  };
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
      const auto& e = g.edges[i];
      const auto& f = g.edges[j];
      if (e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v) continue;
      const Point a = pts[e.u], b = pts[e.v], c = pts[f.u], d = pts[f.v];
      if (orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0)
        return true;
    }
  }
  return false;
}

CellGrid::CellGrid(const std::vector<Point>& pts, const Window& window, double cell_size)
    : pts_(pts), window_(window), cell_(std::max(cell_size, 1e-12)) {
  nx_ = std::max(1, static_cast<int>(std::ceil(window.width() / cell_)));
  ny_ = std::max(1, static_cast<int>(std::ceil(window.height() / cell_)));
  std::vector<int> counts(static_cast<std::size_t>(nx_) * ny_ + 1, 0);
  auto cell_of = [&](const Point& p) {
    int cx = std::min(nx_ - 1, std::max(0, static_cast<int>((p.x - window_.x0) / cell_)));
    int cy = std::min(ny_ - 1, std::max(0, static_cast<int>((p.y - window_.y0) / cell_)));
    return cy * nx_ + cx;
  };
  for (const auto& p : pts_) ++counts[cell_of(p) + 1];
  for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
  cell_start_ = counts;
  items_.resize(pts_.size());
  std::vector<int> cursor(counts.begin(), counts.end() - 1);
  for (int i = 0; i < static_cast<int>(pts_.size()); ++i) items_[cursor[cell_of(pts_[i])]++] = i;
}

void CellGrid::query_disk(Point center, double radius, std::vector<int>& out) const {
  const double r2 = radius * radius;
  int cx0 = static_cast<int>(std::floor((center.x - radius - window_.x0) / cell_));
  int cx1 = static_cast<int>(std::floor((center.x + radius - window_.x0) / cell_));
  int cy0 = static_cast<int>(std::floor((center.y - radius - window_.y0) / cell_));
  int cy1 = static_cast<int>(std::floor((center.y + radius - window_.y0) / cell_));
  cx0 = std::max(cx0, 0);
  cy0 = std::max(cy0, 0);
  cx1 = std::min(cx1, nx_ - 1);
  cy1 = std::min(cy1, ny_ - 1);
  for (int cy = cy0; cy <= cy1; ++cy) {
    for (int cx = cx0; cx <= cx1; ++cx) {
      const int c = cy * nx_ + cx;
      for (int k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
        const int i = items_[k];
        if (dist2(pts_[i], center) <= r2) out.push_back(i);
      }
    }
  }
}

}  // namespace rngperc
