#include "rngperc/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "rngperc/error.hpp"
#include "rngperc/predicates.hpp"

namespace rngperc {

namespace {

constexpr int kInf = -1;

struct BTri {
  int v[3];
  int nb[3];  // nb[i] across the edge opposite v[i]
};

class Builder {
 public:
  explicit Builder(const std::vector<Point>& pts) : pts_(pts) {}

  void run(const std::vector<int>& order) {
    bootstrap(order);
    for (std::size_t k = 3 + skipped_; k < order.size(); ++k) {
      if (used_[order[k]]) continue;
      insert(order[k]);
    }
  }

  Triangulation extract() const {
    Triangulation out;
    out.vertex_count = static_cast<int>(pts_.size());
    std::vector<int> remap(tris_.size(), -1);
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (alive_[t] && !is_ghost(static_cast<int>(t))) {
        remap[t] = static_cast<int>(out.tris.size());
        out.tris.push_back({});
      }
    }
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (remap[t] < 0) continue;
      auto& dst = out.tris[remap[t]];
      for (int i = 0; i < 3; ++i) {
        dst.v[i] = tris_[t].v[i];
        const int n = tris_[t].nb[i];
        dst.nb[i] = (n >= 0 && remap[n] >= 0) ? remap[n] : -1;
      }
    }
    return out;
  }

 private:
  const std::vector<Point>& pts_;
  std::vector<BTri> tris_;
  std::vector<std::uint8_t> alive_;
  std::vector<int> mark_;
  int epoch_ = 0;
  int hint_ = 0;
  std::size_t skipped_ = 0;
  std::vector<std::uint8_t> used_;
  std::uint64_t walk_state_ = 0x853c49e6748fea9bULL;

  // scratch for insertions
  std::vector<int> cavity_;
  struct BoundaryEdge {
    int u, w;
    int survivor;
    int survivor_slot;
  };
  std::vector<BoundaryEdge> boundary_;
  std::vector<std::pair<int, int>> by_first_, by_second_;

  bool is_ghost(int t) const {
    const BTri& tr = tris_[t];
    return tr.v[0] == kInf || tr.v[1] == kInf || tr.v[2] == kInf;
  }

  int new_tri(int a, int b, int c) {
    tris_.push_back({{a, b, c}, {-1, -1, -1}});
    alive_.push_back(1);
    mark_.push_back(0);
    return static_cast<int>(tris_.size()) - 1;
  }

  int slot_of_edge(int t, int u, int w) const {
    const BTri& tr = tris_[t];
    for (int i = 0; i < 3; ++i) {
      const int a = tr.v[(i + 1) % 3], b = tr.v[(i + 2) % 3];
      if ((a == u && b == w) || (a == w && b == u)) return i;
    }
    throw DegenerateInputError("delaunay: internal adjacency inconsistency");
  }

  void bootstrap(const std::vector<int>& order) {
    if (order.size() < 3) throw DegenerateInputError("delaunay: need at least 3 points");
    used_.assign(pts_.size(), 0);
    int a = order[0], b = order[1];
    int c = -1;
    std::size_t k = 2;
    int orient = 0;
    for (; k < order.size(); ++k) {
      orient = orient2d_sign(pts_[a], pts_[b], pts_[order[k]]);
      if (orient != 0) {
        c = order[k];
        break;
      }
      ++skipped_;
    }
    if (c < 0) throw DegenerateInputError("delaunay: all points collinear");
    if (orient < 0) std::swap(a, b);
    used_[a] = used_[b] = used_[c] = 1;

    const int t0 = new_tri(a, b, c);
    const int g0 = new_tri(c, b, kInf);  // across edge (b,c)
    const int g1 = new_tri(a, c, kInf);  // across edge (c,a)
    const int g2 = new_tri(b, a, kInf);  // across edge (a,b)
    tris_[t0].nb[0] = g0;
    tris_[t0].nb[1] = g1;
    tris_[t0].nb[2] = g2;
    tris_[g0].nb[slot_of_edge(g0, b, c)] = t0;
    tris_[g1].nb[slot_of_edge(g1, c, a)] = t0;
    tris_[g2].nb[slot_of_edge(g2, a, b)] = t0;
    tris_[g0].nb[slot_of_edge(g0, b, kInf)] = g2;
    tris_[g2].nb[slot_of_edge(g2, b, kInf)] = g0;
    tris_[g0].nb[slot_of_edge(g0, c, kInf)] = g1;
    tris_[g1].nb[slot_of_edge(g1, c, kInf)] = g0;
    tris_[g1].nb[slot_of_edge(g1, a, kInf)] = g2;
    tris_[g2].nb[slot_of_edge(g2, a, kInf)] = g1;

    // Re-insert any collinear points that were skipped during bootstrap.
    for (std::size_t j = 2; j < k; ++j) {
      if (!used_[order[j]]) {
        insert(order[j]);
        used_[order[j]] = 1;
      }
    }
    hint_ = t0;
  }

  // Generalized "p strictly inside circumcircle of t". For a ghost triangle
  // the circumcircle degenerates to the open half plane strictly beyond its
  // hull edge. Exact ties resolve to "outside" (the documented perturbation
  // rule), which keeps cocircular insertions deterministic and lets collinear
  // points extend the hull through a neighboring ghost instead.
  bool in_circum(int t, const Point& p) const {
    const BTri& tr = tris_[t];
    int k = -1;
    for (int i = 0; i < 3; ++i)
      if (tr.v[i] == kInf) k = i;
    if (k < 0) {
      return incircle_sign(pts_[tr.v[0]], pts_[tr.v[1]], pts_[tr.v[2]], p) > 0;
    }
    const int x = tr.v[(k + 1) % 3], y = tr.v[(k + 2) % 3];
    return orient2d_sign(pts_[x], pts_[y], p) > 0;
  }

  int locate(const Point& p) {
    int t = hint_;
    if (t < 0 || t >= static_cast<int>(tris_.size()) || !alive_[t]) t = first_alive_finite();
    const std::size_t cap = 4 * tris_.size() + 64;
    for (std::size_t step = 0; step < cap; ++step) {
      if (is_ghost(t)) {
        const BTri& g = tris_[t];
        int k = 0;
        while (g.v[k] != kInf) ++k;
        const int x = g.v[(k + 1) % 3], y = g.v[(k + 2) % 3];
        if (orient2d_sign(pts_[x], pts_[y], p) > 0) return t;  // p beyond this hull edge
        t = g.nb[k];  // step back inside and keep walking
        continue;
      }
      const BTri& tr = tris_[t];
      walk_state_ = walk_state_ * 6364136223846793005ULL + 1442695040888963407ULL;
      const int start = static_cast<int>((walk_state_ >> 59) % 3);
      bool moved = false;
      for (int j = 0; j < 3; ++j) {
        const int i = (start + j) % 3;
        const int u = tr.v[(i + 1) % 3], w = tr.v[(i + 2) % 3];
        if (orient2d_sign(pts_[u], pts_[w], p) < 0) {
          t = tr.nb[i];
          moved = true;
          break;
        }
      }
      if (!moved) return t;
    }
    // Extremely defensive fallback; the stochastic walk essentially never
    // fails with exact predicates.
    for (std::size_t t2 = 0; t2 < tris_.size(); ++t2) {
      if (!alive_[t2] || is_ghost(static_cast<int>(t2))) continue;
      const BTri& tr = tris_[t2];
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i)
        ok = orient2d_sign(pts_[tr.v[(i + 1) % 3]], pts_[tr.v[(i + 2) % 3]], p) >= 0;
      if (ok) return static_cast<int>(t2);
    }
    for (std::size_t t2 = 0; t2 < tris_.size(); ++t2)
      if (alive_[t2] && is_ghost(static_cast<int>(t2)) && in_circum(static_cast<int>(t2), p))
        return static_cast<int>(t2);
    throw DegenerateInputError("delaunay: point location failed");
  }

  void insert(int pi) {
    const Point p = pts_[pi];
    const int seed = locate(p);
    if (!in_circum(seed, p))
      throw DegenerateInputError("delaunay: degenerate location (duplicate or boundary tie)");

    // Flood the cavity of triangles whose circumcircle contains p.
    ++epoch_;
    cavity_.clear();
    boundary_.clear();
    cavity_.push_back(seed);
    mark_[seed] = epoch_;
    for (std::size_t head = 0; head < cavity_.size(); ++head) {
      const int t = cavity_[head];
      for (int i = 0; i < 3; ++i) {
        const int n = tris_[t].nb[i];
        if (mark_[n] == epoch_) continue;
        if (in_circum(n, p)) {
          mark_[n] = epoch_;
          cavity_.push_back(n);
        }
      }
    }
    for (const int t : cavity_) {
      for (int i = 0; i < 3; ++i) {
        const int n = tris_[t].nb[i];
        if (mark_[n] == epoch_) continue;
        const int u = tris_[t].v[(i + 1) % 3];
        const int w = tris_[t].v[(i + 2) % 3];
        boundary_.push_back({u, w, n, slot_of_edge(n, u, w)});
      }
    }

    // Replace the cavity with a fan around p.
    by_first_.clear();
    by_second_.clear();
    const int base = static_cast<int>(tris_.size());
    for (std::size_t k = 0; k < boundary_.size(); ++k) {
      const auto& e = boundary_[k];
      if (e.u != kInf && e.w != kInf) {
        if (orient2d_sign(pts_[e.u], pts_[e.w], p) <= 0)
          throw DegenerateInputError(
              "delaunay: exact collinearity on the hull is not resolvable");
      }
      const int t = new_tri(e.u, e.w, pi);
      tris_[t].nb[2] = e.survivor;
      tris_[e.survivor].nb[e.survivor_slot] = t;
      by_first_.emplace_back(e.u, t);
      by_second_.emplace_back(e.w, t);
    }
    auto find_first = [&](int v) {
      for (const auto& [key, t] : by_first_)
        if (key == v) return t;
      throw DegenerateInputError("delaunay: cavity boundary is not a single loop");
    };
    for (int t = base; t < static_cast<int>(tris_.size()); ++t) {
      // edge (w, p) borders the fan triangle whose first vertex is w,
      // edge (p, u) borders the one whose second vertex is u
      tris_[t].nb[0] = find_first(tris_[t].v[1]);
      int prev = -1;
      for (const auto& [key, tt] : by_second_)
        if (key == tris_[t].v[0]) prev = tt;
      if (prev < 0) throw DegenerateInputError("delaunay: cavity boundary is not a single loop");
      tris_[t].nb[1] = prev;
    }
    for (const int t : cavity_) alive_[t] = 0;
    hint_ = base;
  }

  int first_alive_finite() const {
    for (std::size_t t = 0; t < tris_.size(); ++t)
      if (alive_[t] && !is_ghost(static_cast<int>(t))) return static_cast<int>(t);
    throw DegenerateInputError("delaunay: no live triangles");
  }
};

// Serpentine cell order keeps successive insertions spatially close, so the
// walk-based point location stays O(1) on average.
std::vector<int> spatial_order(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (n < 16) return order;
  double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
  for (const auto& p : pts) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const int g = std::max(1, static_cast<int>(std::sqrt(n / 4.0)));
  const double sx = (maxx > minx) ? g / (maxx - minx) : 0.0;
  const double sy = (maxy > miny) ? g / (maxy - miny) : 0.0;
  std::vector<std::int64_t> key(n);
  for (int i = 0; i < n; ++i) {
    int cx = std::min(g - 1, static_cast<int>((pts[i].x - minx) * sx));
    int cy = std::min(g - 1, static_cast<int>((pts[i].y - miny) * sy));
    key[i] = static_cast<std::int64_t>(cy) * g + ((cy & 1) ? (g - 1 - cx) : cx);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return key[a] < key[b]; });
  return order;
}

void reject_duplicates(const std::vector<Point>& pts) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pts[a].x != pts[b].x) return pts[a].x < pts[b].x;
    return pts[a].y < pts[b].y;
  });
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (pts[idx[i - 1]].x == pts[idx[i]].x && pts[idx[i - 1]].y == pts[idx[i]].y)
      throw DegenerateInputError("delaunay: duplicate points");
  }
}

}  // namespace

Triangulation delaunay_triangulate(const std::vector<Point>& pts) {
  if (pts.size() < 3) throw DegenerateInputError("delaunay: need at least 3 points");
  reject_duplicates(pts);
  Builder b(pts);
  b.run(spatial_order(pts));
  return b.extract();
}

}  // namespace rngperc
