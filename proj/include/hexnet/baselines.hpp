#pragma once

// Comparison algorithms: exact minimum-AN search over the field's cells, the
// disk-model steinerized MST (static and recomputed), and the same bead
// scheme restricted to lattice hops.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hexnet/egdo.hpp"
#include "hexnet/graph.hpp"
#include "hexnet/hcs.hpp"
#include "hexnet/placement.hpp"

namespace hexnet {

// ---------------------------------------------------------------------------
// Feasible cells

/// Area of a hexagonal cell of edge r.
inline double cell_area(double r) { return 1.5 * std::numbers::sqrt3 * r * r; }

/// ceil(area / cell_area) - G, floored at zero.
inline std::int64_t feasible_count_formula(double area, double r, std::size_t g) {
  const auto cells = static_cast<std::int64_t>(std::ceil(area / cell_area(r)));
  return std::max<std::int64_t>(0, cells - static_cast<std::int64_t>(g));
}

struct FeasibleMatrix {
  std::vector<HexCoord> rows;  // lexicographic order
  std::int64_t count = 0;      // closed-form estimate of rows.size()
};

/// Cells whose centres lie inside the field rectangle [0,W]x[0,H], minus the
/// cells holding a gateway.
inline FeasibleMatrix build_feasible_matrix(const Scenario& s, const HcsFrame& f) {
  if (!(s.field_w > 0.0) || !(s.field_h > 0.0)) {
    throw std::invalid_argument("build_feasible_matrix: field must be positive");
  }
  std::set<HexCoord> occupied;
  for (const Point& c : s.clusters) occupied.insert(from_cartesian(c, f));

  const double s3r = std::numbers::sqrt3 * f.r;
  const auto ylo = static_cast<std::int64_t>(std::floor((0.0 - f.origin.y) / (1.5 * f.r))) - 1;
  const auto yhi = static_cast<std::int64_t>(std::ceil((s.field_h - f.origin.y) / (1.5 * f.r))) + 1;

  FeasibleMatrix fm;
  for (std::int64_t y = ylo; y <= yhi; ++y) {
    const double half = static_cast<double>(y) / 2.0;
    const auto xlo = static_cast<std::int64_t>(std::floor((0.0 - f.origin.x) / s3r - half)) - 1;
    const auto xhi = static_cast<std::int64_t>(std::ceil((s.field_w - f.origin.x) / s3r - half)) + 1;
    for (std::int64_t x = xlo; x <= xhi; ++x) {
      const HexCoord c{x, y};
      const Point p = to_cartesian(c, f);
      if (p.x < 0.0 || p.y < 0.0 || p.x > s.field_w || p.y > s.field_h) continue;
      if (occupied.count(c) != 0) continue;
      fm.rows.push_back(c);
    }
  }
  std::sort(fm.rows.begin(), fm.rows.end());
  fm.count = feasible_count_formula(s.field_area(), s.r, s.clusters.size());
  return fm;
}

namespace detail {

inline double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Point a, Point b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

inline double segment_distance(Point p, Point a, Point b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

// Distance from p to a counter-clockwise convex polygon (zero inside).
inline double hull_distance(Point p, const std::vector<Point>& hull) {
  if (hull.size() == 1) return euclidean_distance(p, hull[0]);
  if (hull.size() == 2) return segment_distance(p, hull[0], hull[1]);
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point a = hull[i];
    const Point b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < 0) inside = false;
    best = std::min(best, segment_distance(p, a, b));
  }
  return inside ? 0.0 : best;
}

}  // namespace detail

/// Keeps cells within one AN range R of the convex hull of the gateways.
inline void prune_to_hull(FeasibleMatrix& fm, std::span<const NodeRecord> gateways,
                          const HcsFrame& f) {
  std::vector<Point> pts;
  for (const auto& g : gateways) pts.push_back(g.cart);
  const auto hull = detail::convex_hull(pts);
  std::erase_if(fm.rows, [&](HexCoord c) {
    return detail::hull_distance(to_cartesian(c, f), hull) > f.R();
  });
}

// ---------------------------------------------------------------------------
// Exact search

struct ExhaustiveOptions {
  bool prune_hull = false;
  std::uint64_t budget = 20'000'000;  // search-node expansions
};

enum class SearchStatus { optimal, budget_exceeded };

struct ExhaustiveResult {
  SearchStatus status = SearchStatus::optimal;
  Placement placement;
  int kappa = 0;                   // minimum AN count when optimal
  std::uint64_t expansions = 0;
  std::size_t feasible_cells = 0;
  std::int64_t feasible_formula = 0;
};

namespace detail {

class ExactSearch {
 public:
  ExactSearch(std::vector<NodeRecord> gateways, std::vector<HexCoord> cells, int n,
              std::uint64_t budget)
      : gw_(std::move(gateways)), cells_(std::move(cells)), n_(n), budget_(budget) {
    const std::size_t g = gw_.size();
    const std::size_t m = cells_.size();
    adj_.resize(g + m);
    for (std::size_t i = 0; i < g + m; ++i) {
      for (std::size_t j = i + 1; j < g + m; ++j) {
        if (i < g && j < g) continue;
        if (hexagons_linked(at(i), at(j), n_)) {
          if (j >= g) adj_[i].push_back(static_cast<int>(j - g));
          if (i >= g) adj_[j].push_back(static_cast<int>(i - g));
        }
      }
    }
    hop_ = max_hop_length(n_);
  }

  // Minimum AN set at the smallest feasible size, or nullopt on budget.
  std::optional<std::vector<int>> solve() {
    std::vector<int> none;
    if (all_connected(none)) return none;
    for (std::size_t kappa = 1; kappa <= cells_.size(); ++kappa) {
      best_.reset();
      seen_.clear();
      std::vector<int> chosen;
      if (!dfs(chosen, kappa)) return std::nullopt;
      if (best_) return best_;
    }
    return std::nullopt;
  }

  std::uint64_t expansions() const { return expansions_; }

 private:
  HexCoord at(std::size_t idx) const {
    return idx < gw_.size() ? gw_[idx].pos : cells_[idx - gw_.size()];
  }

  static constexpr std::int64_t max_hop_length(int n) { return 16 * std::int64_t{n} + 9; }

  // Marks the nodes (gateways first, then chosen) reachable from gateway 0.
  std::vector<char> reach(const std::vector<int>& chosen) const {
    const std::size_t g = gw_.size();
    const std::size_t total = g + chosen.size();
    const auto pos = [&](std::size_t i) { return i < g ? gw_[i].pos : cells_[chosen[i - g]]; };
    std::vector<char> in(total, 0);
    std::vector<std::size_t> stack{0};
    in[0] = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < total; ++w) {
        if (!in[w] && hexagons_linked(pos(v), pos(w), n_)) {
          in[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return in;
  }

  bool all_connected(const std::vector<int>& chosen) const {
    const auto in = reach(chosen);
    return std::all_of(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(gw_.size()),
                       [](char c) { return c != 0; });
  }

  // Fewest ANs any completion needs: shortest path from the root component to
  // each outside gateway, where other gateways are free stepping stones and a
  // gap of D cells needs at least ceil(D/hop) - 1 ANs.
  std::int64_t lower_bound(const std::vector<int>& chosen, const std::vector<char>& in) const {
    const std::size_t g = gw_.size();
    std::vector<std::size_t> outside;
    for (std::size_t i = 0; i < g; ++i) {
      if (!in[i]) outside.push_back(i);
    }
    if (outside.empty()) return 0;
    const auto cost = [&](std::int64_t d) {
      return std::max<std::int64_t>(0, (d + hop_ - 1) / hop_ - 1);
    };
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> dist(outside.size(), kInf);
    for (std::size_t a = 0; a < outside.size(); ++a) {
      const HexCoord pa = gw_[outside[a]].pos;
      for (std::size_t i = 0; i < in.size(); ++i) {
        if (!in[i]) continue;
        const HexCoord pi = i < g ? gw_[i].pos : cells_[chosen[i - g]];
        dist[a] = std::min(dist[a], cost(hex_distance(pa, pi)));
      }
    }
    std::vector<char> done(outside.size(), 0);
    std::int64_t worst = 0;
    for (std::size_t it = 0; it < outside.size(); ++it) {
      std::size_t u = outside.size();
      for (std::size_t a = 0; a < outside.size(); ++a) {
        if (!done[a] && (u == outside.size() || dist[a] < dist[u])) u = a;
      }
      done[u] = 1;
      worst = std::max(worst, dist[u]);
      for (std::size_t a = 0; a < outside.size(); ++a) {
        if (done[a]) continue;
        const auto d = cost(hex_distance(gw_[outside[u]].pos, gw_[outside[a]].pos));
        dist[a] = std::min(dist[a], dist[u] + d);
      }
    }
    return worst;
  }

  // Returns false when the budget runs out.
  bool dfs(std::vector<int>& chosen, std::size_t kappa) {
    if (++expansions_ > budget_) return false;
    const auto in = reach(chosen);
    const std::size_t g = gw_.size();
    const bool done = std::all_of(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(g),
                                  [](char c) { return c != 0; });
    if (done) {
      if (chosen.size() == kappa && (!best_ || chosen < *best_)) best_ = chosen;
      return true;
    }
    const std::size_t left = kappa - chosen.size();
    if (left == 0) return true;
    if (lower_bound(chosen, in) > static_cast<std::int64_t>(left)) return true;

    std::vector<int> frontier;
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (!in[i]) continue;
      const auto& nbrs = adj_[i < g ? i : g + static_cast<std::size_t>(chosen[i - g])];
      frontier.insert(frontier.end(), nbrs.begin(), nbrs.end());
    }
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());

    for (const int c : frontier) {
      if (std::binary_search(chosen.begin(), chosen.end(), c)) continue;
      std::vector<int> next = chosen;
      next.insert(std::lower_bound(next.begin(), next.end(), c), c);
      if (!seen_.insert(next).second) continue;
      if (!dfs(next, kappa)) return false;
    }
    return true;
  }

  std::vector<NodeRecord> gw_;
  std::vector<HexCoord> cells_;
  int n_;
  std::uint64_t budget_;
  std::int64_t hop_ = 0;
  std::vector<std::vector<int>> adj_;  // node -> linked candidate cells
  std::set<std::vector<int>> seen_;
  std::optional<std::vector<int>> best_;
  std::uint64_t expansions_ = 0;
};

}  // namespace detail

/// Smallest set of intermediate ANs on the field's cells that links every
/// gateway. Sizes are tried from 0 upward; at each size every connected
/// candidate set grown from gateway 0 is visited (with a gap lower bound), and
/// the lexicographically smallest success is reported.
inline ExhaustiveResult exhaustive_search(const Scenario& s, const ExhaustiveOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  const HcsFrame frame = make_frame(s);
  auto gateways = snapped_gateways(s, frame);
  FeasibleMatrix fm = build_feasible_matrix(s, frame);
  if (opt.prune_hull) prune_to_hull(fm, gateways, frame);

  ExhaustiveResult res;
  res.feasible_cells = fm.rows.size();
  res.feasible_formula = fm.count;

  detail::ExactSearch search(gateways, fm.rows, s.n, opt.budget);
  const auto found = search.solve();
  res.expansions = search.expansions();

  Placement& p = res.placement;
  p.algorithm = "exhaustive";
  p.model = LinkModel::hcs;
  p.frame = frame;
  p.nodes = gateways;
  if (!found) {
    res.status = SearchStatus::budget_exceeded;
    res.kappa = -1;
  } else {
    for (const int c : *found) {
      const auto id = static_cast<NodeId>(p.nodes.size());
      p.nodes.push_back({id, NodeKind::intermediate, fm.rows[static_cast<std::size_t>(c)],
                         to_cartesian(fm.rows[static_cast<std::size_t>(c)], frame)});
    }
    res.kappa = static_cast<int>(found->size());
    p.eta = res.kappa;
    const auto tree = kruskal_mst(std::span<const NodeRecord>(p.nodes), LinkAwareWeight{s.n});
    for (const auto& e : tree.rows()) p.edges.push_back({e.u, e.v, static_cast<double>(e.len)});
  }
  p.iterations = res.kappa < 0 ? 0 : res.kappa;
  p.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

// ---------------------------------------------------------------------------
// Disk-model steinerized MST

struct PointEdge {
  int u = 0;
  int v = 0;
  double len = 0.0;
};

/// Euclidean MST, edges ascending by (length, min id, max id).
inline std::vector<PointEdge> euclidean_mst(std::span<const Point> pts) {
  std::vector<PointEdge> all;
  all.reserve(pts.size() * (pts.size() > 0 ? pts.size() - 1 : 0) / 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      all.push_back({static_cast<int>(i), static_cast<int>(j), euclidean_distance(pts[i], pts[j])});
    }
  }
  std::sort(all.begin(), all.end(), [](const PointEdge& a, const PointEdge& b) {
    return std::tie(a.len, a.u, a.v) < std::tie(b.len, b.u, b.v);
  });
  std::vector<PointEdge> tree;
  DisjointSets sets(pts.size());
  for (const auto& e : all) {
    if (tree.size() + 1 >= pts.size()) break;
    if (sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) tree.push_back(e);
  }
  return tree;
}

/// Relays needed so that every piece of an edge of length L is at most d.
inline int relays_needed(double length, double d) {
  if (length <= d) return 0;
  auto m = static_cast<int>(std::ceil(length / d)) - 1;
  while (length / static_cast<double>(m + 1) > d) ++m;
  return m;
}

namespace detail {

struct DiskBuilder {
  HcsFrame frame;
  std::vector<NodeRecord> nodes;
  std::vector<Point> pts;

  explicit DiskBuilder(const Scenario& s) : frame(make_frame(s)) {
    for (std::size_t i = 0; i < s.clusters.size(); ++i) add(s.clusters[i], NodeKind::gateway);
  }

  int add(Point p, NodeKind kind) {
    const auto id = static_cast<NodeId>(nodes.size());
    nodes.push_back({id, kind, from_cartesian(p, frame), p});
    pts.push_back(p);
    return id;
  }

  // Evenly spaced relays on segment (u, v); returns the chain's edges.
  std::vector<PointEdge> bead(int u, int v, double d) {
    const Point a = pts[static_cast<std::size_t>(u)];
    const Point b = pts[static_cast<std::size_t>(v)];
    const double length = euclidean_distance(a, b);
    const int m = relays_needed(length, d);
    std::vector<PointEdge> chain;
    int prev = u;
    for (int i = 1; i <= m; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(m + 1);
      const int id = add({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}, NodeKind::intermediate);
      chain.push_back({prev, id, euclidean_distance(pts[static_cast<std::size_t>(prev)], pts.back())});
      prev = id;
    }
    chain.push_back({prev, v, euclidean_distance(pts[static_cast<std::size_t>(prev)], b)});
    return chain;
  }

  Placement finish(std::string name, std::vector<PointEdge> edges, int iterations,
                   std::chrono::steady_clock::time_point t0) const {
    Placement p;
    p.algorithm = std::move(name);
    p.model = LinkModel::disk;
    p.frame = frame;
    p.nodes = nodes;
    for (const auto& e : edges) p.edges.push_back({e.u, e.v, e.len});
    for (const auto& v : nodes) p.eta += v.kind == NodeKind::intermediate ? 1 : 0;
    p.iterations = iterations;
    p.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return p;
  }
};

}  // namespace detail

/// Static steinerized MST: one Euclidean MST over the clusters, each edge
/// longer than d = 2R split into equal pieces by ceil(L/d) - 1 relays.
inline Placement sta_smt(const Scenario& s) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::DiskBuilder b(s);
  const double d = 2.0 * b.frame.R();
  const auto mst = euclidean_mst(std::span<const Point>(b.pts));
  std::vector<PointEdge> edges;
  for (const auto& e : mst) {
    const auto chain = b.bead(e.u, e.v, d);
    edges.insert(edges.end(), chain.begin(), chain.end());
  }
  return b.finish("stasmt", std::move(edges), 1, t0);
}

/// Dynamic steinerized MST: edges are taken one at a time in ascending
/// order, and the Euclidean MST over all current nodes is recomputed after
/// each one before the next unvisited edge is chosen.
inline Placement dyn_smt(const Scenario& s) {
  const auto t0 = std::chrono::steady_clock::now();
  detail::DiskBuilder b(s);
  const double d = 2.0 * b.frame.R();
  std::set<std::pair<int, int>> visited;
  const auto key = [](int u, int v) { return std::pair(std::min(u, v), std::max(u, v)); };

  int recomputes = 0;
  auto mst = euclidean_mst(std::span<const Point>(b.pts));
  while (true) {
    const auto next = std::find_if(mst.begin(), mst.end(), [&](const PointEdge& e) {
      return visited.count(key(e.u, e.v)) == 0;
    });
    if (next == mst.end()) break;
    visited.insert(key(next->u, next->v));
    if (next->len > d) {
      for (const auto& c : b.bead(next->u, next->v, d)) visited.insert(key(c.u, c.v));
    }
    mst = euclidean_mst(std::span<const Point>(b.pts));
    ++recomputes;
  }
  return b.finish("dynsmt", std::move(mst), recomputes, t0);
}

/// Bead scheme on the lattice: a static HCS-distance MST over the snapped
/// gateways; every unlinked edge is walked from one end with feasible hops,
/// each hop chosen to advance furthest toward the far end.
inline Placement smt_in_hcs(const Scenario& s) {
  const auto t0 = std::chrono::steady_clock::now();
  PlacementState st;
  st.frame = make_frame(s);
  st.nodes = snapped_gateways(s, st.frame);
  const int n = s.n;
  const auto offsets = feasible_hop_offsets(n);
  const auto mst = kruskal_mst(std::span<const NodeRecord>(st.nodes));

  std::vector<TreeEdge> edges;
  for (const auto& e : mst.rows()) {
    NodeId cur = e.u;
    const HexCoord goal = st.pos(e.v);
    while (!hexagons_linked(st.pos(cur), goal, n)) {
      const Point dir = to_cartesian(goal - st.pos(cur), st.frame.r);
      std::optional<std::pair<double, HexVec>> best;
      for (const HexVec& o : offsets) {
        const Point step = to_cartesian(o, st.frame.r);
        const double progress = step.x * dir.x + step.y * dir.y;
        if (!best || progress > best->first || (progress == best->first && o < best->second)) {
          best = std::pair(progress, o);
        }
      }
      const NodeId next = st.add_intermediate(st.pos(cur) + best->second);
      edges.push_back({cur, next, static_cast<double>(hex_distance(st.pos(cur), st.pos(next)))});
      cur = next;
    }
    edges.push_back({cur, e.v, static_cast<double>(hex_distance(st.pos(cur), goal))});
  }

  Placement p;
  p.algorithm = "smt-hcs";
  p.model = LinkModel::hcs;
  p.frame = st.frame;
  p.nodes = st.nodes;
  p.edges = std::move(edges);
  for (const auto& v : p.nodes) p.eta += v.kind == NodeKind::intermediate ? 1 : 0;
  p.iterations = 1;
  p.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return p;
}

}  // namespace hexnet
