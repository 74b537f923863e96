#pragma once

// Reference implementations used only by the tests. Each works from first
// principles (plane geometry, breadth-first search, exhaustive enumeration)
// rather than from the library's own formulas.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <queue>
#include <set>
#include <vector>

#include "hexnet/hcs.hpp"

namespace oracle {

using hexnet::HexCoord;
using hexnet::HexVec;
using hexnet::Point;

/// Centre of cell c in units of r, computed from the two axis unit vectors:
/// x axis at angle 0, y axis at angle pi/3, neighbours sqrt(3) apart.
inline Point cell_centre(HexVec d) {
  const double s3 = std::sqrt(3.0);
  const double ax = s3, ay = 0.0;
  const double bx = s3 * std::cos(std::numbers::pi / 3), by = s3 * std::sin(std::numbers::pi / 3);
  return {static_cast<double>(d.dx) * ax + static_cast<double>(d.dy) * bx,
          static_cast<double>(d.dx) * ay + static_cast<double>(d.dy) * by};
}

/// Vertices of a hexagon with vertical left and right edges (circumradius
/// `rad`) centred at c.
inline std::array<Point, 6> hexagon(Point c, double rad) {
  std::array<Point, 6> v{};
  for (int k = 0; k < 6; ++k) {
    const double a = std::numbers::pi / 6 + k * std::numbers::pi / 3;
    v[static_cast<std::size_t>(k)] = {c.x + rad * std::cos(a), c.y + rad * std::sin(a)};
  }
  return v;
}

inline double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Two AN hexagons (edge lambda, lengths in units of r) centred 0 and at the
/// cell offset d have a common boundary segment of positive length, with the
/// hexagons on opposite sides of it.
inline bool hexagons_share_edge(HexVec d, std::int64_t lambda) {
  const double rad = static_cast<double>(lambda);
  const Point ca{0, 0};
  const Point cb = cell_centre(d);
  const auto A = hexagon(ca, rad);
  const auto B = hexagon(cb, rad);
  const double tol = 1e-7 * rad;
  for (int i = 0; i < 6; ++i) {
    const Point a0 = A[static_cast<std::size_t>(i)], a1 = A[static_cast<std::size_t>((i + 1) % 6)];
    const double ux = a1.x - a0.x, uy = a1.y - a0.y;
    const double len = std::hypot(ux, uy);
    for (int j = 0; j < 6; ++j) {
      const Point b0 = B[static_cast<std::size_t>(j)], b1 = B[static_cast<std::size_t>((j + 1) % 6)];
      if (std::abs(cross(a0, a1, b0)) > tol * len || std::abs(cross(a0, a1, b1)) > tol * len) continue;
      const double t0 = ((b0.x - a0.x) * ux + (b0.y - a0.y) * uy) / len;
      const double t1 = ((b1.x - a0.x) * ux + (b1.y - a0.y) * uy) / len;
      const double lo = std::max(0.0, std::min(t0, t1));
      const double hi = std::min(len, std::max(t0, t1));
      if (hi - lo <= tol) continue;
      const double sa = cross(a0, a1, ca), sb = cross(a0, a1, cb);
      if (sa * sb < 0) return true;
    }
  }
  return false;
}

/// Closed hexagons intersect: separating axis test over the edge normals of
/// both (identical here), with touching counted as intersecting.
inline bool hexagons_intersect(HexVec d, std::int64_t lambda) {
  const double rad = static_cast<double>(lambda);
  const auto A = hexagon({0, 0}, rad);
  const auto B = hexagon(cell_centre(d), rad);
  const double tol = 1e-7 * rad;
  for (int i = 0; i < 6; ++i) {
    const Point a0 = A[static_cast<std::size_t>(i)], a1 = A[static_cast<std::size_t>((i + 1) % 6)];
    const double nx = a1.y - a0.y, ny = -(a1.x - a0.x);
    const double nl = std::hypot(nx, ny);
    double amin = std::numeric_limits<double>::infinity(), amax = -amin;
    double bmin = amin, bmax = -amin;
    for (const auto& p : A) {
      const double s = (p.x * nx + p.y * ny) / nl;
      amin = std::min(amin, s);
      amax = std::max(amax, s);
    }
    for (const auto& p : B) {
      const double s = (p.x * nx + p.y * ny) / nl;
      bmin = std::min(bmin, s);
      bmax = std::max(bmax, s);
    }
    if (bmin > amax + tol || amin > bmax + tol) return false;
  }
  return true;
}

/// Shared-edge offsets found by scanning a box of cell offsets.
inline std::set<HexVec> brute_force_offsets(int n) {
  const std::int64_t lambda = 12 * std::int64_t{n} + 7;
  const std::int64_t lim = 3 * lambda;
  std::set<HexVec> out;
  for (std::int64_t dx = -lim; dx <= lim; ++dx) {
    for (std::int64_t dy = -lim; dy <= lim; ++dy) {
      if (hexagons_share_edge({dx, dy}, lambda)) out.insert({dx, dy});
    }
  }
  return out;
}

/// Lattice distance by breadth-first search over the six neighbour steps.
inline std::map<HexVec, std::int64_t> bfs_distances(std::int64_t radius) {
  const HexVec steps[6] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};
  std::map<HexVec, std::int64_t> dist{{{0, 0}, 0}};
  std::queue<HexVec> q;
  q.push({0, 0});
  while (!q.empty()) {
    const HexVec v = q.front();
    q.pop();
    const auto dv = dist[v];
    if (dv == radius) continue;
    for (const auto& s : steps) {
      const HexVec w = v + s;
      if (dist.emplace(w, dv + 1).second) q.push(w);
    }
  }
  return dist;
}

/// Minimum total weight over every labelled spanning tree of k nodes, by
/// decoding all k^(k-2) Pruefer sequences.
inline std::int64_t brute_force_mst_weight(
    std::size_t k, const std::function<std::int64_t(std::size_t, std::size_t)>& w) {
  if (k <= 1) return 0;
  if (k == 2) return w(0, 1);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::size_t> seq(k - 2, 0);
  while (true) {
    std::vector<int> degree(k, 1);
    for (auto s : seq) ++degree[s];
    std::int64_t total = 0;
    std::vector<int> deg = degree;
    for (auto s : seq) {
      std::size_t leaf = 0;
      while (deg[leaf] != 1) ++leaf;
      total += w(leaf, s);
      --deg[leaf];
      --deg[s];
    }
    std::size_t u = k, v = k;
    for (std::size_t i = 0; i < k; ++i) {
      if (deg[i] == 1) (u == k ? u : v) = i;
    }
    total += w(u, v);
    best = std::min(best, total);

    std::size_t pos = 0;
    while (pos < seq.size() && ++seq[pos] == k) seq[pos++] = 0;
    if (pos == seq.size()) break;
  }
  return best;
}

/// Number of connected components of `count` nodes under `linked`.
inline int components(std::size_t count, const std::function<bool(std::size_t, std::size_t)>& linked) {
  std::vector<int> comp(count, -1);
  int c = 0;
  for (std::size_t s = 0; s < count; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (std::size_t w = 0; w < count; ++w) {
        if (comp[w] < 0 && linked(v, w)) {
          comp[w] = c;
          stack.push_back(w);
        }
      }
    }
    ++c;
  }
  return c;
}

/// Smallest k and the lexicographically first k-subset of `cells` that,
/// together with `gateways`, forms one component; scans subsets in order.
inline std::pair<int, std::vector<int>> brute_force_min_relays(
    const std::vector<HexCoord>& gateways, const std::vector<HexCoord>& cells, int n, int kmax) {
  const std::int64_t lambda = 12 * std::int64_t{n} + 7;
  const auto link = [&](HexCoord a, HexCoord b) {
    return hexagons_intersect(HexVec{b.x - a.x, b.y - a.y}, lambda);
  };
  for (int k = 0; k <= kmax; ++k) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (k > static_cast<int>(cells.size())) break;
    while (true) {
      std::vector<HexCoord> all = gateways;
      for (int i : idx) all.push_back(cells[static_cast<std::size_t>(i)]);
      if (components(all.size(), [&](std::size_t a, std::size_t b) { return link(all[a], all[b]); }) == 1) {
        return {k, idx};
      }
      int pos = k - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] ==
                             static_cast<int>(cells.size()) - k + pos) {
        --pos;
      }
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < k; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return {-1, {}};
}

}  // namespace oracle
