#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexnet/graph.hpp"
#include "hexnet/hcs.hpp"

namespace hexnet {

/// A field with pre-deployed clusters. Lengths are in meters.
struct Scenario {
  double field_w = 0.0;
  double field_h = 0.0;
  double r = 50.0;
  int n = 0;
  std::vector<Point> clusters;
  std::uint64_t seed = 0;

  std::int64_t lambda() const { return lambda_of(n); }
  double R() const { return static_cast<double>(lambda()) * r; }
  double field_area() const { return field_w * field_h; }
};

/// How a placement's links are judged.
enum class LinkModel {
  hcs,   // AN hexagons share an edge or overlap
  disk,  // centres within 2R
};

struct TreeEdge {
  NodeId u = 0;
  NodeId v = 0;
  double length = 0.0;  // HCS cells for hcs placements, meters for disk ones
};

/// Output of any placement algorithm. Gateways come first, in cluster order,
/// followed by intermediate ANs in placement order.
struct Placement {
  std::string algorithm;
  LinkModel model = LinkModel::hcs;
  HcsFrame frame;
  std::vector<NodeRecord> nodes;
  std::vector<TreeEdge> edges;
  int eta = 0;
  int iterations = 0;
  double wall_ms = 0.0;

  std::size_t gateway_count() const {
    std::size_t g = 0;
    for (const auto& v : nodes) g += v.kind == NodeKind::gateway ? 1 : 0;
    return g;
  }
};

/// Lattice anchored at the centre of geometry of the clusters.
inline HcsFrame make_frame(const Scenario& s) {
  if (s.clusters.empty()) throw std::invalid_argument("scenario has no clusters");
  Point c;
  for (const Point& p : s.clusters) {
    c.x += p.x;
    c.y += p.y;
  }
  c.x /= static_cast<double>(s.clusters.size());
  c.y /= static_cast<double>(s.clusters.size());
  return HcsFrame::make(c, s.r, s.n);
}

/// Gateway records with positions snapped to the nearest cell centre.
inline std::vector<NodeRecord> snapped_gateways(const Scenario& s, const HcsFrame& f) {
  std::vector<NodeRecord> out;
  out.reserve(s.clusters.size());
  for (std::size_t i = 0; i < s.clusters.size(); ++i) {
    const HexCoord c = from_cartesian(s.clusters[i], f);
    out.push_back({static_cast<NodeId>(i), NodeKind::gateway, c, to_cartesian(c, f)});
  }
  return out;
}

/// Every node can reach every other through links of the placement's model.
inline bool placement_connected(const Placement& p) {
  const std::size_t n = p.nodes.size();
  if (n <= 1) return true;
  DisjointSets sets(n);
  const double d2 = 4.0 * p.frame.R() * p.frame.R();
  std::size_t parts = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      bool link;
      if (p.model == LinkModel::hcs) {
        link = hexagons_linked(p.nodes[i].pos, p.nodes[j].pos, p.frame.n);
      } else {
        const double dx = p.nodes[i].cart.x - p.nodes[j].cart.x;
        const double dy = p.nodes[i].cart.y - p.nodes[j].cart.y;
        link = dx * dx + dy * dy <= d2;
      }
      if (link && sets.unite(i, j)) --parts;
    }
  }
  return parts == 1;
}

/// Every reported tree edge is itself a link under the placement's model.
inline bool tree_edges_are_links(const Placement& p) {
  const double R2 = 2.0 * p.frame.R();
  for (const auto& e : p.edges) {
    const auto& a = p.nodes.at(static_cast<std::size_t>(e.u));
    const auto& b = p.nodes.at(static_cast<std::size_t>(e.v));
    if (p.model == LinkModel::hcs) {
      if (!hexagons_linked(a.pos, b.pos, p.frame.n)) return false;
    } else if (euclidean_distance(a.cart, b.cart) > R2) {
      return false;
    }
  }
  return true;
}

}  // namespace hexnet
