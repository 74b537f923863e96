#pragma once

// Spanning trees over HCS nodes: the length-sorted edge matrix, Kruskal,
// terminal detection and the line-graph walk that yields adjustable nodes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "hexnet/hcs.hpp"

namespace hexnet {

using NodeId = int;

enum class NodeKind { gateway, intermediate };

struct NodeRecord {
  NodeId id = 0;
  NodeKind kind = NodeKind::gateway;
  HexCoord pos;
  Point cart;
};

/// Thrown when an internal structural invariant does not hold.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

struct EdgeRow {
  NodeId u = 0;
  NodeId v = 0;
  std::int64_t len = 0;

  NodeId lo() const { return std::min(u, v); }
  NodeId hi() const { return std::max(u, v); }
  bool joins(NodeId a, NodeId b) const {
    return (u == a && v == b) || (u == b && v == a);
  }
  bool touches(NodeId a) const { return u == a || v == a; }
  bool operator==(const EdgeRow&) const = default;
};

/// Tree edges kept in ascending order of (len, min id, max id).
class EdgeMatrix {
 public:
  EdgeMatrix() = default;

  const std::vector<EdgeRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  const EdgeRow& back() const { return rows_.back(); }

  void insert(EdgeRow row) {
    const auto pos = std::upper_bound(rows_.begin(), rows_.end(), row, before);
    rows_.insert(pos, row);
  }

  bool erase(NodeId a, NodeId b) {
    const auto it = std::find_if(rows_.begin(), rows_.end(),
                                 [&](const EdgeRow& e) { return e.joins(a, b); });
    if (it == rows_.end()) return false;
    rows_.erase(it);
    return true;
  }

  bool contains(NodeId a, NodeId b) const {
    return std::any_of(rows_.begin(), rows_.end(),
                       [&](const EdgeRow& e) { return e.joins(a, b); });
  }

  int degree(NodeId a) const {
    return static_cast<int>(std::count_if(
        rows_.begin(), rows_.end(), [&](const EdgeRow& e) { return e.touches(a); }));
  }

  std::int64_t total_length() const {
    std::int64_t s = 0;
    for (const auto& e : rows_) s += e.len;
    return s;
  }

  bool is_sorted() const { return std::is_sorted(rows_.begin(), rows_.end(), before); }

  /// Adjacency lists built from the current rows.
  std::map<NodeId, std::vector<NodeId>> adjacency() const {
    std::map<NodeId, std::vector<NodeId>> adj;
    for (const auto& e : rows_) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    return adj;
  }

  static bool before(const EdgeRow& a, const EdgeRow& b) {
    return std::tuple(a.len, a.lo(), a.hi()) < std::tuple(b.len, b.lo(), b.hi());
  }

 private:
  std::vector<EdgeRow> rows_;
};

struct HexLengthWeight {
  std::int64_t operator()(const NodeRecord& a, const NodeRecord& b) const {
    return hex_distance(a.pos, b.pos);
  }
};

/// Minimum spanning tree over the complete graph of `nodes`.
///
/// Edges are ranked by (weight(a,b), hex length, min id, max id); the rows of
/// the result always carry the HCS length. With the default weight this is
/// the plain HCS-distance MST.
template <typename Weight = HexLengthWeight>
EdgeMatrix kruskal_mst(std::span<const NodeRecord> nodes, Weight weight = {}) {
  if (nodes.empty()) throw std::invalid_argument("kruskal_mst: no nodes");

  struct Candidate {
    std::int64_t w;
    EdgeRow row;
    std::uint32_t ia, ib;
  };
  std::vector<Candidate> all;
  all.reserve(nodes.size() * (nodes.size() - 1) / 2);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const auto& a = nodes[i];
      const auto& b = nodes[j];
      all.push_back({static_cast<std::int64_t>(weight(a, b)),
                     {a.id, b.id, hex_distance(a.pos, b.pos)},
                     static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    }
  }
  std::sort(all.begin(), all.end(), [](const Candidate& x, const Candidate& y) {
    if (x.w != y.w) return x.w < y.w;
    return EdgeMatrix::before(x.row, y.row);
  });

  EdgeMatrix tree;
  DisjointSets sets(nodes.size());
  std::size_t taken = 0;
  for (const auto& c : all) {
    if (taken + 1 == nodes.size()) break;
    if (sets.unite(c.ia, c.ib)) {
      tree.insert(c.row);
      ++taken;
    }
  }
  return tree;
}

/// Nodes of degree one, ascending.
inline std::vector<NodeId> find_terminals(const EdgeMatrix& t) {
  std::vector<NodeId> out;
  for (const auto& [id, nbrs] : t.adjacency()) {
    if (nbrs.size() == 1) out.push_back(id);
  }
  return out;
}

/// A walk from a terminal toward the interior of the tree. `nodes` are the
/// adjustable nodes met on the way; `stop` is the 3-connected or selected node
/// that ended the walk, if any. The line edges are consecutive pairs of
/// `nodes` plus (nodes.back(), stop).
struct LineGraph {
  std::vector<NodeId> nodes;
  std::optional<NodeId> stop;

  std::optional<NodeId> successor(std::size_t i) const {
    if (i + 1 < nodes.size()) return nodes[i + 1];
    return stop;
  }
};

struct PanSet {
  std::vector<LineGraph> lines;

  std::set<NodeId> members() const {
    std::set<NodeId> out;
    for (const auto& l : lines) out.insert(l.nodes.begin(), l.nodes.end());
    return out;
  }
};

/// Walks every line graph of `t`. A walk starts at each terminal that is not
/// selected and ends at a node of degree >= 3, at a selected node (both
/// excluded), or at the far terminal (included).
inline PanSet extract_line_graphs(const EdgeMatrix& t, const std::set<NodeId>& selected) {
  const auto adj = t.adjacency();
  const auto degree = [&](NodeId v) {
    const auto it = adj.find(v);
    return it == adj.end() ? std::size_t{0} : it->second.size();
  };

  PanSet pans;
  for (const auto& [start, nbrs] : adj) {
    if (nbrs.size() != 1 || selected.count(start) != 0) continue;
    LineGraph line;
    NodeId prev = start;
    NodeId cur = start;
    line.nodes.push_back(cur);
    while (true) {
      // cur has degree <= 2 here, so at most one neighbour is not prev.
      std::optional<NodeId> next;
      for (NodeId w : adj.at(cur)) {
        if (w != prev) next = w;
      }
      if (!next) break;
      const NodeId nx = *next;
      if (selected.count(nx) != 0 || degree(nx) >= 3) {
        line.stop = nx;
        break;
      }
      line.nodes.push_back(nx);
      if (degree(nx) == 1) break;
      prev = cur;
      cur = nx;
    }
    pans.lines.push_back(std::move(line));
  }
  return pans;
}

/// True iff `t` has node_count - 1 edges over ids [0, node_count) and is
/// connected.
inline bool is_tree(const EdgeMatrix& t, std::size_t node_count) {
  if (node_count == 0) return t.empty();
  if (t.size() + 1 != node_count) return false;
  DisjointSets sets(node_count);
  for (const auto& e : t.rows()) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= node_count ||
        static_cast<std::size_t>(e.v) >= node_count) {
      return false;
    }
    if (!sets.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) {
      return false;
    }
  }
  return true;
}

}  // namespace hexnet
