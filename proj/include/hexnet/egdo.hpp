#pragma once

// Iterative AN placement over a length-sorted spanning tree. EGDO splices the
// tree locally after every placement; GDO recomputes it after every iteration.

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hexnet/graph.hpp"
#include "hexnet/hcs.hpp"
#include "hexnet/placement.hpp"

namespace hexnet {

/// Kruskal weight that treats already-linked pairs as free, so the tree only
/// carries HCS length on edges that still need ANs.
struct LinkAwareWeight {
  int n = 0;
  std::int64_t operator()(const NodeRecord& a, const NodeRecord& b) const {
    return hexagons_linked(a.pos, b.pos, n) ? 0 : hex_distance(a.pos, b.pos);
  }
};

struct PlacementState {
  HcsFrame frame;
  std::vector<NodeRecord> nodes;
  EdgeMatrix tree;
  int k = 0;
  std::vector<std::vector<NodeId>> placed;  // ANs added in each iteration
  std::set<NodeId> rerouted;                // ANs whose edges are frozen

  const HexCoord& pos(NodeId id) const { return nodes.at(static_cast<std::size_t>(id)).pos; }

  bool pending(const EdgeRow& e) const {
    return !hexagons_linked(pos(e.u), pos(e.v), frame.n);
  }

  NodeId add_intermediate(HexCoord c) {
    const auto id = static_cast<NodeId>(nodes.size());
    nodes.push_back({id, NodeKind::intermediate, c, to_cartesian(c, frame)});
    return id;
  }
};

/// Initial state: lattice at the cluster centroid, snapped gateways and their
/// link-aware MST.
inline PlacementState initial_state(const Scenario& s) {
  PlacementState st;
  st.frame = make_frame(s);
  st.nodes = snapped_gateways(s, st.frame);
  st.tree = kruskal_mst(std::span<const NodeRecord>(st.nodes), LinkAwareWeight{s.n});
  return st;
}

/// The longest row of the tree whose endpoints are not yet linked, or nullopt
/// when every row is a link.
inline std::optional<EdgeRow> select_edge(const PlacementState& s) {
  if (s.tree.empty()) throw std::invalid_argument("select_edge: empty tree");
  const auto& rows = s.tree.rows();
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (s.pending(*it)) return *it;
  }
  return std::nullopt;
}

/// Positions that share an edge with P's hexagon and are linked to Q.
/// Empty means a single AN cannot bridge the pair.
inline std::vector<HexCoord> case1_candidates(HexCoord p, HexCoord q, int n) {
  if (hexagons_linked(p, q, n)) {
    throw std::invalid_argument("case1_candidates: endpoints already linked");
  }
  std::vector<HexCoord> out;
  for (const HexVec& d : feasible_hop_offsets(n)) {
    const HexCoord c = p + d;
    if (hexagons_linked(c, q, n)) out.push_back(c);
  }
  return out;
}

/// Single-AN bridge maximising |(P,Y)| + |(Q,Y)|; ties go to the candidate
/// nearest the origin, then to the lexicographically smallest.
inline HexCoord place_case1(HexCoord p, HexCoord q, int n, HexCoord origin) {
  const auto cands = case1_candidates(p, q, n);
  if (cands.empty()) throw std::invalid_argument("place_case1: no single-AN bridge");
  const auto key = [&](HexCoord c) {
    return std::tuple(-(hex_distance(p, c) + hex_distance(q, c)), hex_distance(origin, c), c);
  };
  HexCoord best = cands.front();
  for (const HexCoord& c : cands) {
    if (key(c) < key(best)) best = c;
  }
  return best;
}

/// The facade of `from` whose direction has the largest inner product with
/// (to - from); ties by lexicographic order of the facade vector.
inline HexVec facing_facade(HexCoord from, HexCoord to, int n) {
  const HexVec d = to - from;
  const auto fs = facades(n);
  HexVec best = fs.front();
  for (const HexVec& u : fs) {
    const auto a = inner_product(u, d);
    const auto b = inner_product(best, d);
    if (a > b || (a == b && u < best)) best = u;
  }
  return best;
}

struct Case2Choice {
  HexCoord near_p;
  HexCoord near_q;
  std::int64_t objective = 0;
};

/// Two-AN step for a pair too far apart for one AN. Each AN slides along the
/// facade of its anchor that faces the other anchor; the (8n+5)^2 pairs are
/// scored by |(Yp,Yq)| + |(O,Yp)| + |(O,Yq)|. Only pairs that shrink the gap
/// below |(P,Q)| are admissible. Ties: summed origin distance, then
/// lexicographic (Yp, Yq).
inline Case2Choice place_case2_scored(HexCoord p, HexCoord q, int n, HexCoord origin) {
  const auto from_p = facade_slides(facing_facade(p, q, n), n);
  const auto from_q = facade_slides(facing_facade(q, p, n), n);
  const std::int64_t gap0 = hex_distance(p, q);

  std::optional<std::tuple<std::int64_t, std::int64_t, HexCoord, HexCoord>> best;
  for (const HexVec& dp : from_p) {
    const HexCoord a = p + dp;
    const std::int64_t oa = hex_distance(origin, a);
    for (const HexVec& dq : from_q) {
      const HexCoord b = q + dq;
      const std::int64_t gap = hex_distance(a, b);
      if (gap >= gap0) continue;
      const std::int64_t ob = hex_distance(origin, b);
      auto cand = std::tuple(gap + oa + ob, oa + ob, a, b);
      if (!best || cand < *best) best = cand;
    }
  }
  if (!best) throw InvariantError("place_case2: no pair shortens the gap");
  return {std::get<2>(*best), std::get<3>(*best), std::get<0>(*best)};
}

inline std::pair<HexCoord, HexCoord> place_case2(HexCoord p, HexCoord q, int n,
                                                 HexCoord origin) {
  const auto c = place_case2_scored(p, q, n, origin);
  return {c.near_p, c.near_q};
}

/// One reroute performed during a splice.
struct RerouteEvent {
  int iteration = 0;
  NodeId an = 0;
  NodeId pan = 0;
  EdgeRow removed;
};

/// Observations collected while a placement runs.
struct EgdoTrace {
  std::vector<std::int64_t> selected_lengths;                  // one per iteration
  std::vector<std::pair<std::int64_t, std::int64_t>> case2_gaps;  // (before, after)
  std::vector<RerouteEvent> reroutes;
  std::size_t splices = 0;
};

struct EgdoOptions {
  EgdoTrace* trace = nullptr;
  int max_iterations = 1'000'000;
};

namespace detail {

// Reroutes at most one adjustable node onto `an`.
inline void reroute_toward(PlacementState& s, NodeId an, const std::set<NodeId>& selected,
                           EgdoTrace* trace) {
  const PanSet pans = extract_line_graphs(s.tree, selected);
  const HexCoord at = s.pos(an);
  for (const LineGraph& line : pans.lines) {
    for (std::size_t i = 0; i < line.nodes.size(); ++i) {
      const NodeId j = line.nodes[i];
      const auto succ = line.successor(i);
      if (!succ) continue;
      if (s.rerouted.count(j) != 0 || s.rerouted.count(*succ) != 0) continue;
      const EdgeRow edge{j, *succ, hex_distance(s.pos(j), s.pos(*succ))};
      if (!s.pending(edge)) continue;
      const std::int64_t delta = hex_distance(at, s.pos(j));
      if (delta >= edge.len) continue;

      s.tree.erase(j, *succ);
      s.tree.insert({an, j, delta});
      s.rerouted.insert(an);
      if (trace) trace->reroutes.push_back({s.k, an, j, edge});
      return;
    }
  }
}

}  // namespace detail

/// Splices newly placed ANs into the tree in place of row (p, q), then lets
/// each new AN adopt at most one line-graph node whose line edge
/// is longer than the distance to the AN and still unlinked.
///
/// `placed` is {Y} for a single bridge or {Yp, Yq} for a two-AN step.
inline void modify_mst(PlacementState& s, std::span<const NodeId> placed, NodeId p, NodeId q,
                       EgdoTrace* trace = nullptr) {
  if (placed.size() != 1 && placed.size() != 2) {
    throw std::invalid_argument("modify_mst: expected one or two new ANs");
  }
  if (!s.tree.erase(p, q)) throw InvariantError("modify_mst: selected row not in tree");

  const auto len = [&](NodeId a, NodeId b) { return hex_distance(s.pos(a), s.pos(b)); };
  if (placed.size() == 1) {
    const NodeId y = placed[0];
    s.tree.insert({p, y, len(p, y)});
    s.tree.insert({q, y, len(q, y)});
  } else {
    const NodeId a = placed[0];
    const NodeId b = placed[1];
    s.tree.insert({a, b, len(a, b)});
    s.tree.insert({a, p, len(a, p)});
    s.tree.insert({b, q, len(b, q)});
  }

  std::set<NodeId> selected{p, q};
  selected.insert(placed.begin(), placed.end());
  for (const NodeId y : placed) detail::reroute_toward(s, y, selected, trace);

  if (trace) ++trace->splices;
  if (!s.tree.is_sorted()) throw InvariantError("modify_mst: rows out of order");
  if (!is_tree(s.tree, s.nodes.size())) throw InvariantError("modify_mst: result is not a tree");
}

namespace detail {

inline Placement finish(std::string name, const PlacementState& st,
                        std::chrono::steady_clock::time_point t0) {
  Placement out;
  out.algorithm = std::move(name);
  out.model = LinkModel::hcs;
  out.frame = st.frame;
  out.nodes = st.nodes;
  for (const auto& e : st.tree.rows()) {
    out.edges.push_back({e.u, e.v, static_cast<double>(e.len)});
  }
  int eta = 0;
  for (const auto& v : st.nodes) eta += v.kind == NodeKind::intermediate ? 1 : 0;
  out.eta = eta;
  out.iterations = st.k;
  out.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// Bridges (p, q) completely: single-AN placements end the recursion, two-AN
// steps continue on the pair they leave behind. `splice` is called after
// every placement step with (new ids, p, q).
template <typename Splice>
void bridge(PlacementState& s, NodeId p, NodeId q, EgdoTrace* trace, Splice&& splice) {
  const HexCoord origin{0, 0};
  const int n = s.frame.n;
  std::vector<NodeId> iteration_ans;
  while (!hexagons_linked(s.pos(p), s.pos(q), n)) {
    if (!case1_candidates(s.pos(p), s.pos(q), n).empty()) {
      const NodeId y = s.add_intermediate(place_case1(s.pos(p), s.pos(q), n, origin));
      iteration_ans.push_back(y);
      const NodeId ids[1] = {y};
      splice(std::span<const NodeId>(ids), p, q);
      break;
    }
    const auto [pa, qb] = place_case2(s.pos(p), s.pos(q), n, origin);
    const std::int64_t before = hex_distance(s.pos(p), s.pos(q));
    const NodeId a = s.add_intermediate(pa);
    const NodeId b = s.add_intermediate(qb);
    iteration_ans.push_back(a);
    iteration_ans.push_back(b);
    if (trace) trace->case2_gaps.emplace_back(before, hex_distance(pa, qb));
    const NodeId ids[2] = {a, b};
    splice(std::span<const NodeId>(ids), p, q);
    p = a;
    q = b;
  }
  s.placed.push_back(std::move(iteration_ans));
}

}  // namespace detail

/// EGDO: longest unlinked tree edge first, local tree splicing.
inline Placement run_egdo(const Scenario& scenario, const EgdoOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  PlacementState st = initial_state(scenario);
  if (st.nodes.size() == 1) return detail::finish("egdo", st, t0);

  while (const auto sel = select_edge(st)) {
    if (st.k >= opt.max_iterations) throw InvariantError("run_egdo: iteration limit reached");
    ++st.k;
    if (opt.trace) opt.trace->selected_lengths.push_back(sel->len);
    detail::bridge(st, sel->u, sel->v, opt.trace,
                   [&](std::span<const NodeId> ids, NodeId p, NodeId q) {
                     modify_mst(st, ids, p, q, opt.trace);
                   });
  }
  return detail::finish("egdo", st, t0);
}

/// GDO: as EGDO, but the whole tree is rebuilt after every iteration and no
/// local rerouting takes place.
inline Placement run_gdo(const Scenario& scenario, const EgdoOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  PlacementState st = initial_state(scenario);
  if (st.nodes.size() == 1) return detail::finish("gdo", st, t0);

  const LinkAwareWeight weight{scenario.n};
  while (const auto sel = select_edge(st)) {
    if (st.k >= opt.max_iterations) throw InvariantError("run_gdo: iteration limit reached");
    ++st.k;
    if (opt.trace) opt.trace->selected_lengths.push_back(sel->len);
    detail::bridge(st, sel->u, sel->v, opt.trace,
                   [](std::span<const NodeId>, NodeId, NodeId) {});
    st.tree = kruskal_mst(std::span<const NodeRecord>(st.nodes), weight);
  }
  return detail::finish("gdo", st, t0);
}

}  // namespace hexnet
