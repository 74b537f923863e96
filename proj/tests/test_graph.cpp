#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hexnet/graph.hpp"
#include "oracle.hpp"

using namespace hexnet;

namespace {

std::vector<NodeRecord> make_nodes(const std::vector<HexCoord>& pos) {
  std::vector<NodeRecord> out;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    out.push_back({static_cast<NodeId>(i), NodeKind::gateway, pos[i], {}});
  }
  return out;
}

EdgeMatrix from_edges(const std::vector<std::pair<NodeId, NodeId>>& es) {
  EdgeMatrix t;
  for (auto [u, v] : es) t.insert({u, v, 1});
  return t;
}

}  // namespace

TEST(Kruskal, SingleNodeAndEmpty) {
  const auto one = make_nodes({{3, 3}});
  EXPECT_TRUE(kruskal_mst(std::span<const NodeRecord>(one)).empty());
  EXPECT_THROW(kruskal_mst(std::span<const NodeRecord>()), std::invalid_argument);
}

TEST(Kruskal, CollinearNodes) {
  const auto nodes = make_nodes({{0, 0}, {5, 0}, {9, 0}});
  const auto t = kruskal_mst(std::span<const NodeRecord>(nodes));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.rows()[0], (EdgeRow{1, 2, 4}));
  EXPECT_EQ(t.rows()[1], (EdgeRow{0, 1, 5}));
}

TEST(Kruskal, MatchesSpanningTreeEnumeration) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> c(-30, 30);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(trial % 5);
    std::vector<HexCoord> pos;
    for (std::size_t i = 0; i < k; ++i) pos.push_back({c(rng), c(rng)});
    const auto nodes = make_nodes(pos);
    const auto t = kruskal_mst(std::span<const NodeRecord>(nodes));
    ASSERT_TRUE(is_tree(t, k));
    ASSERT_TRUE(t.is_sorted());
    const auto best = oracle::brute_force_mst_weight(
        k, [&](std::size_t a, std::size_t b) { return hex_distance(pos[a], pos[b]); });
    ASSERT_EQ(t.total_length(), best);
  }
}

TEST(Kruskal, TieBreakIsDeterministic) {
  const auto nodes = make_nodes({{0, 0}, {4, 0}, {0, 4}, {4, -4}});
  const auto a = kruskal_mst(std::span<const NodeRecord>(nodes));
  const auto b = kruskal_mst(std::span<const NodeRecord>(nodes));
  EXPECT_EQ(a.rows(), b.rows());
  EXPECT_EQ(a.rows()[0], (EdgeRow{0, 1, 4}));
}

TEST(EdgeMatrix, InsertKeepsOrder) {
  EdgeMatrix t;
  t.insert({0, 1, 9});
  t.insert({2, 3, 4});
  t.insert({1, 2, 4});
  t.insert({4, 0, 6});
  ASSERT_TRUE(t.is_sorted());
  EXPECT_EQ(t.rows()[0], (EdgeRow{1, 2, 4}));
  EXPECT_EQ(t.back(), (EdgeRow{0, 1, 9}));
  EXPECT_TRUE(t.erase(1, 0));
  EXPECT_FALSE(t.contains(0, 1));
  EXPECT_FALSE(t.erase(0, 1));
}

TEST(Terminals, SmallTrees) {
  EXPECT_EQ(find_terminals(from_edges({{0, 1}, {1, 2}})), (std::vector<NodeId>{0, 2}));
  EXPECT_EQ(find_terminals(from_edges({{9, 1}, {9, 2}, {9, 3}})), (std::vector<NodeId>{1, 2, 3}));
  EXPECT_EQ(find_terminals(from_edges({{4, 5}})), (std::vector<NodeId>{4, 5}));
}

TEST(LineGraphs, PathWithoutSelection) {
  const auto pans = extract_line_graphs(from_edges({{0, 1}, {1, 2}, {2, 3}}), {});
  ASSERT_EQ(pans.lines.size(), 2u);
  EXPECT_EQ(pans.members(), (std::set<NodeId>{0, 1, 2, 3}));
  EXPECT_EQ(pans.lines[0].nodes, (std::vector<NodeId>{0, 1, 2, 3}));
  EXPECT_FALSE(pans.lines[0].stop.has_value());
}

TEST(LineGraphs, StopsAtBranchNode) {
  // a=0, b=1, c=2 with c also joined to d=3 and e=4.
  const auto t = from_edges({{0, 1}, {1, 2}, {2, 3}, {2, 4}});
  const auto pans = extract_line_graphs(t, {});
  ASSERT_EQ(pans.lines.size(), 3u);
  EXPECT_EQ(pans.lines[0].nodes, (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(pans.lines[0].stop, 2);
  EXPECT_EQ(pans.members().count(2), 0u);
}

TEST(LineGraphs, StopsAtSelectedNode) {
  const auto t = from_edges({{0, 1}, {1, 2}});
  const auto pans = extract_line_graphs(t, {1, 2});
  ASSERT_EQ(pans.lines.size(), 1u);
  EXPECT_EQ(pans.lines[0].nodes, (std::vector<NodeId>{0}));
  EXPECT_EQ(pans.lines[0].stop, 1);
}

TEST(LineGraphs, MembersNeverBranchNodes) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 2 + trial % 30;
    EdgeMatrix t;
    for (int v = 1; v < k; ++v) {
      std::uniform_int_distribution<int> parent(0, v - 1);
      t.insert({parent(rng), v, 1});
    }
    ASSERT_TRUE(is_tree(t, static_cast<std::size_t>(k)));
    std::set<NodeId> sel;
    if (trial % 2) sel = {0, k - 1};
    for (NodeId m : extract_line_graphs(t, sel).members()) {
      ASSERT_LT(t.degree(m), 3);
      ASSERT_EQ(sel.count(m), 0u);
    }
  }
}

TEST(IsTree, SmallCases) {
  EXPECT_TRUE(is_tree(from_edges({{0, 1}, {1, 2}}), 3));
  EXPECT_FALSE(is_tree(from_edges({{0, 1}}), 3));
  EXPECT_FALSE(is_tree(from_edges({{0, 1}, {1, 2}, {0, 2}}), 3));
  EXPECT_FALSE(is_tree(from_edges({{0, 1}, {0, 1}}), 3));
  EXPECT_TRUE(is_tree(EdgeMatrix{}, 1));
}

TEST(DisjointSets, Unites) {
  DisjointSets s(4);
  EXPECT_TRUE(s.unite(0, 1));
  EXPECT_FALSE(s.unite(1, 0));
  EXPECT_TRUE(s.unite(2, 3));
  EXPECT_NE(s.find(0), s.find(2));
  EXPECT_TRUE(s.unite(0, 3));
  EXPECT_EQ(s.find(1), s.find(2));
}
