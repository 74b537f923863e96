#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "hexnet/hcs.hpp"
#include "oracle.hpp"

using namespace hexnet;

TEST(HexDistance, WorkedValues) {
  EXPECT_EQ(hex_distance({0, 0}, {6, -4}), 6);
  EXPECT_EQ(hex_distance({3, 5}, {3, 5}), 0);
  EXPECT_EQ(hex_distance({0, 0}, {2, 3}), 5);
}

TEST(HexDistance, MatchesBreadthFirstSearch) {
  const auto dist = oracle::bfs_distances(25);
  for (const auto& [v, d] : dist) {
    ASSERT_EQ(hex_length(v), d) << v;
  }
}

TEST(HexDistance, SymmetricAndTriangle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> c(-1000, 1000);
  for (int i = 0; i < 100000; ++i) {
    const HexCoord l{c(rng), c(rng)}, m{c(rng), c(rng)}, n{c(rng), c(rng)};
    ASSERT_LE(hex_distance(l, n), hex_distance(l, m) + hex_distance(m, n));
    ASSERT_EQ(hex_distance(l, m), hex_distance(m, l));
  }
}

TEST(InnerProduct, WorkedValues) {
  EXPECT_EQ(inner_product({1, 0}, {1, -2}).value(), 0.0);
  EXPECT_EQ(inner_product({1, 0}, {1, 0}).value(), 1.0);
  EXPECT_EQ(inner_product({7, 0}, {0, -7}).value(), -24.5);
  EXPECT_FALSE(inner_product({7, 0}, {0, -7}).is_integer());
}

TEST(InnerProduct, MatchesCartesianDotProduct) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> c(-50, 50);
  for (int i = 0; i < 2000; ++i) {
    const HexVec a{c(rng), c(rng)}, b{c(rng), c(rng)};
    const Point pa = oracle::cell_centre(a), pb = oracle::cell_centre(b);
    // Cell centres are sqrt(3) apart, so Cartesian dot = 3 * lattice product.
    ASSERT_NEAR(inner_product(a, b).value(), (pa.x * pb.x + pa.y * pb.y) / 3.0, 1e-8);
    ASSERT_EQ(inner_product(a, b), inner_product(b, a));
  }
}

TEST(InnerProduct, SlideStepIsPerpendicularToItsFacade) {
  for (int n : {0, 1, 2, 7}) {
    for (const HexVec& u : facades(n)) {
      const HexVec s = slide_step(u);
      EXPECT_EQ(inner_product(u, s).twice(), 0) << u;
      EXPECT_EQ(hex_length(s), 2);
      EXPECT_EQ(hex_length(u), lambda_of(n));
    }
  }
  EXPECT_EQ(slide_step({7, 0}), (HexVec{-1, 2}));
  EXPECT_EQ(slide_step({7, -7}), (HexVec{1, 1}));
}

TEST(Orientation, WorkedValues) {
  EXPECT_EQ(orientation({5, 0}), 0.0);
  EXPECT_NEAR(orientation({3, 3}), std::numbers::pi / 6, 1e-12);
  EXPECT_NEAR(orientation({6, -4}), std::atan(4 * std::sqrt(3.0) / 8), 1e-12);
  EXPECT_THROW(orientation({0, 0}), std::domain_error);
}

TEST(Orientation, MatchesAngleToReferenceAxis) {
  const Point xaxis = oracle::cell_centre({1, 0});
  const Point yaxis = oracle::cell_centre({0, 1});
  // Unsigned angle between vector a and the line through b.
  const auto line_angle = [](Point a, Point b) {
    const double c = std::abs(a.x * b.x + a.y * b.y) / (std::hypot(a.x, a.y) * std::hypot(b.x, b.y));
    return std::acos(std::min(1.0, c));
  };
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> c(-400, 400);
  for (int i = 0; i < 100000; ++i) {
    const HexVec d{c(rng), c(rng)};
    if (d.is_zero()) continue;
    const double th = orientation(d);
    ASSERT_GE(th, 0.0);
    ASSERT_LT(th, std::numbers::pi / 3);
    if (d.dx == 0 || d.dy == 0 || d.dx + d.dy == 0) {
      ASSERT_EQ(th, 0.0);
      continue;
    }
    const Point p = oracle::cell_centre(d);
    const double ref = (d.dx > 0) == (d.dy > 0)
                           ? line_angle(p, xaxis)
                           : std::min(line_angle(p, xaxis), line_angle(p, yaxis));
    ASSERT_NEAR(th, ref, 1e-9) << d;
  }
}

TEST(Cartesian, WorkedValues) {
  const auto f = HcsFrame::make({0, 0}, 50, 0);
  const Point a = to_cartesian(HexCoord{1, 0}, f);
  EXPECT_NEAR(a.x, 86.60254, 1e-4);
  EXPECT_NEAR(a.y, 0.0, 1e-12);
  const Point b = to_cartesian(HexCoord{-1, 2}, f);
  EXPECT_NEAR(b.x, 0.0, 1e-9);
  EXPECT_NEAR(b.y, 150.0, 1e-9);
  EXPECT_EQ(from_cartesian({0, 0}, f), (HexCoord{0, 0}));
  EXPECT_EQ(from_cartesian({86.60, 0}, f), (HexCoord{1, 0}));
  EXPECT_EQ(from_cartesian({10, 140}, f), (HexCoord{-1, 2}));
}

TEST(Cartesian, NearestCentreAgreesWithScan) {
  const auto f = HcsFrame::make({123.0, -45.0}, 50, 2);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2000, 2000);
  for (int i = 0; i < 5000; ++i) {
    const Point p{u(rng), u(rng)};
    const HexCoord c = from_cartesian(p, f);
    const double dc = euclidean_distance(p, to_cartesian(c, f));
    for (std::int64_t dx = -2; dx <= 2; ++dx) {
      for (std::int64_t dy = -2; dy <= 2; ++dy) {
        ASSERT_LE(dc, euclidean_distance(p, to_cartesian(c + HexVec{dx, dy}, f)) + 1e-9);
      }
    }
  }
}

TEST(Cartesian, RoundTripOnBlock) {
  const auto f = HcsFrame::make({1e5, -3e4}, 50, 7);
  for (std::int64_t x = -50; x < 50; ++x) {
    for (std::int64_t y = -50; y < 50; ++y) {
      ASSERT_EQ(from_cartesian(to_cartesian(HexCoord{x, y}, f), f), (HexCoord{x, y}));
    }
  }
}

TEST(Frame, RejectsBadParameters) {
  EXPECT_THROW(HcsFrame::make({0, 0}, 0.0, 0), std::invalid_argument);
  EXPECT_THROW(HcsFrame::make({0, 0}, 50, -1), std::invalid_argument);
  EXPECT_EQ(HcsFrame::make({0, 0}, 50, 7).R(), 4550.0);
}

TEST(FeasibleOffsets, WorkedValues) {
  const auto o = feasible_hop_offsets(0);
  EXPECT_EQ(o.size(), 30u);
  const std::set<HexVec> s(o.begin(), o.end());
  EXPECT_EQ(s.size(), 30u);
  EXPECT_TRUE(s.count({7, 0}));
  EXPECT_TRUE(s.count({5, 4}));
  EXPECT_EQ(hex_length({5, 4}), 9);
  EXPECT_TRUE(s.count({6, 2}));  // even length 8
  EXPECT_EQ(hex_length({6, 2}), 8);
}

TEST(FeasibleOffsets, MatchCartesianSharedEdges) {
  for (int n : {0, 1, 2}) {
    const auto lib = feasible_hop_offsets(n);
    const std::set<HexVec> mine(lib.begin(), lib.end());
    EXPECT_EQ(mine, oracle::brute_force_offsets(n)) << "n=" << n;
  }
}

TEST(FeasibleOffsets, CartesianMarginBelowTwoR) {
  for (int n : {0, 1, 7}) {
    const double two_r = 2.0 * static_cast<double>(lambda_of(n));
    for (const HexVec& d : feasible_hop_offsets(n)) {
      const Point p = to_cartesian(d, 1.0);
      ASSERT_LT(std::hypot(p.x, p.y), two_r) << d;
    }
  }
}

TEST(Robust, Predicate) {
  EXPECT_TRUE(is_robustly_connected({0, 0}, {7, 0}, 0));
  EXPECT_FALSE(is_robustly_connected({0, 0}, {0, 0}, 0));
  EXPECT_FALSE(is_robustly_connected({0, 0}, {10, 0}, 0));
  EXPECT_TRUE(hexagons_linked({0, 0}, {0, 0}, 0));
  EXPECT_TRUE(hexagons_linked({0, 0}, {3, 1}, 0));
  EXPECT_FALSE(hexagons_linked({0, 0}, {10, 0}, 0));
}

TEST(Robust, PredicatesMatchGeometry) {
  for (int n : {0, 1}) {
    const std::int64_t lim = 3 * lambda_of(n);
    for (std::int64_t dx = -lim; dx <= lim; ++dx) {
      for (std::int64_t dy = -lim; dy <= lim; ++dy) {
        const HexVec d{dx, dy};
        ASSERT_EQ(is_robustly_connected({0, 0}, HexCoord{0, 0} + d, n),
                  oracle::hexagons_share_edge(d, lambda_of(n)))
            << d;
        ASSERT_EQ(hexagons_linked({0, 0}, HexCoord{0, 0} + d, n),
                  oracle::hexagons_intersect(d, lambda_of(n)))
            << d;
      }
    }
  }
}
