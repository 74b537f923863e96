#pragma once

// Hexagonal coordinate system: integer cell coordinates on two axes pi/3
// apart, the lattice distance, the skewed inner product, vector orientation,
// Cartesian conversion and the shared-edge predicate for AN hexagons.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace hexnet {

/// Displacement between two cells, in cell units.
struct HexVec {
  std::int64_t dx = 0;
  std::int64_t dy = 0;

  constexpr auto operator<=>(const HexVec&) const = default;

  constexpr HexVec operator-() const { return {-dx, -dy}; }
  constexpr HexVec operator+(HexVec o) const { return {dx + o.dx, dy + o.dy}; }
  constexpr HexVec operator-(HexVec o) const { return {dx - o.dx, dy - o.dy}; }
  constexpr HexVec operator*(std::int64_t k) const { return {dx * k, dy * k}; }
  constexpr bool is_zero() const { return dx == 0 && dy == 0; }
};

/// Cell index. The y axis is the x axis rotated by pi/3 counter-clockwise.
struct HexCoord {
  std::int64_t x = 0;
  std::int64_t y = 0;

  constexpr auto operator<=>(const HexCoord&) const = default;

  constexpr HexCoord operator+(HexVec d) const { return {x + d.dx, y + d.dy}; }
  constexpr HexCoord operator-(HexVec d) const { return {x - d.dx, y - d.dy}; }
  constexpr HexVec operator-(HexCoord o) const { return {x - o.x, y - o.y}; }
};

inline std::ostream& operator<<(std::ostream& os, HexCoord c) {
  return os << '(' << c.x << ',' << c.y << ')';
}
inline std::ostream& operator<<(std::ostream& os, HexVec d) {
  return os << '<' << d.dx << ',' << d.dy << '>';
}

/// Cartesian point in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr bool operator==(const Point&) const = default;
};

inline double euclidean_distance(Point a, Point b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

namespace detail {
constexpr std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }
}  // namespace detail

/// Number of cells crossed going from the tail to the head of d.
constexpr std::int64_t hex_length(HexVec d) {
  using detail::iabs;
  return std::max({iabs(d.dx), iabs(d.dy), iabs(d.dx + d.dy)});
}

constexpr std::int64_t hex_distance(HexCoord u, HexCoord v) {
  return hex_length(v - u);
}

/// Exact value of the form m/2. Inner products of lattice vectors land here.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  static constexpr HalfInt from_int(std::int64_t v) { return from_twice(2 * v); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr double value() const { return static_cast<double>(twice_) / 2.0; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  constexpr auto operator<=>(const HalfInt&) const = default;

 private:
  std::int64_t twice_ = 0;
};

/// a^T * Delta * b with Delta = [[1, 1/2], [1/2, 1]].
constexpr HalfInt inner_product(HexVec a, HexVec b) {
  return HalfInt::from_twice(2 * a.dx * b.dx + a.dx * b.dy + a.dy * b.dx +
                             2 * a.dy * b.dy);
}

/// Angle in [0, pi/3) between d and the lattice axis it is referenced to.
///
/// Quadrants 1 and 3 (dx*dy > 0) are measured from the x axis. Quadrants 2
/// and 4 are split at |dx| = |dy|: Area I (|dx| < |dy|) is measured from the
/// y axis, Area II (|dx| > |dy|) from the x axis. Vectors lying on one of the
/// three lattice lines return 0.
inline double orientation(HexVec d) {
  if (d.is_zero()) {
    throw std::domain_error("orientation: zero vector has no direction");
  }
  if (d.dx == 0 || d.dy == 0 || d.dx + d.dy == 0) return 0.0;

  constexpr double kSqrt3 = std::numbers::sqrt3;
  const double ax = static_cast<double>(detail::iabs(d.dx));
  const double ay = static_cast<double>(detail::iabs(d.dy));
  if ((d.dx > 0) == (d.dy > 0)) return std::atan(kSqrt3 * ay / (2.0 * ax + ay));
  if (ax < ay) return std::atan(kSqrt3 * ax / (2.0 * ay - ax));
  return std::atan(kSqrt3 * ay / (2.0 * ax - ay));
}

/// Placement of the lattice in the plane and the AN range scale.
struct HcsFrame {
  Point origin;
  double r = 1.0;  // SN radius, which is also the cell edge length
  int n = 0;       // AN hexagon edge is (12n+7) cells

  constexpr std::int64_t lambda() const { return 12 * std::int64_t{n} + 7; }
  constexpr double R() const { return static_cast<double>(lambda()) * r; }

  static HcsFrame make(Point origin, double r, int n) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("HcsFrame: r must be positive");
    }
    if (n < 0) throw std::invalid_argument("HcsFrame: n must be non-negative");
    return HcsFrame{origin, r, n};
  }
};

constexpr std::int64_t lambda_of(int n) { return 12 * std::int64_t{n} + 7; }

/// Cartesian offset of a lattice displacement. Neighbouring cells along
/// either axis are sqrt(3)*r apart.
inline Point to_cartesian(HexVec d, double r) {
  constexpr double kSqrt3 = std::numbers::sqrt3;
  const double dx = static_cast<double>(d.dx);
  const double dy = static_cast<double>(d.dy);
  return {kSqrt3 * r * (dx + dy / 2.0), 1.5 * r * dy};
}

inline Point to_cartesian(HexCoord c, const HcsFrame& f) {
  const Point off = to_cartesian(HexVec{c.x, c.y}, f.r);
  return {f.origin.x + off.x, f.origin.y + off.y};
}

/// Cell whose centre is nearest to p.
inline HexCoord from_cartesian(Point p, const HcsFrame& f) {
  constexpr double kSqrt3 = std::numbers::sqrt3;
  const double px = p.x - f.origin.x;
  const double py = p.y - f.origin.y;
  const double fy = py / (1.5 * f.r);
  const double fx = px / (kSqrt3 * f.r) - fy / 2.0;
  const double fz = -fx - fy;

  double rx = std::round(fx);
  double ry = std::round(fy);
  const double rz = std::round(fz);
  const double ex = std::abs(rx - fx);
  const double ey = std::abs(ry - fy);
  const double ez = std::abs(rz - fz);
  if (ex > ey && ex > ez) {
    rx = -ry - rz;
  } else if (ey > ez) {
    ry = -rx - rz;
  }
  return {static_cast<std::int64_t>(rx), static_cast<std::int64_t>(ry)};
}

/// The six lambda-scaled axis vectors along which two AN hexagons can face
/// each other across a common edge.
inline std::array<HexVec, 6> facades(int n) {
  const std::int64_t l = lambda_of(n);
  return {{{l, 0}, {-l, 0}, {0, l}, {0, -l}, {l, -l}, {-l, l}}};
}

/// Lattice step of HCS length 2 perpendicular to `facade`, pointing a quarter
/// turn counter-clockwise from it. For (l,0) this is (-1,2); for (l,-l) it is
/// (1,1).
constexpr HexVec slide_step(HexVec facade) {
  // Unit direction, then rot60 + rot120 where rot60(x,y) = (-y, x+y).
  const std::int64_t len = hex_length(facade);
  if (len == 0) return {};
  const HexVec u{facade.dx / len, facade.dy / len};
  const HexVec r60{-u.dy, u.dx + u.dy};
  const HexVec r120{-r60.dy, r60.dx + r60.dy};
  return r60 + r120;
}

/// Largest slide along a shared edge that still leaves a common segment.
constexpr std::int64_t max_slide(int n) { return 4 * std::int64_t{n} + 2; }

/// Every centre offset at which two AN hexagons of edge (12n+7)r share a
/// boundary segment: 6 facades times 8n+5 slides.
inline std::vector<HexVec> feasible_hop_offsets(int n) {
  if (n < 0) throw std::invalid_argument("feasible_hop_offsets: n < 0");
  std::vector<HexVec> out;
  const std::int64_t kmax = max_slide(n);
  out.reserve(static_cast<std::size_t>(6 * (2 * kmax + 1)));
  for (const HexVec& u : facades(n)) {
    const HexVec step = slide_step(u);
    for (std::int64_t k = -kmax; k <= kmax; ++k) out.push_back(u + step * k);
  }
  return out;
}

/// Offsets reachable from a centre along one facade, in slide order.
inline std::vector<HexVec> facade_slides(HexVec facade, int n) {
  std::vector<HexVec> out;
  const std::int64_t kmax = max_slide(n);
  const HexVec step = slide_step(facade);
  for (std::int64_t k = -kmax; k <= kmax; ++k) out.push_back(facade + step * k);
  return out;
}

/// Twice the distance, in facade-normal units, from a hexagon centre to the
/// support line of the other hexagon along each of the three facade normals.
/// Two congruent AN hexagons touch when this equals 2*lambda and overlap
/// when it is smaller.
constexpr std::int64_t facade_norm(HexVec d) {
  using detail::iabs;
  return std::max({iabs(2 * d.dx + d.dy), iabs(d.dx + 2 * d.dy),
                   iabs(d.dx - d.dy)});
}

/// True iff the AN hexagons centred at u and v share a boundary edge, i.e.
/// (v - u) is one of feasible_hop_offsets(n).
///
/// The lattice points with facade_norm == 2*lambda are exactly the slide
/// positions |k| <= 4n+2 on the six facades, since lambda/3 is never an
/// integer.
constexpr bool is_robustly_connected(HexCoord u, HexCoord v, int n) {
  return facade_norm(v - u) == 2 * lambda_of(n);
}

/// True iff the AN hexagons at u and v share an edge or overlap. This is the
/// link relation used when deciding whether two nodes still need bridging.
constexpr bool hexagons_linked(HexCoord u, HexCoord v, int n) {
  return facade_norm(v - u) <= 2 * lambda_of(n);
}

}  // namespace hexnet
