#pragma once

// Scenario and placement JSON documents, sweep CSV and SVG drawings.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hexnet/experiments.hpp"
#include "hexnet/placement.hpp"

namespace hexnet::io {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Provenance block written into every output.
inline json make_meta(const std::string& command, json config) {
  return json{{"tool", "hexnet"}, {"version", kToolVersion}, {"command", command},
              {"config", std::move(config)}};
}

// ---------------------------------------------------------------------------
// Scenario

inline json scenario_to_json(const Scenario& s) {
  json clusters = json::array();
  for (const Point& p : s.clusters) clusters.push_back({p.x, p.y});
  return json{{"field_m", {s.field_w, s.field_h}},
              {"r_m", s.r},
              {"n", s.n},
              {"seed", s.seed},
              {"clusters", std::move(clusters)}};
}

inline Scenario scenario_from_json(const json& j) {
  Scenario s;
  const auto& f = j.at("field_m");
  if (!f.is_array() || f.size() != 2) throw std::invalid_argument("field_m must be [w, h]");
  s.field_w = f[0].get<double>();
  s.field_h = f[1].get<double>();
  s.r = j.at("r_m").get<double>();
  s.n = j.at("n").get<int>();
  s.seed = j.value("seed", std::uint64_t{0});
  for (const auto& c : j.at("clusters")) {
    if (!c.is_array() || c.size() != 2) throw std::invalid_argument("cluster must be [x, y]");
    s.clusters.push_back({c[0].get<double>(), c[1].get<double>()});
  }
  if (!(s.field_w > 0.0) || !(s.field_h > 0.0)) throw std::invalid_argument("field must be positive");
  if (!(s.r > 0.0)) throw std::invalid_argument("r_m must be positive");
  if (s.n < 0) throw std::invalid_argument("n must be non-negative");
  return s;
}

// ---------------------------------------------------------------------------
// Placement

inline std::string to_string(LinkModel m) { return m == LinkModel::hcs ? "hcs" : "disk"; }

inline json placement_to_json(const Placement& p, bool timing) {
  json nodes = json::array();
  for (const auto& v : p.nodes) {
    nodes.push_back({{"id", v.id},
                     {"kind", v.kind == NodeKind::gateway ? "gateway" : "intermediate"},
                     {"hex", {v.pos.x, v.pos.y}},
                     {"cart", {v.cart.x, v.cart.y}}});
  }
  json edges = json::array();
  for (const auto& e : p.edges) edges.push_back({{"u", e.u}, {"v", e.v}, {"length", e.length}});
  json j{{"algorithm", p.algorithm},
         {"model", to_string(p.model)},
         {"frame", {{"origin", {p.frame.origin.x, p.frame.origin.y}}, {"r", p.frame.r},
                    {"n", p.frame.n}}},
         {"eta", p.eta},
         {"iterations", p.iterations},
         {"nodes", std::move(nodes)},
         {"edges", std::move(edges)}};
  if (timing) j["wall_ms"] = p.wall_ms;
  return j;
}

inline Placement placement_from_json(const json& j) {
  Placement p;
  p.algorithm = j.at("algorithm").get<std::string>();
  const auto model = j.at("model").get<std::string>();
  if (model != "hcs" && model != "disk") throw std::invalid_argument("unknown model " + model);
  p.model = model == "hcs" ? LinkModel::hcs : LinkModel::disk;
  const auto& f = j.at("frame");
  p.frame = HcsFrame::make({f.at("origin")[0].get<double>(), f.at("origin")[1].get<double>()},
                           f.at("r").get<double>(), f.at("n").get<int>());
  p.eta = j.at("eta").get<int>();
  p.iterations = j.value("iterations", 0);
  p.wall_ms = j.value("wall_ms", 0.0);
  for (const auto& v : j.at("nodes")) {
    NodeRecord r;
    r.id = v.at("id").get<NodeId>();
    r.kind = v.at("kind").get<std::string>() == "gateway" ? NodeKind::gateway
                                                          : NodeKind::intermediate;
    r.pos = {v.at("hex")[0].get<std::int64_t>(), v.at("hex")[1].get<std::int64_t>()};
    r.cart = {v.at("cart")[0].get<double>(), v.at("cart")[1].get<double>()};
    p.nodes.push_back(r);
  }
  for (const auto& e : j.at("edges")) {
    p.edges.push_back({e.at("u").get<NodeId>(), e.at("v").get<NodeId>(),
                       e.at("length").get<double>()});
  }
  return p;
}

// ---------------------------------------------------------------------------
// CSV

inline const char* kCsvHeader = "scenario_id,clusters,algorithm,eta,runtime_ms,mode,trials,pr,rf";

inline std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

/// Sweep rows as CSV. Lines before the header start with '#' and carry the
/// provenance block. runtime_ms is left empty unless `timing` is set, so the
/// default output depends only on config and seeds.
inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows, const json& meta,
                            bool timing) {
  os << "# " << meta.dump() << '\n' << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.scenario_id << ',' << r.clusters << ',' << r.algorithm << ',' << r.eta << ','
       << (timing ? fmt("%.3f", r.runtime_ms) : std::string{}) << ',' << to_string(r.mode) << ','
       << r.trials << ',' << fmt("%.4f", r.pr) << ',' << (r.rf ? fmt("%.6f", *r.rf) : std::string{})
       << '\n';
  }
}

// ---------------------------------------------------------------------------
// SVG

struct SvgOptions {
  bool cells = false;     // draw the SN cell lattice under the ANs
  double width_px = 1000.0;
  std::size_t max_cells = 20000;
};

namespace detail {

inline std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

// Pointy-top hexagon with circumradius `rad` around (cx, cy), already in
// screen units.
inline std::string hexagon_points(double cx, double cy, double rad) {
  std::string pts;
  for (int k = 0; k < 6; ++k) {
    const double a = std::numbers::pi / 6.0 + k * std::numbers::pi / 3.0;
    if (k) pts += ' ';
    pts += fmt("%.2f", cx + rad * std::cos(a)) + ',' + fmt("%.2f", cy - rad * std::sin(a));
  }
  return pts;
}

}  // namespace detail

/// SVG 1.1 drawing: AN hexagons (or range disks for disk-model placements),
/// tree edges as <line class="edge">, gateways and intermediate ANs marked by
/// class. y grows upward in the field and downward on screen.
inline std::string render_svg(const Placement& p, const json& meta, const SvgOptions& opt = {}) {
  const double R = p.frame.R();
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const Point c = p.nodes[i].cart;
    if (i == 0) {
      x0 = x1 = c.x;
      y0 = y1 = c.y;
    }
    x0 = std::min(x0, c.x);
    x1 = std::max(x1, c.x);
    y0 = std::min(y0, c.y);
    y1 = std::max(y1, c.y);
  }
  x0 -= 1.1 * R;
  y0 -= 1.1 * R;
  x1 += 1.1 * R;
  y1 += 1.1 * R;
  const double scale = opt.width_px / (x1 - x0);
  const double height = (y1 - y0) * scale;
  const auto sx = [&](double x) { return (x - x0) * scale; };
  const auto sy = [&](double y) { return (y1 - y) * scale; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << fmt("%.0f", opt.width_px) << "\" height=\"" << fmt("%.0f", std::ceil(height))
     << "\" viewBox=\"0 0 " << fmt("%.2f", opt.width_px) << ' ' << fmt("%.2f", height) << "\">\n"
     << "<metadata>" << detail::escape_xml(meta.dump()) << "</metadata>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (opt.cells) {
    const HcsFrame& f = p.frame;
    const HexCoord a = from_cartesian({x0, y0}, f);
    const HexCoord b = from_cartesian({x1, y1}, f);
    const std::int64_t ylo = std::min(a.y, b.y) - 1, yhi = std::max(a.y, b.y) + 1;
    const double span_x = (x1 - x0) / (std::numbers::sqrt3 * f.r);
    const auto est = static_cast<double>(yhi - ylo + 1) * (span_x + 2.0);
    if (est <= static_cast<double>(opt.max_cells)) {
      os << "<g class=\"cells\" fill=\"none\" stroke=\"#dddddd\" stroke-width=\"0.5\">\n";
      for (std::int64_t y = ylo; y <= yhi; ++y) {
        const HexCoord left = from_cartesian({x0, to_cartesian(HexCoord{0, y}, f).y}, f);
        for (std::int64_t x = left.x - 1;; ++x) {
          const Point c = to_cartesian(HexCoord{x, y}, f);
          if (c.x > x1 + f.r) break;
          os << "<polygon points=\"" << detail::hexagon_points(sx(c.x), sy(c.y), f.r * scale)
             << "\"/>\n";
        }
      }
      os << "</g>\n";
    }
  }

  os << "<g class=\"ranges\" fill-opacity=\"0.12\" stroke-width=\"1\">\n";
  for (const auto& v : p.nodes) {
    const char* color = v.kind == NodeKind::gateway ? "#1f77b4" : "#d62728";
    if (p.model == LinkModel::hcs) {
      os << "<polygon class=\"an\" points=\"" << detail::hexagon_points(sx(v.cart.x), sy(v.cart.y), R * scale)
         << "\" fill=\"" << color << "\" stroke=\"" << color << "\"/>\n";
    } else {
      os << "<circle class=\"an\" cx=\"" << fmt("%.2f", sx(v.cart.x)) << "\" cy=\""
         << fmt("%.2f", sy(v.cart.y)) << "\" r=\"" << fmt("%.2f", R * scale) << "\" fill=\""
         << color << "\" stroke=\"" << color << "\"/>\n";
    }
  }
  os << "</g>\n<g class=\"tree\" stroke=\"#333333\" stroke-width=\"1.5\">\n";
  for (const auto& e : p.edges) {
    const Point a = p.nodes.at(static_cast<std::size_t>(e.u)).cart;
    const Point b = p.nodes.at(static_cast<std::size_t>(e.v)).cart;
    os << "<line class=\"edge\" x1=\"" << fmt("%.2f", sx(a.x)) << "\" y1=\"" << fmt("%.2f", sy(a.y))
       << "\" x2=\"" << fmt("%.2f", sx(b.x)) << "\" y2=\"" << fmt("%.2f", sy(b.y)) << "\"/>\n";
  }
  os << "</g>\n<g class=\"nodes\">\n";
  for (const auto& v : p.nodes) {
    const bool gw = v.kind == NodeKind::gateway;
    os << "<circle class=\"" << (gw ? "gateway" : "intermediate") << "\" cx=\""
       << fmt("%.2f", sx(v.cart.x)) << "\" cy=\"" << fmt("%.2f", sy(v.cart.y)) << "\" r=\""
       << (gw ? "4" : "3") << "\" fill=\"" << (gw ? "#1f77b4" : "#d62728") << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace hexnet::io
