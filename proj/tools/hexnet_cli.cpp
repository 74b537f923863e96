// hexnet: generate scenarios, run placements and sweeps, render placements.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hexnet/baselines.hpp"
#include "hexnet/egdo.hpp"
#include "hexnet/experiments.hpp"
#include "hexnet/io.hpp"

namespace {

using hexnet::io::json;

enum Exit : int { kOk = 0, kConfig = 2, kBudget = 3, kInvariant = 4 };

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Geometry {
  double field_w = 0.0;
  double field_h = 0.0;
  double r = 50.0;
  double R = 0.0;  // 0: derive from n
  int n = -1;      // -1: derive from R, else 0
};

// Resolves n from R = (12n+7) r when R is given.
int resolve_n(const Geometry& g) {
  if (!(g.r > 0.0)) throw ConfigError("--r must be positive");
  if (g.R <= 0.0) return g.n < 0 ? 0 : g.n;
  const double ratio = g.R / g.r;
  const double k = std::round(ratio);
  if (std::abs(ratio - k) > 1e-9 * std::max(1.0, ratio) || k < 7 ||
      static_cast<std::int64_t>(k - 7) % 12 != 0) {
    std::ostringstream os;
    os << "R=" << g.R << " is not (12n+7)*r for r=" << g.r << " and integer n >= 0 (R/r = "
       << ratio << ")";
    throw ConfigError(os.str());
  }
  const int n = static_cast<int>((static_cast<std::int64_t>(k) - 7) / 12);
  if (g.n >= 0 && g.n != n) throw ConfigError("--n and --R disagree");
  return n;
}

void add_geometry(CLI::App* cmd, Geometry& g) {
  cmd->add_option("--field", g.field_w, "Field width in meters")->required();
  cmd->add_option("--field-h", g.field_h, "Field height in meters (default: width)");
  cmd->add_option("--r", g.r, "SN radius / cell edge in meters")->capture_default_str();
  cmd->add_option("--R", g.R, "AN range in meters; must equal (12n+7)*r");
  cmd->add_option("--n", g.n, "AN size index (range is (12n+7)*r)");
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> out;
  try {
    if (text.find(':') != std::string::npos) {
      std::vector<int> part;
      std::stringstream ss(text);
      std::string tok;
      while (std::getline(ss, tok, ':')) part.push_back(std::stoi(tok));
      if (part.size() != 3 || part[2] <= 0 || part[0] > part[1]) throw ConfigError("bad range");
      for (int c = part[0]; c <= part[1]; c += part[2]) out.push_back(c);
    } else {
      std::stringstream ss(text);
      std::string tok;
      while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    }
  } catch (const std::logic_error&) {
    throw ConfigError("--clusters expects a:b:step or a comma list, got '" + text + "'");
  }
  if (out.empty()) throw ConfigError("--clusters is empty");
  for (int c : out) {
    if (c < 1) throw ConfigError("cluster counts must be >= 1");
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

hexnet::PerturbMode parse_mode(const std::string& m) {
  if (m == "partial") return hexnet::PerturbMode::partial;
  if (m == "global") return hexnet::PerturbMode::global;
  throw ConfigError("--mode must be partial or global");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hexagonal-lattice AN placement for clustered heterogeneous networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hexnet::io::kToolVersion);

  // generate
  Geometry gen_geo;
  int gen_count = 0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Write a random scenario");
  add_geometry(gen, gen_geo);
  gen->add_option("--clusters", gen_count, "Number of clusters")->required();
  gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // place
  std::string place_scenario, place_algo = "egdo", place_out;
  std::uint64_t place_budget = hexnet::ExhaustiveOptions{}.budget;
  bool place_prune = false, place_timing = false;
  auto* place = app.add_subcommand("place", "Run one placement algorithm on a scenario");
  place->add_option("--scenario", place_scenario, "Scenario JSON")->required();
  place->add_option("--algorithm", place_algo, "Algorithm")
      ->check(CLI::IsMember(hexnet::algorithm_names()))
      ->capture_default_str();
  place->add_option("--out", place_out, "Placement JSON (default stdout)");
  place->add_option("--budget", place_budget, "Exhaustive search expansion budget")
      ->capture_default_str();
  place->add_flag("--prune-hull", place_prune, "Exhaustive: only cells near the gateway hull");
  place->add_flag("--timing", place_timing, "Record wall time in outputs");

  // sweep
  Geometry sw_geo;
  std::string sw_counts, sw_mode = "partial", sw_algos = "egdo,stasmt", sw_out;
  int sw_scenarios = 10, sw_trials = 100;
  std::uint64_t sw_seed = 1;
  bool sw_timing = false, sw_threshold = false;
  auto* sweep = app.add_subcommand("sweep", "Perturbation sweep over cluster counts (CSV)");
  add_geometry(sweep, sw_geo);
  sweep->add_option("--clusters", sw_counts, "a:b:step or comma list")->required();
  sweep->add_option("--scenarios", sw_scenarios, "Scenarios per cluster count")
      ->capture_default_str();
  sweep->add_option("--trials", sw_trials, "Perturbation trials per scenario")
      ->capture_default_str();
  sweep->add_option("--mode", sw_mode, "partial|global")->capture_default_str();
  sweep->add_option("--algorithms", sw_algos, "Comma list")->capture_default_str();
  sweep->add_option("--seed", sw_seed, "Master seed")->capture_default_str();
  sweep->add_option("--out", sw_out, "CSV file (default stdout)");
  sweep->add_flag("--timing", sw_timing, "Fill the runtime_ms column");
  sweep->add_flag("--threshold", sw_threshold, "Print the RF zero-crossing estimate");

  // render
  std::string rd_in, rd_out;
  bool rd_cells = false;
  auto* render = app.add_subcommand("render", "Draw a placement as SVG");
  render->add_option("--placement", rd_in, "Placement JSON")->required();
  render->add_option("--out", rd_out, "SVG file (default stdout)");
  render->add_flag("--cells", rd_cells, "Draw the SN cell lattice");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*gen) {
      const int n = resolve_n(gen_geo);
      const double h = gen_geo.field_h > 0 ? gen_geo.field_h : gen_geo.field_w;
      if (gen_count < 1) throw ConfigError("--clusters must be >= 1");
      if (!(gen_geo.field_w > 0.0) || !(h > 0.0)) throw ConfigError("field must be positive");
      const auto s = hexnet::generate_scenario({gen_geo.field_w, h, gen_geo.r, n, gen_count, gen_seed});
      json doc = hexnet::io::scenario_to_json(s);
      doc["meta"] = hexnet::io::make_meta(
          "generate", {{"field_m", {gen_geo.field_w, h}}, {"r_m", gen_geo.r}, {"n", n},
                       {"R_m", s.R()}, {"clusters", gen_count}, {"seed", gen_seed}});
      write_text(gen_out, doc.dump(2) + "\n");
      return kOk;
    }

    if (*place) {
      hexnet::Scenario s;
      try {
        s = hexnet::io::scenario_from_json(read_json(place_scenario));
      } catch (const std::exception& e) {
        throw ConfigError(place_scenario + ": " + e.what());
      }
      if (s.clusters.empty()) throw ConfigError("scenario has no clusters");
      const json meta = hexnet::io::make_meta(
          "place", {{"scenario", place_scenario}, {"algorithm", place_algo},
                    {"budget", place_budget}, {"prune_hull", place_prune},
                    {"seed", s.seed}, {"timing", place_timing}});

      hexnet::Placement p;
      if (place_algo == "exhaustive") {
        const auto res = hexnet::exhaustive_search(s, {place_prune, place_budget});
        if (res.status != hexnet::SearchStatus::optimal) {
          json doc{{"meta", meta},
                   {"status", "budget_exceeded"},
                   {"expansions", res.expansions},
                   {"feasible_cells", res.feasible_cells}};
          write_text(place_out, doc.dump(2) + "\n");
          std::cerr << "exhaustive search exceeded the budget of " << place_budget
                    << " expansions\n";
          return kBudget;
        }
        p = res.placement;
      } else {
        p = hexnet::run_algorithm(place_algo, s);
      }
      json doc = hexnet::io::placement_to_json(p, place_timing);
      doc["meta"] = meta;
      doc["status"] = "ok";
      const bool connected = hexnet::placement_connected(p);
      write_text(place_out, doc.dump(2) + "\n");
      if (!place_out.empty() && place_out != "-") {
        std::cout << "algorithm=" << p.algorithm << " clusters=" << p.gateway_count()
                  << " eta=" << p.eta << " iterations=" << p.iterations
                  << " connected=" << (connected ? "yes" : "no");
        if (place_timing) std::cout << " wall_ms=" << hexnet::io::fmt("%.3f", p.wall_ms);
        std::cout << '\n';
      }
      if (!connected) {
        std::cerr << "internal error: placement is not connected\n";
        return kInvariant;
      }
      return kOk;
    }

    if (*sweep) {
      hexnet::SweepConfig cfg;
      cfg.n = resolve_n(sw_geo);
      cfg.field_w = sw_geo.field_w;
      cfg.field_h = sw_geo.field_h > 0 ? sw_geo.field_h : sw_geo.field_w;
      if (!(cfg.field_w > 0.0) || !(cfg.field_h > 0.0)) throw ConfigError("field must be positive");
      cfg.r = sw_geo.r;
      cfg.cluster_counts = parse_counts(sw_counts);
      cfg.scenarios = sw_scenarios;
      cfg.trials = sw_trials;
      cfg.mode = parse_mode(sw_mode);
      cfg.master_seed = sw_seed;
      cfg.algorithms = split_list(sw_algos);
      if (cfg.scenarios < 1 || cfg.trials < 1) throw ConfigError("--scenarios and --trials must be >= 1");
      for (const auto& a : cfg.algorithms) {
        const auto& names = hexnet::algorithm_names();
        if (std::find(names.begin(), names.end(), a) == names.end()) {
          throw ConfigError("unknown algorithm " + a);
        }
      }

      const auto rows = hexnet::run_sweep(cfg);
      const json meta = hexnet::io::make_meta(
          "sweep", {{"field_m", {cfg.field_w, cfg.field_h}}, {"r_m", cfg.r}, {"n", cfg.n},
                    {"R_m", hexnet::lambda_of(cfg.n) * cfg.r}, {"clusters", cfg.cluster_counts},
                    {"scenarios", cfg.scenarios}, {"trials", cfg.trials},
                    {"mode", std::string(hexnet::to_string(cfg.mode))},
                    {"algorithms", cfg.algorithms}, {"seed", cfg.master_seed},
                    {"timing", sw_timing}});
      std::ostringstream csv;
      hexnet::io::write_sweep_csv(csv, rows, meta, sw_timing);
      write_text(sw_out, csv.str());

      if (sw_threshold) {
        std::map<int, std::vector<double>> rf, eta;
        for (const auto& r : rows) {
          if (r.algorithm == "egdo" && r.rf) rf[r.clusters].push_back(*r.rf);
          if (r.algorithm == "stasmt") eta[r.clusters].push_back(r.eta);
        }
        std::vector<hexnet::SweepPoint> pts;
        for (const auto& [c, v] : rf) {
          pts.push_back({static_cast<double>(c), hexnet::mean(v), hexnet::mean(eta[c])});
        }
        const double R = hexnet::lambda_of(cfg.n) * cfg.r;
        const auto t = hexnet::threshold_estimate(pts, cfg.field_w * cfg.field_h, R);
        std::ostream& os = (sw_out.empty() || sw_out == "-") ? std::cerr : std::cout;
        if (t.reached) {
          os << "threshold clusters=" << hexnet::io::fmt("%.2f", t.clusters)
             << " eta=" << hexnet::io::fmt("%.2f", t.eta)
             << " density=" << hexnet::io::fmt("%.5f", t.density) << '\n';
        } else {
          os << "threshold not reached\n";
        }
      }
      return kOk;
    }

    if (*render) {
      hexnet::Placement p;
      json doc;
      try {
        doc = read_json(rd_in);
        p = hexnet::io::placement_from_json(doc);
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw ConfigError(rd_in + ": " + e.what());
      }
      json meta = hexnet::io::make_meta("render", {{"placement", rd_in}, {"cells", rd_cells}});
      if (doc.contains("meta")) meta["source"] = doc["meta"];
      hexnet::io::SvgOptions opt;
      opt.cells = rd_cells;
      write_text(rd_out, hexnet::io::render_svg(p, meta, opt));
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const hexnet::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariant;
  }
  return kOk;
}
