#pragma once

// Experiment harness: uniform scenarios, perturbation trials, the robustness
// factor, sweeps over cluster counts and the sparsity threshold estimate.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "hexnet/baselines.hpp"
#include "hexnet/egdo.hpp"
#include "hexnet/graph.hpp"
#include "hexnet/placement.hpp"

namespace hexnet {

/// 53-bit uniform double in [0, 1) from a 64-bit engine.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct ScenarioConfig {
  double field_w = 0.0;
  double field_h = 0.0;
  double r = 50.0;
  int n = 0;
  int clusters = 0;
  std::uint64_t seed = 0;
};

/// Cluster positions i.i.d. uniform over the field.
inline Scenario generate_scenario(const ScenarioConfig& c) {
  if (c.clusters < 1) throw std::invalid_argument("generate_scenario: need at least one cluster");
  if (!(c.field_w > 0.0) || !(c.field_h > 0.0)) {
    throw std::invalid_argument("generate_scenario: field must be positive");
  }
  if (!(c.r > 0.0)) throw std::invalid_argument("generate_scenario: r must be positive");
  if (c.n < 0) throw std::invalid_argument("generate_scenario: n must be non-negative");
  Scenario s{c.field_w, c.field_h, c.r, c.n, {}, c.seed};
  std::mt19937_64 rng(c.seed);
  s.clusters.reserve(static_cast<std::size_t>(c.clusters));
  for (int i = 0; i < c.clusters; ++i) {
    const double x = uniform01(rng) * c.field_w;
    const double y = uniform01(rng) * c.field_h;
    s.clusters.push_back({x, y});
  }
  return s;
}

enum class PerturbMode { partial, global };

inline std::string_view to_string(PerturbMode m) {
  return m == PerturbMode::partial ? "partial" : "global";
}

/// Node positions after moving each affected node 4r in a uniformly random
/// direction. Partial mode moves gateways only. Draws are taken in node order,
/// so two placements of the same scenario see identical gateway moves.
inline std::vector<Point> perturb(const Placement& p, PerturbMode mode, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double amp = 4.0 * p.frame.r;
  std::vector<Point> out;
  out.reserve(p.nodes.size());
  for (const auto& v : p.nodes) {
    Point q = v.cart;
    if (mode == PerturbMode::global || v.kind == NodeKind::gateway) {
      const double a = 2.0 * std::numbers::pi * uniform01(rng);
      q.x += amp * std::cos(a);
      q.y += amp * std::sin(a);
    }
    out.push_back(q);
  }
  return out;
}

/// Disk graph with threshold 2R is connected.
inline bool post_perturbation_connected(std::span<const Point> pts, double R) {
  if (pts.size() <= 1) return true;
  const double d2 = 4.0 * R * R;
  DisjointSets sets(pts.size());
  std::size_t parts = pts.size();
  for (std::size_t i = 0; i < pts.size() && parts > 1; ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[i].x - pts[j].x;
      const double dy = pts[i].y - pts[j].y;
      if (dx * dx + dy * dy <= d2 && sets.unite(i, j)) --parts;
    }
  }
  return parts == 1;
}

/// (pr_egdo - pr_smt) * eta_smt / eta_egdo; nullopt when eta_egdo is 0.
inline std::optional<double> robustness_factor(double pr_egdo, double pr_smt, double eta_egdo,
                                               double eta_smt) {
  if (eta_egdo <= 0.0) return std::nullopt;
  return (pr_egdo - pr_smt) * eta_smt / eta_egdo;
}

/// Seed of perturbation trial `t` under `master`.
inline std::uint64_t trial_seed(std::uint64_t master, int t) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(t), 0x5eedu};
  std::array<std::uint32_t, 2> w{};
  seq.generate(w.begin(), w.end());
  return (std::uint64_t{w[0]} << 32) | w[1];
}

/// Fraction of trials after which the placement stays disk-connected.
inline double survival_probability(const Placement& p, PerturbMode mode, int trials,
                                   std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("survival_probability: need at least one trial");
  int ok = 0;
  for (int t = 0; t < trials; ++t) {
    const auto pts = perturb(p, mode, trial_seed(seed, t));
    ok += post_perturbation_connected(pts, p.frame.R()) ? 1 : 0;
  }
  return static_cast<double>(ok) / static_cast<double>(trials);
}

struct PerturbationReport {
  PerturbMode mode = PerturbMode::partial;
  int trials = 0;
  double pr_egdo = 0.0;
  double pr_smt = 0.0;
  int eta_egdo = 0;
  int eta_smt = 0;
  std::optional<double> rf;
};

/// Paired trials: both placements see the same trial seeds.
inline PerturbationReport perturbation_report(const Placement& egdo, const Placement& smt,
                                              PerturbMode mode, int trials, std::uint64_t seed) {
  PerturbationReport rep;
  rep.mode = mode;
  rep.trials = trials;
  rep.pr_egdo = survival_probability(egdo, mode, trials, seed);
  rep.pr_smt = survival_probability(smt, mode, trials, seed);
  rep.eta_egdo = egdo.eta;
  rep.eta_smt = smt.eta;
  rep.rf = robustness_factor(rep.pr_egdo, rep.pr_smt, rep.eta_egdo, rep.eta_smt);
  return rep;
}

// ---------------------------------------------------------------------------
// Algorithms by name

inline const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"egdo", "gdo", "stasmt", "dynsmt", "smt-hcs",
                                              "exhaustive"};
  return names;
}

/// Runs a non-exhaustive algorithm by name.
inline Placement run_algorithm(std::string_view name, const Scenario& s) {
  if (name == "egdo") return run_egdo(s);
  if (name == "gdo") return run_gdo(s);
  if (name == "stasmt") return sta_smt(s);
  if (name == "dynsmt") return dyn_smt(s);
  if (name == "smt-hcs") return smt_in_hcs(s);
  if (name == "exhaustive") {
    auto res = exhaustive_search(s);
    if (res.status != SearchStatus::optimal) {
      throw std::runtime_error("exhaustive search exceeded its budget");
    }
    return res.placement;
  }
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepConfig {
  double field_w = 20'000.0;
  double field_h = 20'000.0;
  double r = 50.0;
  int n = 7;
  std::vector<int> cluster_counts;
  int scenarios = 10;  // per cluster count
  int trials = 100;    // perturbations per scenario
  PerturbMode mode = PerturbMode::partial;
  std::uint64_t master_seed = 1;
  std::vector<std::string> algorithms{"egdo", "stasmt"};
};

/// One scenario run of one algorithm. rf is filled on egdo rows when stasmt
/// ran on the same scenario.
struct SweepRow {
  int scenario_id = 0;
  int clusters = 0;
  std::string algorithm;
  int eta = 0;
  double runtime_ms = 0.0;
  PerturbMode mode = PerturbMode::partial;
  int trials = 0;
  double pr = 0.0;
  std::optional<double> rf;
};

inline std::uint64_t scenario_seed(std::uint64_t master, int clusters, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(clusters), static_cast<std::uint32_t>(index)};
  std::array<std::uint32_t, 2> w{};
  seq.generate(w.begin(), w.end());
  return (std::uint64_t{w[0]} << 32) | w[1];
}

inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.cluster_counts.empty()) throw std::invalid_argument("run_sweep: no cluster counts");
  if (cfg.scenarios < 1 || cfg.trials < 1) throw std::invalid_argument("run_sweep: empty sweep");
  for (const auto& a : cfg.algorithms) {
    if (std::find(algorithm_names().begin(), algorithm_names().end(), a) ==
        algorithm_names().end()) {
      throw std::invalid_argument("run_sweep: unknown algorithm " + a);
    }
  }

  std::vector<SweepRow> rows;
  int id = 0;
  for (const int count : cfg.cluster_counts) {
    for (int i = 0; i < cfg.scenarios; ++i, ++id) {
      const std::uint64_t seed = scenario_seed(cfg.master_seed, count, i);
      const Scenario s =
          generate_scenario({cfg.field_w, cfg.field_h, cfg.r, cfg.n, count, seed});
      std::optional<std::size_t> egdo_row, smt_row;
      for (const auto& a : cfg.algorithms) {
        const Placement p = run_algorithm(a, s);
        SweepRow row{id, count, a, p.eta, p.wall_ms, cfg.mode, cfg.trials, 0.0, std::nullopt};
        row.pr = survival_probability(p, cfg.mode, cfg.trials, seed);
        if (a == "egdo") egdo_row = rows.size();
        if (a == "stasmt") smt_row = rows.size();
        rows.push_back(std::move(row));
      }
      if (egdo_row && smt_row) {
        auto& e = rows[*egdo_row];
        const auto& m = rows[*smt_row];
        e.rf = robustness_factor(e.pr, m.pr, e.eta, m.eta);
      }
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Statistics

inline double mean(std::span<const double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sample_stddev(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

inline double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Normal-approximation 95% interval for the mean.
inline Interval ci95(std::span<const double> v) {
  const double m = mean(v);
  const double half =
      1.959963984540054 * sample_stddev(v) / std::sqrt(static_cast<double>(v.size()));
  return {m - half, m + half};
}

namespace detail {
inline std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}
}  // namespace detail

struct Correlation {
  double rho = 0.0;
  double p_value = 1.0;  // two-sided
};

/// Spearman rank correlation with the t-approximation p-value.
inline Correlation spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) {
    throw std::invalid_argument("spearman: need at least 3 paired samples");
  }
  const auto rx = detail::ranks(x);
  const auto ry = detail::ranks(y);
  const double mx = mean(rx), my = mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  Correlation c;
  if (sxx == 0.0 || syy == 0.0) return c;
  c.rho = sxy / std::sqrt(sxx * syy);
  const double df = static_cast<double>(x.size()) - 2.0;
  if (std::abs(c.rho) >= 1.0) {
    c.p_value = 0.0;
    return c;
  }
  const double t = c.rho * std::sqrt(df / (1.0 - c.rho * c.rho));
  const boost::math::students_t dist(df);
  c.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return c;
}

// ---------------------------------------------------------------------------
// Threshold

struct SweepPoint {
  double clusters = 0.0;
  double mean_rf = 0.0;
  double mean_eta = 0.0;  // intermediate ANs placed by the SMT baseline
};

struct ThresholdEstimate {
  bool reached = false;
  double clusters = 0.0;  // interpolated zero crossing of mean RF
  double eta = 0.0;       // interpolated baseline AN count there
  double density = 0.0;   // field area / (R^2 * (clusters + eta))
};

/// First sign change of mean RF (positive to non-positive) in ascending
/// cluster order, located by linear interpolation.
inline ThresholdEstimate threshold_estimate(std::vector<SweepPoint> pts, double field_area,
                                            double R) {
  std::sort(pts.begin(), pts.end(),
            [](const SweepPoint& a, const SweepPoint& b) { return a.clusters < b.clusters; });
  ThresholdEstimate t;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[i + 1];
    if (a.mean_rf > 0.0 && b.mean_rf <= 0.0) {
      const double f = a.mean_rf / (a.mean_rf - b.mean_rf);
      t.reached = true;
      t.clusters = a.clusters + f * (b.clusters - a.clusters);
      t.eta = a.mean_eta + f * (b.mean_eta - a.mean_eta);
      t.density = field_area / (R * R * (t.clusters + t.eta));
      return t;
    }
  }
  return t;
}

/// Normalised density at a given cluster count and AN cost.
inline double normalized_density(double field_area, double R, double clusters, double eta) {
  return field_area / (R * R * (clusters + eta));
}

}  // namespace hexnet
