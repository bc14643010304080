#pragma once

#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ccstream/estimators.hpp"
#include "ccstream/nes.hpp"
#include "ccstream/oracle.hpp"
#include "ccstream/rng.hpp"
#include "ccstream/theory.hpp"

namespace ccstream {

enum class OrderMode { kShuffledPerRun, kFileOrder };

inline const char* to_string(OrderMode m) {
  return m == OrderMode::kShuffledPerRun ? "shuffled-per-run" : "fixed-file-order";
}

struct ExperimentSpec {
  std::vector<double> p_grid;
  std::uint32_t runs = 1000;  // k; at least 30
  std::uint64_t base_seed = 0;
  OrderMode order_mode = OrderMode::kShuffledPerRun;
  bool track_aux = true;
  std::uint32_t workers = 0;  // 0 = hardware concurrency

  void validate() const {
    if (p_grid.empty()) throw std::invalid_argument("empty p grid");
    for (double p : p_grid)
      if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("grid p must be in (0,1]");
    if (runs < 30) throw std::invalid_argument("need at least k = 30 runs");
  }
};

/// Final counters of one NES pass.
struct RunCounters {
  std::uint64_t delta_g, lambda_g, phi_g, psi_g, omega_prime_g, sampled;
};

namespace detail {

/// Seed derivation: every run's seeds are a pure function of (base_seed,
/// grid point index, run index). Recorded in reports as the seed rule.
inline constexpr const char* kSeedRule =
    "point=derive(base,point_index); run=derive(point,run_index); "
    "shuffle=derive(run,0); sampling=derive(run,1)";

inline void parallel_runs(std::uint32_t runs, std::uint32_t workers,
                          const std::function<void(std::uint32_t, std::uint32_t)>& chunk_fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, runs);
  if (workers <= 1) {
    chunk_fn(0, runs);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint32_t per = runs / workers, extra = runs % workers;
  std::uint32_t begin = 0;
  for (std::uint32_t w = 0; w < workers; ++w) {
    const std::uint32_t len = per + (w < extra ? 1 : 0);
    pool.emplace_back([&, w, begin, len] {
      try {
        chunk_fn(begin, begin + len);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
    begin += len;
  }
  for (auto& t : pool) t.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace detail

/// Runs `runs` independent NES passes at probability p and returns the
/// per-run counters indexed by run number. Parallel over runs; results do
/// not depend on the worker count. Streams come from the harness itself
/// (index permutations of the edge list), so duplicate checking is off.
inline std::vector<RunCounters> monte_carlo_runs(const Graph& g, double p, bool track_aux,
                                                 OrderMode order, std::uint64_t point_seed,
                                                 std::uint32_t runs, std::uint32_t workers = 0) {
  std::vector<RunCounters> out(runs);
  const auto& edges = g.edges();
  detail::parallel_runs(runs, workers, [&](std::uint32_t begin, std::uint32_t end) {
    NesConfig cfg;
    cfg.p = p;
    cfg.track_aux = track_aux;
    cfg.check_duplicates = false;
    NesState state(g.num_nodes(), cfg);
    std::vector<std::uint32_t> perm(edges.size());
    for (std::uint32_t r = begin; r < end; ++r) {
      const std::uint64_t run_seed = derive_seed(point_seed, r);
      cfg.seed = derive_seed(run_seed, 1);
      state.reset(cfg);
      std::iota(perm.begin(), perm.end(), 0u);
      if (order == OrderMode::kShuffledPerRun) {
        Rng shuffle_rng(derive_seed(run_seed, 0));
        shuffle_indices(perm, shuffle_rng);
      }
      for (std::uint32_t idx : perm) state.process_edge(edges[idx]);
      out[r] = RunCounters{state.delta_g, state.lambda_g, state.phi_g,
                           state.psi_g,  state.omega_prime_g, state.sampled_edges()};
    }
  });
  return out;
}

namespace detail {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n-1)
};

inline MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd r;
  if (xs.empty()) return r;
  r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.std = std::sqrt(ss / double(xs.size() - 1));
  }
  return r;
}

}  // namespace detail

/// Observed-vs-expected mean of one streaming counter over many runs.
struct CounterCheck {
  std::string name;
  double observed_mean = 0.0;
  double observed_std = 0.0;
  double expected = 0.0;
  double se = 0.0;  // observed_std / sqrt(runs)
  double z = 0.0;   // (observed_mean - expected) / se; 0 when se == 0 and means agree
};

/// Expectation check for all five counters against Δp²/3, Λp, (8/15)Φp³,
/// (1/3)Ψp and (5/12)Ω′p² over `runs` shuffled streams.
struct AuxExpectationReport {
  double p = 0.0;
  std::uint32_t runs = 0;
  std::uint64_t base_seed = 0;
  CounterCheck delta_g, lambda_g, phi_g, psi_g, omega_prime_g;
};

inline AuxExpectationReport aux_expectations_check(const Graph& g, const ExactStats& stats,
                                                   const NesConfig& cfg, std::uint32_t runs,
                                                   std::uint32_t workers = 0) {
  cfg.validate();
  if (runs < 30) throw std::invalid_argument("expectation check needs at least 30 runs");
  const auto counters = monte_carlo_runs(g, cfg.p, true, OrderMode::kShuffledPerRun,
                                                 cfg.seed, runs, workers);
  const double p = cfg.p;
  auto check = [&](const char* name, auto pick, double expected) {
    std::vector<double> xs(runs);
    for (std::uint32_t r = 0; r < runs; ++r) xs[r] = double(pick(counters[r]));
    const auto ms = detail::mean_std(xs);
    CounterCheck c;
    c.name = name;
    c.observed_mean = ms.mean;
    c.observed_std = ms.std;
    c.expected = expected;
    c.se = ms.std / std::sqrt(double(runs));
    if (c.se > 0.0) c.z = (c.observed_mean - c.expected) / c.se;
    else c.z = (c.observed_mean == c.expected) ? 0.0
               : std::numeric_limits<double>::infinity();
    return c;
  };
  AuxExpectationReport rep;
  rep.p = p;
  rep.runs = runs;
  rep.base_seed = cfg.seed;
  rep.delta_g = check("delta_g", [](const auto& c) { return c.delta_g; },
                      double(stats.delta) * p * p / 3.0);
  rep.lambda_g = check("lambda_g", [](const auto& c) { return c.lambda_g; },
                       double(stats.lambda) * p);
  rep.phi_g = check("phi_g", [](const auto& c) { return c.phi_g; },
                    (8.0 / 15.0) * double(stats.phi) * p * p * p);
  rep.psi_g = check("psi_g", [](const auto& c) { return c.psi_g; },
                    double(stats.psi) * p / 3.0);
  rep.omega_prime_g = check("omega_prime_g", [](const auto& c) { return c.omega_prime_g; },
                            (5.0 / 12.0) * double(stats.omega_prime) * p * p);
  return rep;
}

/// Aggregates for one grid point of an experiment. Observed statistics are
/// always measured against the oracle C. Runs with lambda_g = 0 or
/// delta_g = 0 cannot produce a full estimate report and are excluded from
/// the Ĉ statistics (and counted); delta_hat/lambda_hat means use all runs,
/// since 0 is a valid estimate there.
struct GridPointResult {
  double p = 0.0;
  std::uint32_t k = 0;
  std::uint32_t excluded = 0;
  std::uint32_t rse_fallback_count = 0;
  std::uint32_t correction_overflow_count = 0;
  double observed_rse = 0.0;      // std(Ĉ) / C
  double observed_rb = 0.0;       // (mean(Ĉ) - C) / C
  double observed_rb_plus = 0.0;  // (mean(Ĉ⁺) - C) / C
  double observed_rse_se = 0.0;   // Monte-Carlo SE of observed_rb: std(Ĉ)/(C·sqrt(k))
  double mean_rse_full = 0.0;
  double mean_rse_simple = 0.0;
  double mean_rb_hat = 0.0;
  double mean_c_hat = 0.0;
  double mean_delta_hat = 0.0;
  double mean_lambda_hat = 0.0;
  double se_delta_hat = 0.0;
  double se_lambda_hat = 0.0;
  double rse_theory = 0.0;
  double rb_theory = 0.0;
};

struct ExperimentReport {
  std::string graph_name;
  ExactStats oracle;
  std::uint64_t base_seed = 0;
  std::uint32_t runs = 0;
  std::string order_mode;
  std::string generator;  // PRNG recorded for reproducibility
  std::string seed_rule;
  bool track_aux = true;
  std::vector<GridPointResult> points;
};

/// Runs the spec's grid: k independent NES passes per p, each over a fresh
/// shuffled stream (or the fixed file order), aggregated deterministically
/// in run-index order.
inline ExperimentReport run_experiment(const Graph& g, const ExactStats& stats,
                                       const ExperimentSpec& spec,
                                       const std::string& graph_name) {
  spec.validate();
  const double c_true = stats.clustering;
  ExperimentReport report;
  report.graph_name = graph_name;
  report.oracle = stats;
  report.base_seed = spec.base_seed;
  report.runs = spec.runs;
  report.order_mode = to_string(spec.order_mode);
  report.generator = kGeneratorName;
  report.seed_rule = detail::kSeedRule;
  report.track_aux = spec.track_aux;

  for (std::size_t pi = 0; pi < spec.p_grid.size(); ++pi) {
    const double p = spec.p_grid[pi];
    const std::uint64_t point_seed = derive_seed(spec.base_seed, pi);
    const auto counters = monte_carlo_runs(g, p, spec.track_aux, spec.order_mode,
                                                   point_seed, spec.runs, spec.workers);
    GridPointResult gp;
    gp.p = p;
    gp.k = spec.runs;

    std::vector<double> c_hats, c_plus, rse_fulls, rse_simples, rb_hats;
    std::vector<double> delta_hats(spec.runs), lambda_hats(spec.runs);
    for (std::uint32_t r = 0; r < spec.runs; ++r) {
      const auto& c = counters[r];
      delta_hats[r] = est::delta_hat(c.delta_g, p);
      lambda_hats[r] = est::lambda_hat(c.lambda_g, p);
      if (c.lambda_g == 0 || c.delta_g == 0) {
        ++gp.excluded;
        continue;
      }
      const double ch = est::c_hat(c.delta_g, c.lambda_g, p);
      c_hats.push_back(ch);
      rse_simples.push_back(est::rse_simple(c.delta_g));
      if (spec.track_aux) {
        bool fell_back = false;
        rse_fulls.push_back(
            est::rse_full(c.delta_g, c.lambda_g, c.phi_g, c.psi_g, c.omega_prime_g, &fell_back));
        if (fell_back) ++gp.rse_fallback_count;
        const double rb = est::rb_hat(c.delta_g, c.lambda_g, c.psi_g, c.omega_prime_g);
        rb_hats.push_back(rb);
        if (1.0 + rb <= 0.0) {
          ++gp.correction_overflow_count;
          c_plus.push_back(ch);
        } else {
          c_plus.push_back(ch / (1.0 + rb));
        }
      }
    }
    if (c_hats.empty())
      throw std::runtime_error("all runs undefined at p = " + std::to_string(p) +
                               " (sample too small)");

    const auto ch = detail::mean_std(c_hats);
    gp.mean_c_hat = ch.mean;
    gp.observed_rse = ch.std / c_true;
    gp.observed_rb = (ch.mean - c_true) / c_true;
    gp.observed_rse_se = ch.std / (c_true * std::sqrt(double(c_hats.size())));
    if (spec.track_aux) {
      gp.observed_rb_plus = (detail::mean_std(c_plus).mean - c_true) / c_true;
      gp.mean_rse_full = detail::mean_std(rse_fulls).mean;
      gp.mean_rb_hat = detail::mean_std(rb_hats).mean;
    }
    gp.mean_rse_simple = detail::mean_std(rse_simples).mean;
    const auto dh = detail::mean_std(delta_hats);
    const auto lh = detail::mean_std(lambda_hats);
    gp.mean_delta_hat = dh.mean;
    gp.mean_lambda_hat = lh.mean;
    gp.se_delta_hat = dh.std / std::sqrt(double(spec.runs));
    gp.se_lambda_hat = lh.std / std::sqrt(double(spec.runs));
    if (stats.delta > 0 && stats.lambda > 0 && p < 1.0) {
      gp.rse_theory = rse_theory(stats, p);
      gp.rb_theory = rb_theory(stats, p);
    }
    report.points.push_back(gp);
  }
  return report;
}

struct UnreachableTarget : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Smallest p in (0,1) with rse_theory(stats, p) <= target, by bisection to
/// 1e-6 relative. The graph-side RSE is strictly decreasing in p on the
/// region where its bracket is positive, and the bracket's zero crossing
/// (RSE -> 0) lies beyond any target of interest, so bisection on
/// sqrt(max(bracket, 0)) is safe.
inline double solve_p_for_target_rse(const ExactStats& stats, double target) {
  if (!(target > 0.0) || target >= 1.0)
    throw std::invalid_argument("target RSE must be in (0,1)");
  if (stats.delta == 0 || stats.lambda == 0)
    throw UndefinedValue("target-RSE solve needs delta > 0 and lambda > 0");
  auto rse_at = [&](double p) {
    return std::sqrt(std::max(rse_theory_bracket(stats, p), 0.0));
  };
  double lo = 1e-12, hi = 1.0 - 1e-9;
  if (rse_at(hi) > target)
    throw UnreachableTarget("target RSE " + std::to_string(target) +
                            " unreachable even at p -> 1");
  while ((hi - lo) / hi > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (rse_at(mid) <= target) hi = mid;
    else lo = mid;
  }
  return hi;
}

enum class FigKind { kFig2, kFig3, kFig4 };

/// Long-format plot data: one metric value per row.
///   fig2: observed RSE vs the Theorem-1 estimate mean(Δg^{-1/2})
///   fig3: observed RB of Ĉ vs the mean estimated RB
///   fig4: observed RB of Ĉ vs observed RB of the corrected Ĉ⁺
inline std::string emit_fig_data(const ExperimentReport& report, FigKind fig) {
  std::string csv = "graph,p,series,metric,value\n";
  auto row = [&](const GridPointResult& gp, const char* series, const char* metric,
                 double value) {
    csv += report.graph_name + "," + std::to_string(gp.p) + "," + series + "," + metric +
           "," + std::to_string(value) + "\n";
  };
  for (const auto& gp : report.points) {
    switch (fig) {
      case FigKind::kFig2:
        row(gp, "observed", "rse", gp.observed_rse);
        row(gp, "estimated", "rse", gp.mean_rse_simple);
        break;
      case FigKind::kFig3:
        row(gp, "observed", "rb", gp.observed_rb);
        row(gp, "estimated", "rb", gp.mean_rb_hat);
        break;
      case FigKind::kFig4:
        row(gp, "observed", "rb", gp.observed_rb);
        row(gp, "corrected", "rb", gp.observed_rb_plus);
        break;
    }
  }
  return csv;
}

}  // namespace ccstream
