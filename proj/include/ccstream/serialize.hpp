#pragma once

#include <cmath>
#include <string>

#include <json.hpp>

#include "ccstream/edge_list.hpp"
#include "ccstream/estimators.hpp"
#include "ccstream/harness.hpp"
#include "ccstream/oracle.hpp"
#include "ccstream/theory.hpp"

// JSON is the canonical machine-readable output; CSV is emitted additionally
// for plotting. nlohmann::json keeps object keys sorted, so serialization is
// deterministic and reports can be compared byte-for-byte.

namespace ccstream {

namespace detail {
inline nlohmann::json finite_or_null(double v) {
  if (std::isnan(v) || std::isinf(v)) return nullptr;
  return v;
}
}  // namespace detail

inline void to_json(nlohmann::json& j, const IngestReport& r) {
  j = nlohmann::json{{"source", r.source},
                     {"lines_read", r.lines_read},
                     {"comment_blank_lines", r.comment_blank_lines},
                     {"self_loops_dropped", r.self_loops_dropped},
                     {"duplicates_dropped", r.duplicates_dropped},
                     {"num_nodes", r.num_nodes},
                     {"num_edges", r.num_edges}};
}

inline void to_json(nlohmann::json& j, const ExactStats& s) {
  j = nlohmann::json{{"num_nodes", s.num_nodes}, {"num_edges", s.num_edges},
                     {"clustering", s.clustering}, {"delta", s.delta},
                     {"lambda", s.lambda},         {"phi", s.phi},
                     {"psi", s.psi},               {"omega", s.omega},
                     {"omega_prime", s.omega_prime}};
}

inline void from_json(const nlohmann::json& j, ExactStats& s) {
  j.at("num_nodes").get_to(s.num_nodes);
  j.at("num_edges").get_to(s.num_edges);
  j.at("clustering").get_to(s.clustering);
  j.at("delta").get_to(s.delta);
  j.at("lambda").get_to(s.lambda);
  j.at("phi").get_to(s.phi);
  j.at("psi").get_to(s.psi);
  j.at("omega").get_to(s.omega);
  j.at("omega_prime").get_to(s.omega_prime);
}

inline const char* exact_stats_csv_header() {
  return "N,M,C,Delta,Lambda,Phi,Psi,OmegaPrime";
}

inline std::string exact_stats_csv_row(const ExactStats& s) {
  char c[64];
  std::snprintf(c, sizeof c, "%.9g", s.clustering);
  return std::to_string(s.num_nodes) + "," + std::to_string(s.num_edges) + "," + c + "," +
         std::to_string(s.delta) + "," + std::to_string(s.lambda) + "," +
         std::to_string(s.phi) + "," + std::to_string(s.psi) + "," +
         std::to_string(s.omega_prime);
}

inline void to_json(nlohmann::json& j, const EstimateReport& r) {
  j = nlohmann::json{{"p", r.p},
                     {"seed", r.seed},
                     {"generator", kGeneratorName},
                     {"stream_edges", r.stream_edges},
                     {"sampled_edges", r.sampled_edges},
                     {"delta_g", r.delta_g},
                     {"lambda_g", r.lambda_g},
                     {"phi_g", r.phi_g},
                     {"psi_g", r.psi_g},
                     {"omega_prime_g", r.omega_prime_g},
                     {"delta_hat", r.delta_hat},
                     {"lambda_hat", r.lambda_hat},
                     {"c_hat", r.c_hat},
                     {"c_hat_plus", detail::finite_or_null(r.c_hat_plus)},
                     {"rse_full", detail::finite_or_null(r.rse_full)},
                     {"rse_simple", detail::finite_or_null(r.rse_simple)},
                     {"rb_hat", detail::finite_or_null(r.rb_hat)},
                     {"rse_fallback", r.rse_fallback},
                     {"correction_overflow", r.correction_overflow}};
}

inline void to_json(nlohmann::json& j, const TheoryReport& r) {
  j = nlohmann::json{{"p", r.p},
                     {"var_delta_g", r.var_delta_g},
                     {"var_lambda_g", r.var_lambda_g},
                     {"cov_delta_lambda", r.cov_delta_lambda},
                     {"var_delta_g_approx", r.var_delta_g_approx},
                     {"var_lambda_g_approx", r.var_lambda_g_approx},
                     {"cov_delta_lambda_approx", r.cov_delta_lambda_approx},
                     {"var_lambda_g_dropped", r.var_lambda_g_dropped},
                     {"cov_delta_lambda_dropped", r.cov_delta_lambda_dropped},
                     {"rse_theory", r.rse_theory},
                     {"rb_theory", r.rb_theory},
                     {"rse_fallback", r.rse_fallback}};
}

inline void to_json(nlohmann::json& j, const CounterCheck& c) {
  j = nlohmann::json{{"name", c.name},
                     {"observed_mean", c.observed_mean},
                     {"observed_std", c.observed_std},
                     {"expected", c.expected},
                     {"se", c.se},
                     {"z", detail::finite_or_null(c.z)}};
}

inline void to_json(nlohmann::json& j, const AuxExpectationReport& r) {
  j = nlohmann::json{{"p", r.p},
                     {"runs", r.runs},
                     {"base_seed", r.base_seed},
                     {"generator", kGeneratorName},
                     {"delta_g", r.delta_g},
                     {"lambda_g", r.lambda_g},
                     {"phi_g", r.phi_g},
                     {"psi_g", r.psi_g},
                     {"omega_prime_g", r.omega_prime_g}};
}

inline void to_json(nlohmann::json& j, const GridPointResult& g) {
  j = nlohmann::json{{"p", g.p},
                     {"k", g.k},
                     {"excluded", g.excluded},
                     {"rse_fallback_count", g.rse_fallback_count},
                     {"correction_overflow_count", g.correction_overflow_count},
                     {"observed_rse", g.observed_rse},
                     {"observed_rb", g.observed_rb},
                     {"observed_rb_plus", g.observed_rb_plus},
                     {"observed_rse_se", g.observed_rse_se},
                     {"mean_rse_full", g.mean_rse_full},
                     {"mean_rse_simple", g.mean_rse_simple},
                     {"mean_rb_hat", g.mean_rb_hat},
                     {"mean_c_hat", g.mean_c_hat},
                     {"mean_delta_hat", g.mean_delta_hat},
                     {"mean_lambda_hat", g.mean_lambda_hat},
                     {"se_delta_hat", g.se_delta_hat},
                     {"se_lambda_hat", g.se_lambda_hat},
                     {"rse_theory", g.rse_theory},
                     {"rb_theory", g.rb_theory}};
}

inline void from_json(const nlohmann::json& j, GridPointResult& g) {
  j.at("p").get_to(g.p);
  j.at("k").get_to(g.k);
  j.at("excluded").get_to(g.excluded);
  j.at("rse_fallback_count").get_to(g.rse_fallback_count);
  j.at("correction_overflow_count").get_to(g.correction_overflow_count);
  j.at("observed_rse").get_to(g.observed_rse);
  j.at("observed_rb").get_to(g.observed_rb);
  j.at("observed_rb_plus").get_to(g.observed_rb_plus);
  j.at("observed_rse_se").get_to(g.observed_rse_se);
  j.at("mean_rse_full").get_to(g.mean_rse_full);
  j.at("mean_rse_simple").get_to(g.mean_rse_simple);
  j.at("mean_rb_hat").get_to(g.mean_rb_hat);
  j.at("mean_c_hat").get_to(g.mean_c_hat);
  j.at("mean_delta_hat").get_to(g.mean_delta_hat);
  j.at("mean_lambda_hat").get_to(g.mean_lambda_hat);
  j.at("se_delta_hat").get_to(g.se_delta_hat);
  j.at("se_lambda_hat").get_to(g.se_lambda_hat);
  j.at("rse_theory").get_to(g.rse_theory);
  j.at("rb_theory").get_to(g.rb_theory);
}

inline void to_json(nlohmann::json& j, const ExperimentReport& r) {
  j = nlohmann::json{{"graph", r.graph_name},
                     {"oracle", r.oracle},
                     {"base_seed", r.base_seed},
                     {"runs", r.runs},
                     {"order_mode", r.order_mode},
                     {"generator", r.generator},
                     {"seed_rule", r.seed_rule},
                     {"track_aux", r.track_aux},
                     {"points", r.points}};
}

inline void from_json(const nlohmann::json& j, ExperimentReport& r) {
  j.at("graph").get_to(r.graph_name);
  j.at("oracle").get_to(r.oracle);
  j.at("base_seed").get_to(r.base_seed);
  j.at("runs").get_to(r.runs);
  j.at("order_mode").get_to(r.order_mode);
  j.at("generator").get_to(r.generator);
  j.at("seed_rule").get_to(r.seed_rule);
  j.at("track_aux").get_to(r.track_aux);
  j.at("points").get_to(r.points);
}

/// Long-format CSV of every aggregate in the report, one value per row.
inline std::string experiment_csv(const ExperimentReport& r) {
  std::string csv = "graph,p,series,metric,value\n";
  char buf[64];
  auto row = [&](const GridPointResult& gp, const char* series, const char* metric,
                 double value) {
    std::snprintf(buf, sizeof buf, "%.12g", value);
    csv += r.graph_name + "," + std::to_string(gp.p) + "," + series + "," + metric + "," +
           buf + "\n";
  };
  for (const auto& gp : r.points) {
    row(gp, "observed", "rse", gp.observed_rse);
    row(gp, "observed", "rb", gp.observed_rb);
    row(gp, "corrected", "rb", gp.observed_rb_plus);
    row(gp, "estimated", "rse_full", gp.mean_rse_full);
    row(gp, "estimated", "rse_simple", gp.mean_rse_simple);
    row(gp, "estimated", "rb", gp.mean_rb_hat);
    row(gp, "theory", "rse", gp.rse_theory);
    row(gp, "theory", "rb", gp.rb_theory);
    row(gp, "observed", "mean_delta_hat", gp.mean_delta_hat);
    row(gp, "observed", "mean_lambda_hat", gp.mean_lambda_hat);
  }
  return csv;
}

}  // namespace ccstream
