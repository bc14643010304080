// ccstream — streaming clustering-coefficient estimation toolkit.
//
// Subcommands:
//   exact       exact structural statistics of an edge-list graph
//   stream      one NES sampling pass with estimates and error bars
//   experiment  Monte-Carlo sweep over a p grid from a JSON config
//   report      plot-ready CSV extracted from a saved experiment report

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccstream/cache.hpp"
#include "ccstream/edge_list.hpp"
#include "ccstream/estimators.hpp"
#include "ccstream/harness.hpp"
#include "ccstream/nes.hpp"
#include "ccstream/oracle.hpp"
#include "ccstream/serialize.hpp"
#include "ccstream/stream.hpp"
#include "ccstream/synthetic.hpp"
#include "ccstream/theory.hpp"

namespace {

using nlohmann::json;

constexpr std::uint64_t kHugeOracleEdges = 1'000'000;

void write_or_print(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write output file: " + out_path);
  out << text << "\n";
}

struct GraphSpec {
  std::string path;  // edge-list file, or
  bool is_er = false;
  ccstream::NodeId er_n = 0;
  double er_prob = 0.0;
  std::uint64_t er_seed = 0;

  std::string name() const {
    if (!is_er) return std::filesystem::path(path).filename().string();
    return "er-n" + std::to_string(er_n) + "-p" + std::to_string(er_prob) + "-s" +
           std::to_string(er_seed);
  }
};

GraphSpec graph_spec_from_config(const json& j) {
  GraphSpec spec;
  const auto& g = j.at("graph");
  if (g.contains("path")) {
    spec.path = g.at("path").get<std::string>();
  } else if (g.contains("er")) {
    spec.is_er = true;
    const auto& er = g.at("er");
    spec.er_n = er.at("n").get<ccstream::NodeId>();
    spec.er_prob = er.at("edge_prob").get<double>();
    spec.er_seed = er.value("seed", std::uint64_t(0));
  } else {
    throw std::runtime_error("config graph must have 'path' or 'er'");
  }
  return spec;
}

// Loads the graph and its oracle stats (cached for files).
std::pair<ccstream::Graph, ccstream::ExactStats> load_with_stats(const GraphSpec& spec,
                                                                 bool allow_huge) {
  if (spec.is_er) {
    ccstream::Graph g = ccstream::erdos_renyi_gnp(spec.er_n, spec.er_prob, spec.er_seed);
    return {g, ccstream::exact_stats(g)};
  }
  auto loaded = ccstream::parse_edge_list(spec.path);
  if (loaded.graph.num_edges() > kHugeOracleEdges && !allow_huge)
    throw std::runtime_error(
        "graph has " + std::to_string(loaded.graph.num_edges()) +
        " edges; exact statistics beyond 1e6 edges can take a long time"
        " (hours at full Table scale) — pass --allow-huge-oracle to proceed");
  ccstream::ExactStats stats = ccstream::stats_for_file(spec.path, loaded.graph);
  return {std::move(loaded.graph), stats};
}

int cmd_exact(const std::string& input, const std::string& out, const std::string& format,
              bool allow_huge) {
  auto loaded = ccstream::parse_edge_list(input);
  if (loaded.graph.num_edges() > kHugeOracleEdges && !allow_huge)
    throw std::runtime_error(
        "graph has " + std::to_string(loaded.graph.num_edges()) +
        " edges; pass --allow-huge-oracle to run the exact oracle at this size");
  ccstream::ExactStats stats = ccstream::stats_for_file(input, loaded.graph);
  if (format == "csv") {
    write_or_print(std::string(ccstream::exact_stats_csv_header()) + "\n" +
                       ccstream::exact_stats_csv_row(stats),
                   out);
  } else {
    json j{{"input", input}, {"ingest", loaded.report}, {"stats", stats}};
    write_or_print(j.dump(2), out);
  }
  return 0;
}

int cmd_stream(const std::string& input, double p, std::uint64_t seed, bool file_order,
               bool no_aux, const std::string& out) {
  auto loaded = ccstream::parse_edge_list(input);
  ccstream::EdgeStream stream =
      file_order ? ccstream::file_order_stream(loaded.graph)
                 : ccstream::shuffle_stream(loaded.graph, ccstream::derive_seed(seed, 0));
  ccstream::NesConfig cfg;
  cfg.p = p;
  cfg.seed = ccstream::derive_seed(seed, 1);
  cfg.track_aux = !no_aux;
  ccstream::NesState state = ccstream::run_stream(stream, loaded.graph.num_nodes(), cfg);
  ccstream::EstimateReport report = ccstream::make_estimate_report(state);
  report.seed = seed;  // report the user-facing seed, not the derived one
  json j{{"input", input},
         {"order_mode", file_order ? "fixed-file-order" : "shuffled"},
         {"report", report}};
  write_or_print(j.dump(2), out);
  return 0;
}

int cmd_experiment(const std::string& config_path, std::string out_prefix,
                   std::optional<std::uint32_t> runs_override, bool allow_huge) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config file: " + config_path);
  json cfg = json::parse(in);

  GraphSpec gspec = graph_spec_from_config(cfg);
  auto [graph, stats] = load_with_stats(gspec, allow_huge);

  ccstream::ExperimentSpec spec;
  spec.runs = runs_override ? *runs_override : cfg.value("runs", 1000u);
  spec.base_seed = cfg.value("base_seed", std::uint64_t(0));
  spec.track_aux = cfg.value("track_aux", true);
  spec.workers = cfg.value("workers", 0u);
  const std::string order = cfg.value("order_mode", std::string("shuffled"));
  if (order == "shuffled") spec.order_mode = ccstream::OrderMode::kShuffledPerRun;
  else if (order == "file-order") spec.order_mode = ccstream::OrderMode::kFileOrder;
  else throw std::runtime_error("order_mode must be 'shuffled' or 'file-order'");

  if (cfg.contains("p_grid")) {
    spec.p_grid = cfg.at("p_grid").get<std::vector<double>>();
  } else if (cfg.contains("target_rse_grid")) {
    for (double target : cfg.at("target_rse_grid").get<std::vector<double>>())
      spec.p_grid.push_back(ccstream::solve_p_for_target_rse(stats, target));
  } else {
    throw std::runtime_error("config needs 'p_grid' or 'target_rse_grid'");
  }

  ccstream::ExperimentReport report =
      ccstream::run_experiment(graph, stats, spec, gspec.name());

  if (out_prefix.empty())
    out_prefix = std::filesystem::path(config_path).stem().string() + "-report";
  {
    std::ofstream jout(out_prefix + ".json");
    if (!jout) throw std::runtime_error("cannot write " + out_prefix + ".json");
    jout << json(report).dump(2) << "\n";
    std::ofstream cout_(out_prefix + ".csv");
    if (!cout_) throw std::runtime_error("cannot write " + out_prefix + ".csv");
    cout_ << ccstream::experiment_csv(report);
  }

  std::printf("graph %s: N=%llu M=%llu C=%.6f  (k=%u, %s)\n", report.graph_name.c_str(),
              (unsigned long long)stats.num_nodes, (unsigned long long)stats.num_edges,
              stats.clustering, spec.runs, report.order_mode.c_str());
  std::printf("%10s %9s %9s %11s %11s %11s %11s %9s\n", "p", "excluded", "obs_rse",
              "est_rse(T1)", "obs_rb", "est_rb", "rb_plus", "fallback");
  for (const auto& gp : report.points)
    std::printf("%10.6f %9u %9.4f %11.4f %11.6f %11.6f %11.6f %9u\n", gp.p, gp.excluded,
                gp.observed_rse, gp.mean_rse_simple, gp.observed_rb, gp.mean_rb_hat,
                gp.observed_rb_plus, gp.rse_fallback_count);
  std::printf("wrote %s.json and %s.csv\n", out_prefix.c_str(), out_prefix.c_str());
  return 0;
}

int cmd_report(const std::string& report_path, const std::string& fig,
               const std::string& out) {
  std::ifstream in(report_path);
  if (!in) throw std::runtime_error("cannot open report file: " + report_path);
  ccstream::ExperimentReport report = json::parse(in).get<ccstream::ExperimentReport>();
  ccstream::FigKind kind;
  if (fig == "fig2") kind = ccstream::FigKind::kFig2;
  else if (fig == "fig3") kind = ccstream::FigKind::kFig3;
  else if (fig == "fig4") kind = ccstream::FigKind::kFig4;
  else throw std::runtime_error("--fig must be fig2, fig3 or fig4");
  write_or_print(ccstream::emit_fig_data(report, kind), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming clustering-coefficient estimation (NES edge sampling)"};
  app.require_subcommand(1);

  std::string input, out, format = "json", config_path, fig = "fig2";
  double p = 0.0;
  std::uint64_t seed = 0;
  bool file_order = false, no_aux = false, allow_huge = false;
  std::optional<std::uint32_t> runs_override;

  auto* exact = app.add_subcommand("exact", "exact structural statistics");
  exact->add_option("input", input, "edge-list file")->required();
  exact->add_option("--out", out, "output file (default: stdout)");
  exact->add_option("--format", format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  exact->add_flag("--allow-huge-oracle", allow_huge,
                  "run the exact oracle on graphs beyond 1e6 edges");

  auto* stream = app.add_subcommand("stream", "single NES sampling pass");
  stream->add_option("input", input, "edge-list file")->required();
  stream->add_option("--p", p, "sampling probability in (0,1]")
      ->required()
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));
  stream->add_option("--seed", seed, "run seed (default 0)");
  stream->add_flag("--file-order", file_order, "use file order instead of shuffling");
  stream->add_flag("--no-aux", no_aux, "skip phi/psi/omega' maintenance");
  stream->add_option("--out", out, "output file (default: stdout)");

  auto* experiment = app.add_subcommand("experiment", "Monte-Carlo sweep from config");
  experiment->add_option("config", config_path, "JSON experiment config")->required();
  experiment->add_option("--out", out, "output prefix for .json/.csv");
  experiment->add_option("--runs", runs_override, "override the config run count");
  experiment->add_flag("--allow-huge-oracle", allow_huge,
                       "allow oracle stats on graphs beyond 1e6 edges");

  auto* report = app.add_subcommand("report", "fig-style CSV from a saved report");
  report->add_option("report_json", config_path, "experiment report JSON")->required();
  report->add_option("--fig", fig, "fig2|fig3|fig4")
      ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
  report->add_option("--out", out, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (exact->parsed()) return cmd_exact(input, out, format, allow_huge);
    if (stream->parsed()) return cmd_stream(input, p, seed, file_order, no_aux, out);
    if (experiment->parsed()) return cmd_experiment(config_path, out, runs_override, allow_huge);
    if (report->parsed()) return cmd_report(config_path, fig, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
