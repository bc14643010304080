#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ccstream/graph.hpp"

namespace ccstream {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Per-file ingestion accounting. Every input line lands in exactly one
/// bucket: comment/blank, self-loop, duplicate, or kept edge, so
/// num_edges = lines_read - comment_blank_lines - self_loops_dropped
///           - duplicates_dropped.
struct IngestReport {
  std::string source;
  std::uint64_t lines_read = 0;
  std::uint64_t comment_blank_lines = 0;
  std::uint64_t self_loops_dropped = 0;
  std::uint64_t duplicates_dropped = 0;
  std::uint64_t num_nodes = 0;
  std::uint64_t num_edges = 0;
};

struct LoadedGraph {
  Graph graph;
  /// Original file labels, indexed by dense NodeId (first-appearance order).
  std::vector<std::uint64_t> original_ids;
  IngestReport report;
};

namespace detail {

inline bool parse_u64_token(std::string_view tok, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace detail

/// Parses a whitespace-separated edge list (SNAP/KONECT style): one edge per
/// line as two unsigned integer tokens, `#` or `%` starting a comment line.
/// Direction is ignored, self-loops and duplicate edges are dropped (and
/// counted), and node labels are remapped to dense 0-based ids in order of
/// first appearance. Throws ParseError with a line number on malformed
/// input and on an empty (M=0) result.
inline LoadedGraph parse_edge_list(std::istream& in, const std::string& source_name) {
  IngestReport report;
  report.source = source_name;

  std::unordered_map<std::uint64_t, NodeId> remap;
  std::vector<std::uint64_t> original_ids;
  std::unordered_set<std::uint64_t, EdgeKeyHash> seen;
  std::vector<Edge> edges;

  auto intern = [&](std::uint64_t label) {
    auto [it, inserted] = remap.try_emplace(label, NodeId(original_ids.size()));
    if (inserted) original_ids.push_back(label);
    return it->second;
  };

  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    ++report.lines_read;
    std::string_view s(line);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
      s.remove_prefix(1);
    if (s.empty() || s.front() == '#' || s.front() == '%') {
      ++report.comment_blank_lines;
      continue;
    }
    std::uint64_t tok[2];
    int ntok = 0;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
      if (i >= s.size()) break;
      std::size_t j = i;
      while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
      std::uint64_t value = 0;
      if (ntok >= 2 || !detail::parse_u64_token(s.substr(i, j - i), value))
        throw ParseError(source_name + ":" + std::to_string(line_no) +
                         ": expected two unsigned integer tokens, got '" + line + "'");
      tok[ntok++] = value;
      i = j;
    }
    if (ntok != 2)
      throw ParseError(source_name + ":" + std::to_string(line_no) +
                       ": expected two unsigned integer tokens, got '" + line + "'");
    if (tok[0] == tok[1]) {
      ++report.self_loops_dropped;
      continue;
    }
    NodeId a = intern(tok[0]);
    NodeId b = intern(tok[1]);
    Edge e = Edge::canonical(a, b);
    if (!seen.insert(e.key()).second) {
      ++report.duplicates_dropped;
      continue;
    }
    edges.push_back(e);
  }

  if (edges.empty())
    throw ParseError(source_name + ": no edges after normalization (empty graph)");

  report.num_nodes = original_ids.size();
  report.num_edges = edges.size();
  Graph graph(NodeId(original_ids.size()), std::move(edges));
  return LoadedGraph{std::move(graph), std::move(original_ids), std::move(report)};
}

inline LoadedGraph parse_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list file: " + path.string());
  return parse_edge_list(in, path.filename().string());
}

inline LoadedGraph parse_edge_list_text(std::string_view text,
                                        const std::string& source_name = "<memory>") {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, source_name);
}

}  // namespace ccstream
