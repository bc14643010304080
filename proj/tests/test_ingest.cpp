#include <map>

#include <catch2/catch_amalgamated.hpp>

#include "ccstream/edge_list.hpp"
#include "ccstream/stream.hpp"

using namespace ccstream;

TEST_CASE("parse a clean triangle") {
  auto loaded = parse_edge_list_text("0 1\n1 2\n2 0\n");
  CHECK(loaded.graph.num_nodes() == 3);
  CHECK(loaded.graph.num_edges() == 3);
  CHECK(loaded.report.lines_read == 3);
  CHECK(loaded.report.self_loops_dropped == 0);
  CHECK(loaded.report.duplicates_dropped == 0);
}

TEST_CASE("parse drops duplicates, reversed duplicates and self-loops") {
  auto loaded = parse_edge_list_text("0 1\n1 0\n2 2\n");
  CHECK(loaded.graph.num_edges() == 1);
  CHECK(loaded.report.duplicates_dropped == 1);
  CHECK(loaded.report.self_loops_dropped == 1);
  CHECK(loaded.graph.num_nodes() == 2);  // 2 never survives as a node
}

TEST_CASE("comments, blank lines and the accounting invariant") {
  const char* text =
      "# SNAP-style header\n"
      "% konect-style header\n"
      "\n"
      "10 20\n"
      "20\t30\n"
      "10 20\n"
      "7 7\n";
  auto loaded = parse_edge_list_text(text);
  const auto& r = loaded.report;
  CHECK(r.lines_read == 7);
  CHECK(r.comment_blank_lines == 3);
  CHECK(r.duplicates_dropped == 1);
  CHECK(r.self_loops_dropped == 1);
  CHECK(r.num_edges == 2);
  CHECK(r.num_edges ==
        r.lines_read - r.comment_blank_lines - r.self_loops_dropped - r.duplicates_dropped);
  // original labels preserved in first-appearance order
  CHECK(loaded.original_ids == std::vector<std::uint64_t>{10, 20, 30});
}

TEST_CASE("malformed lines carry the line number") {
  CHECK_THROWS_WITH(parse_edge_list_text("0 1\nnope\n", "bad.txt"),
                    Catch::Matchers::ContainsSubstring("bad.txt:2"));
  CHECK_THROWS_WITH(parse_edge_list_text("0 1 2\n", "bad.txt"),
                    Catch::Matchers::ContainsSubstring("bad.txt:1"));
  CHECK_THROWS_WITH(parse_edge_list_text("0\n", "bad.txt"),
                    Catch::Matchers::ContainsSubstring("bad.txt:1"));
  CHECK_THROWS_AS(parse_edge_list_text("0 -1\n"), ParseError);
}

TEST_CASE("empty graph is an error") {
  CHECK_THROWS_AS(parse_edge_list_text(""), ParseError);
  CHECK_THROWS_AS(parse_edge_list_text("# only comments\n"), ParseError);
  CHECK_THROWS_AS(parse_edge_list_text("3 3\n"), ParseError);  // only a self-loop
}

TEST_CASE("file-order stream preserves first occurrence") {
  auto loaded = parse_edge_list_text("0 1\n1 2\n0 1\n2 0\n");
  const EdgeStream s = file_order_stream(loaded.graph);
  REQUIRE(s.edges.size() == 3);
  CHECK(s.edges[0] == Edge{0, 1});
  CHECK(s.edges[1] == Edge{1, 2});
  CHECK(s.edges[2] == Edge{0, 2});
  CHECK_FALSE(s.seed.has_value());
}

TEST_CASE("shuffled stream is a deterministic permutation") {
  auto loaded = parse_edge_list_text("0 1\n1 2\n2 0\n0 3\n3 4\n");
  const Graph& g = loaded.graph;

  const EdgeStream a = shuffle_stream(g, 1234);
  const EdgeStream b = shuffle_stream(g, 1234);
  CHECK(a.edges == b.edges);
  CHECK(a.seed == 1234);

  auto sorted_keys = [](const std::vector<Edge>& edges) {
    std::vector<std::uint64_t> keys;
    for (const Edge& e : edges) keys.push_back(e.key());
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  CHECK(sorted_keys(a.edges) == sorted_keys(g.edges()));  // multiset equality

  bool any_difference = false;
  for (std::uint64_t seed = 0; seed < 16 && !any_difference; ++seed)
    any_difference = shuffle_stream(g, seed).edges != g.edges();
  CHECK(any_difference);
}

TEST_CASE("shuffle is uniform over the 6 orders of K3 (chi-square style)") {
  auto loaded = parse_edge_list_text("0 1\n1 2\n2 0\n");
  const Graph& g = loaded.graph;
  std::map<std::array<std::uint64_t, 3>, int> counts;
  const int trials = 6000;
  for (int seed = 0; seed < trials; ++seed) {
    const EdgeStream s = shuffle_stream(g, std::uint64_t(seed));
    counts[{s.edges[0].key(), s.edges[1].key(), s.edges[2].key()}]++;
  }
  REQUIRE(counts.size() == 6);
  for (const auto& [order, n] : counts) {
    CHECK(n > 1000 - 150);
    CHECK(n < 1000 + 150);
  }
}
