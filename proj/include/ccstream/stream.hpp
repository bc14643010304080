#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ccstream/graph.hpp"
#include "ccstream/rng.hpp"

namespace ccstream {

/// An arrival order over a graph's edge set: a permutation in which position
/// i (0-based) carries stream label i+1. `seed` is absent for file order.
struct EdgeStream {
  std::vector<Edge> edges;
  std::optional<std::uint64_t> seed;

  std::uint64_t size() const { return edges.size(); }
};

/// Fisher–Yates over `perm` driven by `rng`; used wherever a permutation is
/// needed without copying the edge array.
inline void shuffle_indices(std::vector<std::uint32_t>& perm, Rng& rng) {
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::size_t j = std::size_t(rng.below(i));
    std::swap(perm[i - 1], perm[j]);
  }
}

/// Edges in first-occurrence file order.
inline EdgeStream file_order_stream(const Graph& g) {
  if (g.num_edges() == 0) throw std::invalid_argument("stream over empty graph");
  return EdgeStream{g.edges(), std::nullopt};
}

/// Uniformly random permutation of the edge set, a pure function of
/// (graph, seed). Generator: mt19937_64 (see rng.hpp).
inline EdgeStream shuffle_stream(const Graph& g, std::uint64_t seed) {
  if (g.num_edges() == 0) throw std::invalid_argument("stream over empty graph");
  std::vector<std::uint32_t> perm(g.num_edges());
  std::iota(perm.begin(), perm.end(), 0u);
  Rng rng(seed);
  shuffle_indices(perm, rng);
  std::vector<Edge> edges(g.num_edges());
  for (std::size_t i = 0; i < perm.size(); ++i) edges[i] = g.edges()[perm[i]];
  return EdgeStream{std::move(edges), seed};
}

}  // namespace ccstream
