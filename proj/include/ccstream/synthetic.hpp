#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "ccstream/graph.hpp"
#include "ccstream/rng.hpp"

namespace ccstream {

inline Graph complete_graph(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

inline Graph path_graph(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, NodeId(u + 1)});
  return Graph(n, std::move(edges));
}

inline Graph cycle_graph(NodeId n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
  std::vector<Edge> edges;
  for (NodeId u = 0; u + 1 < n; ++u) edges.push_back({u, NodeId(u + 1)});
  edges.push_back({0, NodeId(n - 1)});
  return Graph(n, std::move(edges));
}

/// Star with hub 0 and `leaves` leaves.
inline Graph star_graph(NodeId leaves) {
  std::vector<Edge> edges;
  for (NodeId i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Graph(leaves + 1, std::move(edges));
}

/// Disjoint union of K_c (nodes 0..c-1) and a star with `leaves` leaves
/// (hub c). Heavy wedge mass on the hub next to a fixed triangle supply.
inline Graph clique_plus_star(NodeId c, NodeId leaves) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < c; ++u)
    for (NodeId v = u + 1; v < c; ++v) edges.push_back({u, v});
  for (NodeId i = 1; i <= leaves; ++i) edges.push_back({c, NodeId(c + i)});
  return Graph(c + leaves + 1, std::move(edges));
}

/// Erdős–Rényi G(n, prob), deterministic in seed. O(n^2) draws, intended for
/// n up to a few thousand.
inline Graph erdos_renyi_gnp(NodeId n, double prob, std::uint64_t seed) {
  if (prob < 0.0 || prob > 1.0) throw std::invalid_argument("edge probability outside [0,1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.bernoulli(prob)) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

/// Watts–Strogatz small world: ring lattice with k neighbors per node
/// (k even), each lattice edge rewired with probability beta to a uniform
/// non-duplicate target. High transitivity at small beta; used as a
/// deterministic mid-size clustered graph.
inline Graph watts_strogatz(NodeId n, NodeId k, double beta, std::uint64_t seed) {
  if (k % 2 != 0 || k < 2) throw std::invalid_argument("k must be even and >= 2");
  if (n <= k) throw std::invalid_argument("need n > k");
  if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("beta outside [0,1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t, EdgeKeyHash> present;
  auto add = [&](NodeId a, NodeId b) {
    Edge e = Edge::canonical(a, b);
    if (present.insert(e.key()).second) {
      edges.push_back(e);
      return true;
    }
    return false;
  };
  for (NodeId u = 0; u < n; ++u)
    for (NodeId d = 1; d <= k / 2; ++d) add(u, NodeId((u + d) % n));
  // Rewire pass: detach (u, u+d) and reattach u to a random target.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!rng.bernoulli(beta)) continue;
    Edge old = edges[i];
    for (int attempt = 0; attempt < 64; ++attempt) {
      NodeId t = NodeId(rng.below(n));
      if (t == old.u || t == old.v) continue;
      Edge candidate = Edge::canonical(old.u, t);
      if (present.contains(candidate.key())) continue;
      present.erase(old.key());
      present.insert(candidate.key());
      edges[i] = candidate;
      break;
    }
  }
  return Graph(n, std::move(edges));
}

}  // namespace ccstream
