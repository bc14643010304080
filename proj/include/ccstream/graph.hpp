#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ccstream {

using NodeId = std::uint32_t;

/// Undirected edge in canonical order (u < v). Self-loops are rejected at
/// construction; (a,b) and (b,a) canonicalize to the same value.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  static Edge canonical(NodeId a, NodeId b) {
    if (a == b) throw std::invalid_argument("self-loop edge (" + std::to_string(a) + ")");
    return a < b ? Edge{a, b} : Edge{b, a};
  }

  /// Packed 64-bit identity, usable as a hash-map key.
  std::uint64_t key() const { return (std::uint64_t(u) << 32) | v; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct EdgeKeyHash {
  std::size_t operator()(std::uint64_t k) const noexcept {
    // splitmix64 finalizer; edge keys are highly structured
    k = (k ^ (k >> 30)) * 0xbf58476d1ce4e5b9ULL;
    k = (k ^ (k >> 27)) * 0x94d049bb133111ebULL;
    return std::size_t(k ^ (k >> 31));
  }
};

/// Immutable simple undirected graph over dense node ids 0..N-1.
///
/// Adjacency is CSR-style with per-node sorted neighbor arrays, so
/// common-neighbor queries run as linear merges. The edge list keeps its
/// construction (first-occurrence) order, which doubles as the file-order
/// stream. Immutable after construction; safe for concurrent reads.
class Graph {
 public:
  Graph(NodeId num_nodes, std::vector<Edge> edges)
      : num_nodes_(num_nodes), edges_(std::move(edges)) {
    offsets_.assign(std::size_t(num_nodes_) + 1, 0);
    for (const Edge& e : edges_) {
      if (e.u >= num_nodes_ || e.v >= num_nodes_)
        throw std::out_of_range("edge endpoint beyond node count");
      if (e.u == e.v) throw std::invalid_argument("self-loop in edge set");
      if (!(e.u < e.v)) throw std::invalid_argument("edge not in canonical order");
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    adj_.resize(offsets_.back());
    std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges_) {
      adj_[cursor[e.u]++] = e.v;
      adj_[cursor[e.v]++] = e.u;
    }
    for (NodeId u = 0; u < num_nodes_; ++u) {
      auto first = adj_.begin() + std::ptrdiff_t(offsets_[u]);
      auto last = adj_.begin() + std::ptrdiff_t(offsets_[u + 1]);
      std::sort(first, last);
      if (std::adjacent_find(first, last) != last)
        throw std::invalid_argument("duplicate edge in edge set");
    }
  }

  NodeId num_nodes() const { return num_nodes_; }
  std::uint64_t num_edges() const { return edges_.size(); }

  /// Edges in first-occurrence order; position i carries stream label i+1.
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const NodeId> neighbors(NodeId u) const {
    check_node(u);
    return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
  }

  std::uint64_t degree(NodeId u) const {
    check_node(u);
    return offsets_[u + 1] - offsets_[u];
  }

  bool has_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("has_edge on identical endpoints");
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// adj(u) ∩ adj(v) by sorted merge.
  std::vector<NodeId> common_neighbors(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    if (u == v) throw std::invalid_argument("common_neighbors on identical endpoints");
    auto a = neighbors(u);
    auto b = neighbors(v);
    std::vector<NodeId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

 private:
  void check_node(NodeId u) const {
    if (u >= num_nodes_)
      throw std::out_of_range("node id " + std::to_string(u) + " out of range (N=" +
                              std::to_string(num_nodes_) + ")");
  }

  NodeId num_nodes_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> offsets_;
  std::vector<NodeId> adj_;
};

}  // namespace ccstream
