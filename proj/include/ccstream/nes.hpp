#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ccstream/graph.hpp"
#include "ccstream/rng.hpp"
#include "ccstream/stream.hpp"

namespace ccstream {

struct NesConfig {
  double p = 1.0;             // sampling probability, (0, 1]
  std::uint64_t seed = 0;     // drives the per-edge sampling decisions
  bool track_aux = true;      // maintain phi_g / psi_g / omega_prime_g
  bool check_duplicates = true;  // reject repeated edge arrivals (costs O(M) memory)

  void validate() const {
    if (!(p > 0.0) || p > 1.0)
      throw std::invalid_argument("sampling probability must be in (0,1]");
  }
};

/// Single-pass edge-sampling state: the sampled subgraph g plus the running
/// counters
///
///   delta_g        closed wedges identified (both wedge edges resident in
///                  g when the closing edge arrives; one per triangle)
///   lambda_g       wedges identified (arriving edge adjacent to a g edge)
///   psi_g          pairs of identified wedges sharing a resident edge,
///                  maintained as Σ_f C(c_f, 2) with c_f = later-arriving
///                  partners of g edge f
///   phi_g          pairs of identified triangles sharing an edge,
///                  maintained as Σ_e C(t_e, 2) with t_e = identified
///                  triangles containing edge e (e need not be sampled)
///   omega_prime_g  {wedge, triangle} pairs whose shared edge is
///                  simultaneously the wedge's resident edge and one of the
///                  triangle's two resident edges, the triangle's own
///                  wedges excluded
///
/// For each arriving edge the phases run in a fixed order: triangle
/// identification, omega' pairing against earlier wedges, phi update, wedge
/// identification (psi/omega' pairing against earlier state, then c_f
/// bumps), triangle residency bumps, and finally the sampling decision.
/// The arriving edge enters g only in the last phase, so nothing in the
/// counting phases can pair an edge with itself, and the triangle's own
/// closing-edge wedges stay out of c_f at identification time.
class NesState {
 public:
  NesState(NodeId num_nodes, const NesConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
    cfg_.validate();
    adj_.resize(num_nodes);
  }

  /// Process one stream arrival. Labels are assigned internally in arrival
  /// order (1, 2, ...). Throws on self-loops and, when check_duplicates is
  /// set, on repeated arrivals.
  void process_edge(Edge e) {
    if (e.u == e.v) throw std::invalid_argument("self-loop in stream");
    if (e.u >= adj_.size() || e.v >= adj_.size())
      throw std::out_of_range("stream edge endpoint beyond node count");
    if (e.v < e.u) std::swap(e.u, e.v);
    if (cfg_.check_duplicates && !seen_.insert(e.key()).second)
      throw std::invalid_argument("duplicate edge arrival in stream");
    const std::uint32_t label = ++edges_processed_;

    // Phase 1: closed wedges. A common neighbor x of (u,v) in g means the
    // wedge (u,x,v) is resident and e closes it.
    triangles_.clear();
    {
      const auto& au = adj_[e.u];
      const auto& av = adj_[e.v];
      std::size_t i = 0, j = 0;
      while (i < au.size() && j < av.size()) {
        if (au[i].node < av[j].node) ++i;
        else if (au[i].node > av[j].node) ++j;
        else {
          triangles_.push_back({au[i].slot, av[j].slot});
          ++i, ++j;
        }
      }
    }
    delta_g += triangles_.size();

    if (cfg_.track_aux) {
      // Phase 2: pair each identified triangle with the earlier wedges
      // through its two resident edges. c_a already contains the
      // within-triangle wedge (a, other) when `other` arrived after a;
      // subtract it so only outside wedges pair. c_a >= 1 whenever the
      // indicator fires, because `other`'s own arrival bumped it.
      for (const auto& tri : triangles_) {
        const GEdge& a1 = g_edges_[tri.slot_a];
        const GEdge& a2 = g_edges_[tri.slot_b];
        omega_prime_g += std::uint64_t(a1.wedge_partners) - (a2.label > a1.label ? 1 : 0);
        omega_prime_g += std::uint64_t(a2.wedge_partners) - (a1.label > a2.label ? 1 : 0);
      }
      // Phase 3: triangle-pair count. Bumping t after adding pairs keeps
      // phi_g == Σ C(t_e, 2) at every step, including several triangles
      // identified by the same arrival.
      for (const auto& tri : triangles_) {
        bump_phi(g_edges_[tri.slot_a].edge_key());
        bump_phi(g_edges_[tri.slot_b].edge_key());
        bump_phi(e.key());
      }
    }

    // Phase 4: wedges formed by e with adjacent resident edges. Each f in g
    // sharing exactly one endpoint with e yields one identified wedge whose
    // resident edge is f; it pairs with f's earlier wedges (psi) and with
    // triangles in which f was resident (omega').
    for (NodeId endpoint : {e.u, e.v}) {
      for (const Entry& ent : adj_[endpoint]) {
        GEdge& f = g_edges_[ent.slot];
        ++lambda_g;
        if (cfg_.track_aux) {
          psi_g += f.wedge_partners;
          omega_prime_g += f.triangle_residencies;
        }
        ++f.wedge_partners;
      }
    }

    // Phase 5: residency bumps, after phase 4 so the triangle's own
    // closing-edge wedges (a1,e), (a2,e) do not pair with it.
    if (cfg_.track_aux) {
      for (const auto& tri : triangles_) {
        ++g_edges_[tri.slot_a].triangle_residencies;
        ++g_edges_[tri.slot_b].triangle_residencies;
      }
    }

    // Phase 6: sampling decision. One draw per arrival regardless of
    // outcome, so a run is a pure function of (stream, seed).
    const bool keep = rng_.bernoulli(cfg_.p);
    if (keep) {
      const std::uint32_t slot = std::uint32_t(g_edges_.size());
      g_edges_.push_back(GEdge{e, label, 0, 0});
      insert_adjacency(e.u, e.v, slot);
      insert_adjacency(e.v, e.u, slot);
    }
  }

  std::uint64_t delta_g = 0;
  std::uint64_t lambda_g = 0;
  std::uint64_t phi_g = 0;
  std::uint64_t psi_g = 0;
  std::uint64_t omega_prime_g = 0;

  std::uint64_t sampled_edges() const { return g_edges_.size(); }
  std::uint64_t edges_processed() const { return edges_processed_; }
  double p() const { return cfg_.p; }
  std::uint64_t seed() const { return cfg_.seed; }
  bool track_aux() const { return cfg_.track_aux; }

  /// Batch recomputation Σ_f C(c_f, 2) of psi_g; the incremental counter
  /// must match at end of stream.
  std::uint64_t psi_from_scratch() const {
    std::uint64_t total = 0;
    for (const GEdge& f : g_edges_)
      total += std::uint64_t(f.wedge_partners) * (f.wedge_partners - 1) / 2;
    return total;
  }

  /// Batch recomputation Σ_e C(t_e, 2) of phi_g.
  std::uint64_t phi_from_scratch() const {
    std::uint64_t total = 0;
    for (const auto& [key, t] : triangle_counts_)
      total += std::uint64_t(t) * (t - 1) / 2;
    return total;
  }

  /// Reset to the initial state (keeps node capacity and configuration,
  /// rewinds the RNG to the seed). Lets one state object serve many runs.
  void reset(const NesConfig& cfg) {
    cfg_ = cfg;
    cfg_.validate();
    for (const GEdge& f : g_edges_) {
      adj_[f.edge.u].clear();
      adj_[f.edge.v].clear();
    }
    g_edges_.clear();
    triangle_counts_.clear();
    seen_.clear();
    delta_g = lambda_g = phi_g = psi_g = omega_prime_g = 0;
    edges_processed_ = 0;
    rng_ = Rng(cfg_.seed);
  }

 private:
  struct Entry {
    NodeId node;          // neighbor in g
    std::uint32_t slot;   // index into g_edges_
  };
  struct GEdge {
    Edge edge;
    std::uint32_t label;
    std::uint32_t wedge_partners;        // c_f: later arrivals adjacent to f
    std::uint32_t triangle_residencies;  // r_f: identified triangles with f resident
    std::uint64_t edge_key() const { return edge.key(); }
  };
  struct TriangleHit {
    std::uint32_t slot_a;  // resident (u, x)
    std::uint32_t slot_b;  // resident (x, v)
  };

  void bump_phi(std::uint64_t key) {
    std::uint32_t& t = triangle_counts_[key];
    phi_g += t;
    ++t;
  }

  void insert_adjacency(NodeId at, NodeId nbr, std::uint32_t slot) {
    auto& list = adj_[at];
    auto it = std::lower_bound(list.begin(), list.end(), nbr,
                               [](const Entry& a, NodeId b) { return a.node < b; });
    list.insert(it, Entry{nbr, slot});
  }

  NesConfig cfg_;
  Rng rng_;
  std::uint32_t edges_processed_ = 0;
  std::vector<std::vector<Entry>> adj_;
  std::vector<GEdge> g_edges_;
  std::vector<TriangleHit> triangles_;
  std::unordered_map<std::uint64_t, std::uint32_t, EdgeKeyHash> triangle_counts_;
  std::unordered_set<std::uint64_t, EdgeKeyHash> seen_;
};

/// Folds process_edge over the stream in label order.
inline NesState run_stream(const EdgeStream& stream, NodeId num_nodes, const NesConfig& cfg) {
  NesState state(num_nodes, cfg);
  for (const Edge& e : stream.edges) state.process_edge(e);
  return state;
}

}  // namespace ccstream
