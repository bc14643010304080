#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ccstream/graph.hpp"

namespace ccstream {

/// Ground-truth structural quantities of a graph.
///
///   delta        closed wedges (3 per triangle)
///   lambda       wedges, Σ_v C(deg v, 2)
///   clustering   C = delta / lambda
///   phi          unordered pairs of triangles sharing an edge
///   psi          unordered pairs of wedges sharing an edge
///   omega_prime  unordered {wedge, triangle} pairs sharing exactly one
///                edge, the wedge not being one of that triangle's own
///                closed wedges
///   omega        back-derived as 2*omega_prime + 6*delta, so that
///                omega_prime == (omega - 6*delta) / 2 holds
struct ExactStats {
  std::uint64_t num_nodes = 0;
  std::uint64_t num_edges = 0;
  std::uint64_t delta = 0;
  std::uint64_t lambda = 0;
  std::uint64_t phi = 0;
  std::uint64_t psi = 0;
  std::uint64_t omega = 0;
  std::uint64_t omega_prime = 0;
  double clustering = 0.0;
};

struct UndefinedValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t choose2(std::uint64_t n) { return n * (n - 1) / 2; }

}  // namespace detail

/// Per-edge triangle counts t_e (aligned with g.edges()): t_e = |adj(u) ∩
/// adj(v)|. The workhorse behind delta, phi and omega_prime.
inline std::vector<std::uint32_t> edge_triangle_counts(const Graph& g) {
  std::vector<std::uint32_t> t(g.num_edges(), 0);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    auto a = g.neighbors(e.u);
    auto b = g.neighbors(e.v);
    std::uint32_t count = 0;
    std::size_t x = 0, y = 0;
    while (x < a.size() && y < b.size()) {
      if (a[x] < b[y]) ++x;
      else if (a[x] > b[y]) ++y;
      else ++count, ++x, ++y;
    }
    t[i] = count;
  }
  return t;
}

/// Λ = Σ_v C(deg v, 2).
inline std::uint64_t count_wedges(const Graph& g) {
  std::uint64_t lambda = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) lambda += detail::choose2(g.degree(v));
  return lambda;
}

/// Δ = 3 × triangle count, via edge-iterator intersection (each triangle is
/// seen once per edge, so Σ_e t_e = 3 × triangles = Δ).
inline std::uint64_t count_closed_wedges(const Graph& g) {
  std::uint64_t delta = 0;
  for (std::uint32_t t : edge_triangle_counts(g)) delta += t;
  return delta;
}

inline double clustering_coefficient(const ExactStats& stats) {
  if (stats.lambda == 0)
    throw UndefinedValue("clustering coefficient undefined: graph has no wedges");
  return double(stats.delta) / double(stats.lambda);
}

/// Φ = Σ_e C(t_e, 2).
inline std::uint64_t count_phi(const Graph& g) {
  std::uint64_t phi = 0;
  for (std::uint32_t t : edge_triangle_counts(g)) phi += detail::choose2(t);
  return phi;
}

/// Ψ = Σ_e C(w_e, 2) with w_e = deg(u) + deg(v) - 2 wedges through e.
inline std::uint64_t count_psi(const Graph& g) {
  std::uint64_t psi = 0;
  for (const Edge& e : g.edges())
    psi += detail::choose2(g.degree(e.u) + g.degree(e.v) - 2);
  return psi;
}

/// (Ω, Ω′). Ω′ = Σ_e t_e·w_e − 2Δ counts {wedge, triangle} pairs sharing
/// exactly one edge with the triangle's own closed wedges excluded: for a
/// triangle edge e, w_e wedges pass through e and exactly two of them are
/// that triangle's closed wedges. Ω is reported so that Ω′ = (Ω − 6Δ)/2.
/// Cross-checked against exhaustive pair enumeration in the test suite.
inline std::pair<std::uint64_t, std::uint64_t> count_omega_prime(const Graph& g) {
  const auto t = edge_triangle_counts(g);
  std::uint64_t cross = 0;
  std::uint64_t delta = 0;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    const std::uint64_t w_e = g.degree(e.u) + g.degree(e.v) - 2;
    cross += std::uint64_t(t[i]) * w_e;
    delta += t[i];
  }
  if (cross < 2 * delta)
    throw std::logic_error("omega-prime convention violated: negative pair count");
  const std::uint64_t omega_prime = cross - 2 * delta;
  const std::uint64_t omega = 2 * omega_prime + 6 * delta;
  return {omega, omega_prime};
}

inline ExactStats exact_stats(const Graph& g) {
  ExactStats s;
  s.num_nodes = g.num_nodes();
  s.num_edges = g.num_edges();
  s.lambda = count_wedges(g);

  const auto t = edge_triangle_counts(g);
  std::uint64_t cross = 0;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    s.delta += t[i];
    s.phi += detail::choose2(t[i]);
    const std::uint64_t w_e = g.degree(e.u) + g.degree(e.v) - 2;
    s.psi += detail::choose2(w_e);
    cross += std::uint64_t(t[i]) * w_e;
  }
  s.omega_prime = cross - 2 * s.delta;
  s.omega = 2 * s.omega_prime + 6 * s.delta;
  s.clustering = clustering_coefficient(s);
  return s;
}

}  // namespace ccstream
