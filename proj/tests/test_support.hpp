#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "bslab/graph.hpp"

namespace bslab::testing {

// Random connected simple graph: a random tree plus extra edges with
// probability `density`.
inline Graph random_connected(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (Vertex v = 1; v < n; ++v) {
    const Vertex u = std::uniform_int_distribution<Vertex>(0, v - 1)(rng);
    edges.push_back({u, v});
    adj[u][v] = adj[v][u] = 1;
  }
  std::bernoulli_distribution coin(density);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!adj[u][v] && coin(rng)) edges.push_back({u, v});
    }
  }
  return Graph::build(n, std::move(edges));
}

// All-pairs distances by Floyd-Warshall, an oracle independent of BFS.
inline std::vector<std::vector<std::uint32_t>> floyd(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const std::uint32_t inf = kUnreachable / 2;
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const Edge& e : g.edges()) {
    if (!e.is_loop()) d[e.u][e.v] = d[e.v][e.u] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (auto& x : row)
      if (x >= inf) x = kUnreachable;
  return d;
}

}  // namespace bslab::testing
