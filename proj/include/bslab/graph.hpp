#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bslab {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr std::uint32_t kUnreachable =
    std::numeric_limits<std::uint32_t>::max();

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  bool is_loop() const { return u == v; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex neighbor = 0;
  EdgeId edge = 0;
};

// Finite undirected multigraph. Immutable once built; adjacency is stored in
// CSR form so neighbors() and degree() are O(1). A loop appears twice in the
// adjacency list of its endpoint and contributes 2 to the degree.
class Graph {
 public:
  Graph() = default;

  // Throws PreconditionError if an endpoint is >= vertex_count.
  static Graph build(std::size_t vertex_count, std::vector<Edge> edges);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const Incidence> neighbors(Vertex v) const {
    return {incidences_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const { return max_degree_; }

  bool has_loops() const { return has_loops_; }
  bool has_parallel_edges() const { return has_parallel_; }
  bool is_simple() const { return !has_loops_ && !has_parallel_; }

  bool contains(Vertex v) const { return v < vertex_count(); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidences_;
  std::size_t max_degree_ = 0;
  bool has_loops_ = false;
  bool has_parallel_ = false;
};

// Closed ball B(root, depth) as an induced subgraph. Local vertex 0 is the
// root; local ids follow BFS order.
struct RootedSubgraph {
  Graph graph;
  Vertex root = 0;
  std::uint32_t depth = 0;
  std::vector<Vertex> original_ids;
};

// BFS distances; unreachable vertices get kUnreachable.
std::vector<std::uint32_t> distances_from(const Graph& g, Vertex source);

// Multi-source BFS: distance to the nearest source.
std::vector<std::uint32_t> distances_from_set(const Graph& g,
                                              std::span<const Vertex> sources);

RootedSubgraph ball(const Graph& g, Vertex root, std::uint32_t radius);

// Greedy maximal r-net visiting vertices in the given order. The result has
// pairwise distances >= r and every vertex lies within distance r-1 of it.
std::vector<Vertex> maximal_net(const Graph& g, std::uint32_t r,
                                std::span<const Vertex> order);
// Same, with the visiting order a seeded shuffle of the vertex ids.
std::vector<Vertex> maximal_net(const Graph& g, std::uint32_t r,
                                std::uint64_t seed);

bool is_connected(const Graph& g);
std::vector<std::uint32_t> component_labels(const Graph& g);

// Induced subgraph on `keep` (local id i <-> keep[i]).
Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

// Same graph with edge `skip` removed (edge ids above it shift down by one).
Graph without_edge(const Graph& g, EdgeId skip);

// Edge-list text: "n m" then m lines "u v". write(parse(s)) == s for any text
// write() produced.
std::string write_edge_list(const Graph& g);
Graph parse_edge_list(std::string_view text);

}  // namespace bslab
