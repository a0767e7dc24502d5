#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bslab/graph.hpp"

namespace bslab {

// Half-edge id. Edge e owns darts 2e (at edge(e).u) and 2e+1 (at edge(e).v),
// so the edge involution is d ^ 1.
using Dart = std::uint32_t;

inline constexpr Dart opposite(Dart d) { return d ^ 1u; }

// Combinatorial map of a cellular embedding in an orientable surface:
// darts, the involution alpha (opposite()), and the counterclockwise
// successor sigma of each dart around its vertex.
class RotationSystem {
 public:
  RotationSystem() = default;

  // rotations[v] lists the darts at v in counterclockwise order. Every dart
  // must appear exactly once, at the vertex its edge says it belongs to.
  static RotationSystem from_rotations(std::size_t vertex_count, std::vector<Edge> edges,
                                       const std::vector<std::vector<Dart>>& rotations);
  // Uses each vertex's adjacency-list order as its rotation.
  static RotationSystem from_graph(const Graph& g);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t dart_count() const { return sigma_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  Vertex vertex_of(Dart d) const {
    const Edge& e = edges_[d >> 1];
    return (d & 1u) ? e.v : e.u;
  }
  Dart alpha(Dart d) const { return opposite(d); }
  Dart sigma(Dart d) const { return sigma_[d]; }
  // Face permutation phi = sigma . alpha.
  Dart phi(Dart d) const { return sigma_[opposite(d)]; }

  std::size_t degree(Vertex v) const;
  std::size_t max_degree() const;
  // Rotation at each vertex, starting from its smallest dart.
  std::vector<std::vector<Dart>> rotations() const;
  Graph underlying_graph() const;

  friend bool operator==(const RotationSystem&, const RotationSystem&) = default;

 private:
  friend class MapBuilder;
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<Dart> sigma_;
};

struct FaceTrace {
  // Closed dart walks, ordered by smallest dart; each walk starts at its
  // smallest dart and follows phi.
  std::vector<std::vector<Dart>> faces;

  std::size_t face_count() const { return faces.size(); }
  std::vector<std::size_t> lengths() const;
};

FaceTrace trace_faces(const RotationSystem& rs);

// Genus g with V - E + F = 2 - 2g. Requires a connected underlying graph;
// throws PreconditionError otherwise or if the Euler defect is odd/negative.
std::uint32_t euler_genus(const RotationSystem& rs);

inline constexpr std::uint64_t kDefaultGenusBudget = 50'000'000;

// Minimum euler_genus over every rotation system of g (connected). Throws
// PreconditionError when prod_v (deg(v)-1)! exceeds `budget`.
std::uint32_t min_genus_exhaustive(const Graph& g,
                                   std::uint64_t budget = kDefaultGenusBudget);
// Number of rotation systems min_genus_exhaustive would visit (saturates).
std::uint64_t rotation_system_count(const Graph& g);

// Diagonals triangulating an n-gon with corners 0..n-1, cutting ears
// alternately from the low and high end. Each corner receives at most two
// chords.
std::vector<std::pair<std::uint32_t, std::uint32_t>> zigzag_triangulate_polygon(std::size_t n);

// Triangulates every face of rs with zigzag chords. No vertices are added,
// every input edge is kept, each vertex's degree at most triples, and the
// genus is unchanged. The result may have loops or parallel edges when faces
// revisit a vertex. `max_valence` is the caller's declared input bound.
// Throws PreconditionError on faces of length 1 or 2 or if the bound is
// violated.
RotationSystem triangulate_fill(const RotationSystem& rs, std::size_t max_valence);

struct StretchReport {
  double contraction = 1.0;   // max d_sub / d_super over checked pairs
  double expansion = 1.0;     // max d_super / d_sub, at least 1
  std::uint32_t density_radius = 0;  // max distance in super to the image
  std::size_t pairs_checked = 0;
  bool exact = true;
};

inline constexpr std::size_t kExactStretchLimit = 512;

// Compares path metrics of `sub` and `super` through `inclusion` (sub vertex
// -> super vertex). Exact when sub has at most 512 vertices; otherwise BFS
// runs from `source_budget` seeded sources.
StretchReport metric_stretch(const Graph& sub, const Graph& super,
                             std::span<const Vertex> inclusion, std::size_t source_budget,
                             std::uint64_t seed);

// Text form: header "V E", then one line per vertex with its darts in cyclic
// order (starting from the smallest).
std::string write_rotation_system(const RotationSystem& rs);
RotationSystem parse_rotation_system(std::string_view text);

}  // namespace bslab
