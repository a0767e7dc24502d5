#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "bslab/embedding.hpp"
#include "bslab/graph.hpp"

namespace bslab {

struct EmbeddedGraph {
  Graph graph;
  RotationSystem rotation;
};

// C_n x C_n with the standard (E, N, W, S) rotation; genus 1. n >= 3.
EmbeddedGraph torus_grid(std::size_t n);
// n x n grid embedded in the sphere; genus 0. n >= 2.
EmbeddedGraph planar_grid(std::size_t n);

inline constexpr std::size_t kRandomRegularRestarts = 10'000;

// Simple d-regular graph from the pairing model, restarting whenever a loop
// or repeated pair shows up. Throws PreconditionError on odd n*d, d < 3, or
// when the restart cap is exhausted.
Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

// Complete binary tree with levels 0..depth (2^(depth+1) - 1 vertices).
Graph binary_tree(std::size_t depth);
Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph complete_bipartite(std::size_t a, std::size_t b);
Graph star_graph(std::size_t leaves);

// Random connected map for property tests: a random spanning tree plus extra
// edges (a few of them parallel), all under the valence cap, with shuffled
// rotations. Every face has length >= 3. Requires vertices >= 3.
RotationSystem random_rotation_system(std::size_t vertices, std::size_t max_valence,
                                      std::uint64_t seed);

enum class FamilyKind { kPlanarGrid, kTorusGrid, kPath, kCycle, kComplete, kBinaryTree, kRandomRegular };

std::string_view family_name(FamilyKind kind);
std::optional<FamilyKind> parse_family_kind(std::string_view name);

struct FamilySpec {
  FamilyKind kind = FamilyKind::kPath;
  std::size_t size = 0;    // side length, vertex count, or tree depth
  std::size_t degree = 3;  // random_regular only
  std::uint64_t seed = 0;  // random_regular only
};

Graph generate(const FamilySpec& spec);
std::size_t expected_vertex_count(const FamilySpec& spec);
std::size_t valence_bound(const FamilySpec& spec);
std::string describe(const FamilySpec& spec);

}  // namespace bslab
