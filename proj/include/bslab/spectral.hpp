#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bslab/graph.hpp"

namespace bslab {

// Edge cut |dA| / |A| with its witness A (sorted, |A| <= |V|/2).
struct CutResult {
  std::uint64_t boundary = 0;
  std::uint64_t size = 0;
  std::vector<Vertex> witness;

  double value() const { return static_cast<double>(boundary) / static_cast<double>(size); }
  // Exact rational comparison of the cut ratios.
  bool better_than(const CutResult& other) const {
    return boundary * other.size < other.boundary * size;
  }
};

// Number of non-loop edges with exactly one endpoint in `set`.
std::uint64_t edge_boundary(const Graph& g, std::span<const Vertex> set);

inline constexpr std::size_t kCheegerExactLimit = 24;

// min |dA|/|A| over non-empty A with |A| <= |V|/2, by Gray-code enumeration.
// Ties go to the lexicographically smallest witness. Requires a connected
// graph with 2 <= |V| <= 24.
CutResult cheeger_exact(const Graph& g);

enum class LaplacianKind { kCombinatorial, kNormalized };

struct EigenOptions {
  double relative_tolerance = 1e-8;
  std::size_t max_iterations = 3000;
  // Dense solves are used up to this many vertices unless force_iterative.
  std::size_t dense_limit = 64;
  bool force_iterative = false;
  std::uint64_t seed = 0x5eed;
};

struct FiedlerPair {
  double lambda2 = 0.0;
  std::vector<double> vector;  // unit norm, orthogonal to the kernel
  std::size_t iterations = 0;  // 0 for the dense path
  double residual = 0.0;
};

// Second-smallest Laplacian eigenpair. Lanczos with full
// reorthogonalization on the complement of the kernel vector; a dense
// symmetric solve for small graphs. Throws PreconditionError on disconnected
// input and ConvergenceError at the iteration cap.
FiedlerPair fiedler_pair(const Graph& g, LaplacianKind kind, const EigenOptions& options = {});
double lambda2(const Graph& g, LaplacianKind kind, const EigenOptions& options = {});
// All eigenvalues, ascending, by dense solve (small graphs; test oracle).
std::vector<double> laplacian_spectrum_dense(const Graph& g, LaplacianKind kind);

// Best prefix cut (from either end) of the vertices sorted by score. Scores
// that are all equal fall back to BFS order from vertex 0.
CutResult sweep_cut(const Graph& g, std::span<const double> scores);

struct ExpanderCertificate {
  bool certified = false;
  double lambda2 = 0.0;
  double lower_bound = 0.0;  // lambda2 / 2 <= h(G)
  double threshold = 0.0;
};

ExpanderCertificate expander_certify(const Graph& g, double epsilon,
                                     const EigenOptions& options = {});

}  // namespace bslab
