#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bslab/graph.hpp"

namespace bslab {

inline constexpr std::size_t kCanonicalVertexCap = 64;

// Canonical form of a rooted graph: equal bytes iff rooted-isomorphic.
struct RootedBallCode {
  std::vector<std::uint8_t> bytes;
  std::size_t vertex_count = 0;
  std::uint32_t depth = 0;

  std::string hex() const;
  friend bool operator==(const RootedBallCode& a, const RootedBallCode& b) {
    return a.bytes == b.bytes;
  }
};

// Colour refinement seeded by (distance from root, degree), then
// individualization-refinement with automorphism pruning. The code lists
// the vertex count and the sorted edge pairs of the lexicographically
// smallest leaf. Multigraphs are supported.
RootedBallCode canonical_code(const RootedSubgraph& b, std::size_t cap = kCanonicalVertexCap);
RootedBallCode canonical_code(const Graph& g, Vertex root, std::size_t cap = kCanonicalVertexCap);

// Distribution of depth-r ball codes over a multiset of roots. Counts are
// kept as integers so distances between distributions are exact rationals.
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  EmpiricalDistribution(std::uint32_t depth, std::map<std::string, std::uint64_t> counts);

  std::uint32_t depth() const { return depth_; }
  std::uint64_t total() const { return total_; }
  const std::map<std::string, std::uint64_t>& counts() const { return counts_; }
  std::size_t support_size() const { return counts_.size(); }
  double probability(const std::string& code_hex) const;
  std::map<std::string, double> weights() const;

  friend bool operator==(const EmpiricalDistribution&, const EmpiricalDistribution&) = default;

 private:
  std::uint32_t depth_ = 0;
  std::uint64_t total_ = 0;
  std::map<std::string, std::uint64_t> counts_;
};

struct RootSample {
  std::size_t roots = 0;
  std::uint64_t seed = 0;
};

// Exact mode uses every vertex once; sampled mode draws roots uniformly with
// replacement from a seeded stream.
EmpiricalDistribution neighborhood_distribution(const Graph& g, std::uint32_t r,
                                                std::optional<RootSample> sample = std::nullopt,
                                                std::size_t cap = kCanonicalVertexCap);

// Total variation as a reduced fraction numerator / denominator.
struct ExactFraction {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

ExactFraction tv_distance_exact(const EmpiricalDistribution& a, const EmpiricalDistribution& b);
double tv_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

struct ConvergenceReport {
  std::vector<std::vector<double>> tv;  // symmetric, zero diagonal
  std::vector<EmpiricalDistribution> distributions;
  std::size_t tail_begin = 0;
  double tail_max = 0.0;  // max TV among the last ceil(m/2) graphs
};

ConvergenceReport convergence_diagnostic(const std::vector<Graph>& graphs, std::uint32_t r,
                                         std::optional<RootSample> sample = std::nullopt);

// Fraction of roots whose depth-r ball is a tree.
double tree_ball_fraction(const Graph& g, std::uint32_t r,
                          std::optional<RootSample> sample = std::nullopt);

// "depth R roots N" then one "code_hex probability" line per code, sorted by
// code. Probabilities are printed round-trip exact.
std::string write_distribution(const EmpiricalDistribution& d);
EmpiricalDistribution parse_distribution(std::string_view text);

}  // namespace bslab
