#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bslab/error.hpp"
#include "bslab/families.hpp"
#include "bslab/spectral.hpp"
#include "test_support.hpp"

namespace bslab {
namespace {

// Plain subset scan in increasing mask order; boundary counted from the
// edge list. Returns the minimal ratio as (boundary, size).
std::pair<std::uint64_t, std::uint64_t> brute_cheeger(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::pair<std::uint64_t, std::uint64_t> best{1, 0};
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::uint64_t>(__builtin_popcount(mask));
    if (2 * size > n) continue;
    std::uint64_t boundary = 0;
    for (const Edge& e : g.edges()) {
      boundary += (((mask >> e.u) ^ (mask >> e.v)) & 1u) ? 1 : 0;
    }
    if (best.second == 0 || boundary * best.second < best.first * size) best = {boundary, size};
  }
  return best;
}

bool same_ratio(const CutResult& c, std::pair<std::uint64_t, std::uint64_t> r) {
  return c.boundary * r.second == r.first * c.size;
}

TEST(Cheeger, SmallExamples) {
  EXPECT_EQ(cheeger_exact(complete_graph(2)).value(), 1.0);
  const CutResult c10 = cheeger_exact(cycle_graph(10));
  EXPECT_EQ(c10.boundary * 5, 2 * c10.size);
  const CutResult k4 = cheeger_exact(complete_graph(4));
  EXPECT_EQ(k4.value(), 2.0);
  EXPECT_EQ(k4.witness, (std::vector<Vertex>{0, 1}));
}

TEST(Cheeger, CyclesClosedForm) {
  for (std::size_t n = 4; n <= 16; ++n) {
    const CutResult c = cheeger_exact(cycle_graph(n));
    EXPECT_EQ(c.boundary * (n / 2), 2 * c.size) << n;
  }
}

TEST(Cheeger, MatchesBruteForceAndWitness) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Graph g = testing::random_connected(2 + seed % 9, 0.3, seed);
    const CutResult c = cheeger_exact(g);
    EXPECT_TRUE(same_ratio(c, brute_cheeger(g))) << seed;
    EXPECT_EQ(edge_boundary(g, c.witness), c.boundary);
    EXPECT_EQ(c.witness.size(), c.size);
    EXPECT_LE(2 * c.size, g.vertex_count());
  }
}

TEST(Cheeger, Preconditions) {
  EXPECT_THROW(cheeger_exact(Graph::build(3, {{0, 1}})), PreconditionError);
  EXPECT_THROW(cheeger_exact(cycle_graph(25)), PreconditionError);
}

TEST(Lambda2, NormalizedClosedForms) {
  EXPECT_NEAR(lambda2(complete_graph(2), LaplacianKind::kNormalized), 2.0, 1e-12);
  EXPECT_NEAR(lambda2(cycle_graph(4), LaplacianKind::kNormalized), 1.0, 1e-12);
}

TEST(Lambda2, CombinatorialClosedForms) {
  for (std::size_t n = 3; n <= 9; ++n) {
    EXPECT_NEAR(lambda2(complete_graph(n), LaplacianKind::kCombinatorial), static_cast<double>(n), 1e-10);
  }
  const double c100 = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi / 100.0);
  EXPECT_NEAR(lambda2(cycle_graph(100), LaplacianKind::kCombinatorial), c100, 1e-8 * c100);
}

TEST(Lambda2, IterativeAgreesWithDense) {
  EigenOptions iterative;
  iterative.force_iterative = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = testing::random_connected(20 + seed, 0.15, 40 + seed);
    for (auto kind : {LaplacianKind::kCombinatorial, LaplacianKind::kNormalized}) {
      const double dense = laplacian_spectrum_dense(g, kind)[1];
      const FiedlerPair it = fiedler_pair(g, kind, iterative);
      EXPECT_NEAR(it.lambda2, dense, 1e-8 * dense);
      EXPECT_GT(it.iterations, 0u);
    }
  }
}

TEST(Lambda2, LargeCycleIterative) {
  const double exact = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi / 300.0);
  const FiedlerPair f = fiedler_pair(cycle_graph(300), LaplacianKind::kCombinatorial);
  EXPECT_NEAR(f.lambda2, exact, 1e-8 * exact);
  double norm = 0.0, sum = 0.0;
  for (double x : f.vector) norm += x * x, sum += x;
  EXPECT_NEAR(norm, 1.0, 1e-10);
  EXPECT_NEAR(sum, 0.0, 1e-8);
}

TEST(Lambda2, DisconnectedRejected) {
  EXPECT_THROW(lambda2(Graph::build(4, {{0, 1}, {2, 3}}), LaplacianKind::kCombinatorial), PreconditionError);
}

TEST(Sweep, CycleFiedler) {
  const Graph g = cycle_graph(10);
  const FiedlerPair f = fiedler_pair(g, LaplacianKind::kCombinatorial);
  const CutResult c = sweep_cut(g, f.vector);
  EXPECT_EQ(c.boundary * 5, 2 * c.size);
}

TEST(Sweep, CompleteGraphAnyScores) {
  const Graph g = complete_graph(4);
  const double scores[] = {0.3, -1.0, 2.0, 0.1};
  EXPECT_EQ(sweep_cut(g, scores).value(), 2.0);
}

TEST(Sweep, ConstantScoresFallBack) {
  const Graph g = testing::random_connected(12, 0.2, 5);
  const std::vector<double> flat(12, 1.0);
  const CutResult c = sweep_cut(g, flat);
  EXPECT_FALSE(c.witness.empty());
  EXPECT_EQ(edge_boundary(g, c.witness), c.boundary);
  EXPECT_FALSE(c.better_than(cheeger_exact(g)));
}

TEST(Sweep, SandwichOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph g = testing::random_connected(2 + seed % 7, 0.35, 300 + seed);
    const CutResult exact = cheeger_exact(g);
    const FiedlerPair f = fiedler_pair(g, LaplacianKind::kCombinatorial);
    const CutResult sweep = sweep_cut(g, f.vector);
    EXPECT_LE(f.lambda2 / 2.0, exact.value() * (1 + 1e-12));
    EXPECT_FALSE(sweep.better_than(exact));
    EXPECT_EQ(edge_boundary(g, sweep.witness), sweep.boundary);
  }
}

TEST(Expander, Examples) {
  const auto k4 = expander_certify(complete_graph(4), 1.0);
  EXPECT_TRUE(k4.certified);
  EXPECT_NEAR(k4.lambda2, 4.0, 1e-10);
  EXPECT_NEAR(k4.lower_bound, 2.0, 1e-10);
  EXPECT_FALSE(expander_certify(cycle_graph(100), 0.1).certified);
  EXPECT_TRUE(expander_certify(complete_graph(2), 1.0).certified);
}

}  // namespace
}  // namespace bslab
