#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "bslab/error.hpp"
#include "bslab/families.hpp"
#include "bslab/local_limit.hpp"
#include "test_support.hpp"

namespace bslab {
namespace {

std::multiset<std::pair<Vertex, Vertex>> edge_multiset(const Graph& g, const std::vector<Vertex>& perm) {
  std::multiset<std::pair<Vertex, Vertex>> out;
  for (const Edge& e : g.edges()) {
    const Vertex a = perm[e.u], b = perm[e.v];
    out.emplace(std::min(a, b), std::max(a, b));
  }
  return out;
}

// Rooted isomorphism by trying every relabelling that fixes the root.
bool rooted_isomorphic(const Graph& a, Vertex ra, const Graph& b, Vertex rb) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  const std::size_t n = a.vertex_count();
  std::vector<Vertex> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  const auto target = edge_multiset(b, identity);
  std::vector<Vertex> others;
  for (Vertex v = 0; v < n; ++v) {
    if (v != rb) others.push_back(v);
  }
  do {
    std::vector<Vertex> perm(n);
    perm[ra] = rb;
    std::size_t k = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (v != ra) perm[v] = others[k++];
    }
    if (edge_multiset(a, perm) == target) return true;
  } while (std::next_permutation(others.begin(), others.end()));
  return false;
}

Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v]});
  return Graph::build(g.vertex_count(), std::move(edges));
}

TEST(CanonicalCode, AgreesWithPermutationOracleOnAllFiveVertexGraphs) {
  std::vector<std::pair<Vertex, Vertex>> slots;
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = u + 1; v < 5; ++v) slots.emplace_back(u, v);
  std::map<std::string, std::vector<Graph>> classes;
  for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (mask >> i & 1) edges.push_back({slots[i].first, slots[i].second});
    }
    const Graph g = Graph::build(5, std::move(edges));
    classes[canonical_code(g, 0).hex()].push_back(g);
  }
  std::vector<Graph> reps;
  for (const auto& [code, members] : classes) {
    for (const Graph& g : members) EXPECT_TRUE(rooted_isomorphic(members.front(), 0, g, 0)) << code;
    reps.push_back(members.front());
  }
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) EXPECT_FALSE(rooted_isomorphic(reps[i], 0, reps[j], 0));
}

TEST(CanonicalCode, RandomPairsMatchOracle) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 4 + trial % 5;
    std::vector<Edge> ea, eb;
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    const std::size_t m = n + trial % 4;
    for (std::size_t i = 0; i < m; ++i) ea.push_back({pick(rng), pick(rng)});
    const Graph a = Graph::build(n, ea);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    Graph b = relabel(a, perm);
    if (trial % 2 == 1) {
      // Move one edge endpoint; usually breaks isomorphism.
      eb.assign(b.edges().begin(), b.edges().end());
      eb[0].v = pick(rng);
      b = Graph::build(n, eb);
    }
    const bool same = canonical_code(a, 0) == canonical_code(b, 0);
    EXPECT_EQ(same, rooted_isomorphic(a, 0, b, 0)) << trial;
  }
}

TEST(CanonicalCode, RootMatters) {
  const Graph p = path_graph(3);
  EXPECT_NE(canonical_code(p, 0), canonical_code(p, 1));
  EXPECT_EQ(canonical_code(p, 0), canonical_code(p, 2));
}

TEST(CanonicalCode, RegularSymmetricGraphs) {
  for (const Graph& g : {complete_graph(6), cycle_graph(12), torus_grid(5).graph, complete_bipartite(4, 4)}) {
    const auto c0 = canonical_code(g, 0);
    for (Vertex v = 1; v < g.vertex_count(); ++v) EXPECT_EQ(canonical_code(g, v), c0);
  }
}

TEST(CanonicalCode, CapEnforced) {
  EXPECT_THROW(canonical_code(path_graph(70), 0), PreconditionError);
  EXPECT_THROW(canonical_code(path_graph(10), 0, 8), PreconditionError);
  EXPECT_THROW(canonical_code(path_graph(10), 0, 300), PreconditionError);
  EXPECT_NO_THROW(canonical_code(path_graph(64), 0));
}

TEST(Distribution, CompleteGraphSingleCode) {
  const auto d = neighborhood_distribution(complete_graph(4), 1);
  EXPECT_EQ(d.support_size(), 1u);
  EXPECT_EQ(d.total(), 4u);
}

TEST(Distribution, PathEndpointsShare) {
  for (std::size_t n : {6, 9, 20}) {
    const auto d = neighborhood_distribution(path_graph(n), 2);
    // Codes: endpoint, second vertex, interior.
    EXPECT_EQ(d.support_size(), 3u);
    EXPECT_DOUBLE_EQ(d.probability(canonical_code(ball(path_graph(n), 0, 2)).hex()), 2.0 / n);
  }
}

TEST(Distribution, TransitiveGraphs) {
  for (const Graph& g : {cycle_graph(10), torus_grid(8).graph}) {
    const auto d = neighborhood_distribution(g, 2);
    EXPECT_EQ(d.support_size(), 1u);
    EXPECT_EQ(d.total(), g.vertex_count());
  }
}

TEST(Distribution, ExactTvOfPaths) {
  // Paths P_a and P_b at depth r share the interior code; the TV is
  // r * |2/a - 2/b| when both are long enough.
  for (std::uint32_t r = 1; r <= 3; ++r) {
    for (std::size_t a : {10, 15}) {
      for (std::size_t b : {20, 33}) {
        const auto da = neighborhood_distribution(path_graph(a), r);
        const auto db = neighborhood_distribution(path_graph(b), r);
        const auto tv = tv_distance_exact(da, db);
        // r * |2/a - 2/b| = 2r|b - a| / (ab), reduced.
        std::uint64_t num = 2 * r * (b - a), den = a * b;
        const std::uint64_t g = std::gcd(num, den);
        EXPECT_EQ(tv.numerator, num / g);
        EXPECT_EQ(tv.denominator, den / g);
        EXPECT_DOUBLE_EQ(tv_distance(da, db), static_cast<double>(num) / den);
      }
    }
  }
}

TEST(Distribution, TvMetricProperties) {
  std::vector<EmpiricalDistribution> ds;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    ds.push_back(neighborhood_distribution(testing::random_connected(25, 0.05, seed), 1));
  }
  for (const auto& a : ds) {
    EXPECT_EQ(tv_distance_exact(a, a).numerator, 0u);
    for (const auto& b : ds) {
      EXPECT_EQ(tv_distance(a, b), tv_distance(b, a));
      EXPECT_LE(tv_distance(a, b), 1.0);
      for (const auto& c : ds) EXPECT_LE(tv_distance(a, c), tv_distance(a, b) + tv_distance(b, c) + 1e-15);
    }
  }
}

TEST(Distribution, SampledCloseToExact) {
  const Graph g = random_regular(400, 3, 5);
  const auto exact = neighborhood_distribution(g, 2);
  const std::size_t k = 20'000;
  const auto sampled = neighborhood_distribution(g, 2, RootSample{k, 17});
  EXPECT_EQ(sampled.total(), k);
  const double bound = 3.0 * std::sqrt(static_cast<double>(exact.support_size()) / k);
  EXPECT_LE(tv_distance(exact, sampled), bound);
  EXPECT_EQ(sampled, neighborhood_distribution(g, 2, RootSample{k, 17}));
}

TEST(Distribution, DepthMismatchThrows) {
  const auto a = neighborhood_distribution(path_graph(5), 1);
  const auto b = neighborhood_distribution(path_graph(5), 2);
  EXPECT_THROW(tv_distance(a, b), PreconditionError);
  EXPECT_THROW(neighborhood_distribution(path_graph(5), 1, RootSample{0, 1}), PreconditionError);
}

TEST(Distribution, SerializationRoundTrip) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto d = neighborhood_distribution(testing::random_connected(37, 0.1, seed), 2);
    const std::string text = write_distribution(d);
    const auto back = parse_distribution(text);
    EXPECT_EQ(back, d);
    EXPECT_EQ(write_distribution(back), text);
  }
  EXPECT_THROW(parse_distribution("depth 1 roots 2\nab 0.5\n"), PreconditionError);
  EXPECT_THROW(parse_distribution("depth 1 roots 1\nAB 1\n"), PreconditionError);
  EXPECT_THROW(parse_distribution("nonsense"), PreconditionError);
}

TEST(Convergence, TorusSequenceIsFlat) {
  std::vector<Graph> gs;
  for (std::size_t n : {6, 9, 12}) gs.push_back(torus_grid(n).graph);
  const auto rep = convergence_diagnostic(gs, 2);
  EXPECT_EQ(rep.tail_max, 0.0);
  EXPECT_EQ(rep.tail_begin, 1u);
  for (std::size_t i = 0; i < gs.size(); ++i) EXPECT_EQ(rep.tv[i][i], 0.0);
}

TEST(Convergence, PathTailShrinks) {
  std::vector<Graph> gs;
  for (std::size_t n : {10, 20, 40, 80}) gs.push_back(path_graph(n));
  const auto rep = convergence_diagnostic(gs, 1);
  EXPECT_EQ(rep.tail_begin, 2u);
  EXPECT_NEAR(rep.tail_max, 2.0 * (1.0 / 40 - 1.0 / 80), 1e-15);
  EXPECT_GT(rep.tv[0][3], rep.tail_max);
}

TEST(TreeFraction, Examples) {
  EXPECT_EQ(tree_ball_fraction(path_graph(10), 3), 1.0);
  EXPECT_EQ(tree_ball_fraction(binary_tree(5), 4), 1.0);
  EXPECT_EQ(tree_ball_fraction(cycle_graph(5), 2), 0.0);
  EXPECT_EQ(tree_ball_fraction(cycle_graph(7), 2), 1.0);
  EXPECT_EQ(tree_ball_fraction(complete_graph(4), 1), 0.0);
}

}  // namespace
}  // namespace bslab
