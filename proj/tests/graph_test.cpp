#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "bslab/error.hpp"
#include "bslab/families.hpp"
#include "bslab/graph.hpp"
#include "test_support.hpp"

namespace bslab {
namespace {

TEST(Graph, BuildSingleEdge) {
  const Graph g = Graph::build(2, {{0, 1}});
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_EQ(g.degree(1), 1u);
  EXPECT_TRUE(g.is_simple());
}

TEST(Graph, BuildTriangle) {
  const Graph g = Graph::build(3, {{0, 1}, {1, 2}, {2, 0}});
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(g.degree(v), 2u);
}

TEST(Graph, ParallelPairIsFlagged) {
  const Graph g = Graph::build(2, {{0, 1}, {0, 1}});
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_TRUE(g.has_parallel_edges());
  EXPECT_FALSE(g.is_simple());
}

TEST(Graph, LoopListedTwice) {
  const Graph g = Graph::build(1, {{0, 0}});
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_TRUE(g.has_loops());
  for (const Incidence& inc : g.neighbors(0)) EXPECT_EQ(inc.neighbor, 0u);
}

TEST(Graph, EndpointOutOfRange) {
  EXPECT_THROW(Graph::build(2, {{0, 2}}), PreconditionError);
}

TEST(Graph, AdjacencyMatchesEdges) {
  const Graph g = testing::random_connected(30, 0.2, 7);
  std::size_t total = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    total += g.degree(v);
    for (const Incidence& inc : g.neighbors(v)) {
      const Edge& e = g.edge(inc.edge);
      EXPECT_TRUE((e.u == v && e.v == inc.neighbor) || (e.v == v && e.u == inc.neighbor));
    }
  }
  EXPECT_EQ(total, 2 * g.edge_count());
}

TEST(Ball, PathMiddle) {
  const Graph p5 = path_graph(5);
  const RootedSubgraph b = ball(p5, 2, 1);
  EXPECT_EQ(b.graph.vertex_count(), 3u);
  EXPECT_EQ(b.graph.edge_count(), 2u);
  std::vector<Vertex> ids = b.original_ids;
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(ids, (std::vector<Vertex>{1, 2, 3}));
  EXPECT_EQ(b.original_ids[b.root], 2u);
}

TEST(Ball, ZeroRadius) {
  const RootedSubgraph b = ball(complete_graph(5), 3, 0);
  EXPECT_EQ(b.graph.vertex_count(), 1u);
  EXPECT_EQ(b.graph.edge_count(), 0u);
}

TEST(Ball, CycleRadiusThreeIsPath) {
  const RootedSubgraph b = ball(cycle_graph(10), 4, 3);
  EXPECT_EQ(b.graph.vertex_count(), 7u);
  EXPECT_EQ(b.graph.edge_count(), 6u);
  EXPECT_TRUE(is_connected(b.graph));
  EXPECT_EQ(b.graph.max_degree(), 2u);
}

TEST(Ball, InducedAndNested) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = testing::random_connected(25, 0.12, seed);
    const auto d = testing::floyd(g);
    for (std::uint32_t r = 0; r < 4; ++r) {
      const RootedSubgraph b = ball(g, 0, r), next = ball(g, 0, r + 1);
      std::set<Vertex> in(b.original_ids.begin(), b.original_ids.end());
      std::set<Vertex> in_next(next.original_ids.begin(), next.original_ids.end());
      EXPECT_TRUE(std::includes(in_next.begin(), in_next.end(), in.begin(), in.end()));
      std::size_t inside_edges = 0;
      for (Vertex v = 0; v < g.vertex_count(); ++v) EXPECT_EQ(in.contains(v), d[0][v] <= r);
      for (const Edge& e : g.edges()) inside_edges += in.contains(e.u) && in.contains(e.v);
      EXPECT_EQ(b.graph.edge_count(), inside_edges);
    }
  }
}

TEST(Ball, InvalidRoot) { EXPECT_THROW(ball(path_graph(3), 3, 1), PreconditionError); }

TEST(Net, PathGreedyFromStart) {
  const Vertex order[] = {0, 1, 2, 3, 4};
  EXPECT_EQ(maximal_net(path_graph(5), 2, order), (std::vector<Vertex>{0, 2, 4}));
}

TEST(Net, CompleteGraphSinglePoint) {
  EXPECT_EQ(maximal_net(complete_graph(4), 2, 99).size(), 1u);
}

TEST(Net, CycleSixAntipodal) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto net = maximal_net(cycle_graph(6), 3, seed);
    ASSERT_EQ(net.size(), 2u);
    EXPECT_EQ((net[0] + 6 - net[1]) % 6, 3u);
  }
}

TEST(Net, SeparatedAndDense) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = testing::random_connected(40, 0.05, seed);
    const auto d = testing::floyd(g);
    for (std::uint32_t r = 1; r <= 4; ++r) {
      const auto net = maximal_net(g, r, seed * 31 + r);
      for (std::size_t i = 0; i < net.size(); ++i)
        for (std::size_t j = i + 1; j < net.size(); ++j) EXPECT_GE(d[net[i]][net[j]], r);
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        std::uint32_t best = kUnreachable;
        for (Vertex x : net) best = std::min(best, d[v][x]);
        EXPECT_LE(best, r);
        EXPECT_LE(best, r - 1);
      }
    }
  }
}

TEST(Net, DeterministicPerSeed) {
  const Graph g = testing::random_connected(50, 0.05, 3);
  EXPECT_EQ(maximal_net(g, 3, 11), maximal_net(g, 3, 11));
}

TEST(Distances, Path) {
  EXPECT_EQ(distances_from(path_graph(5), 0), (std::vector<std::uint32_t>{0, 1, 2, 3, 4}));
}

TEST(Distances, Disconnected) {
  const Graph g = Graph::build(2, {});
  EXPECT_EQ(distances_from(g, 0), (std::vector<std::uint32_t>{0, kUnreachable}));
}

TEST(Distances, CycleMaximum) {
  const auto d = distances_from(cycle_graph(10), 0);
  EXPECT_EQ(*std::max_element(d.begin(), d.end()), 5u);
}

TEST(Distances, MatchFloydAndTriangle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = testing::random_connected(30, 0.08, 100 + seed);
    const auto d = testing::floyd(g);
    for (Vertex s = 0; s < g.vertex_count(); ++s) EXPECT_EQ(distances_from(g, s), d[s]);
    for (Vertex a = 0; a < 30; a += 3)
      for (Vertex b = 0; b < 30; b += 5)
        for (Vertex c = 0; c < 30; c += 7) EXPECT_LE(d[a][c], d[a][b] + d[b][c]);
  }
}

TEST(Distances, InvalidSource) { EXPECT_THROW(distances_from(path_graph(2), 5), PreconditionError); }

TEST(EdgeList, RoundTrip) {
  const Graph g = Graph::build(4, {{0, 1}, {1, 1}, {2, 3}, {0, 1}});
  const std::string text = write_edge_list(g);
  EXPECT_EQ(text, "4 4\n0 1\n1 1\n2 3\n0 1\n");
  const Graph back = parse_edge_list(text);
  EXPECT_EQ(back, g);
  EXPECT_EQ(write_edge_list(back), text);
}

TEST(EdgeList, RejectsMalformed) {
  EXPECT_THROW(parse_edge_list("2 1\n0 2\n"), PreconditionError);
  EXPECT_THROW(parse_edge_list("2 2\n0 1\n"), PreconditionError);
  EXPECT_THROW(parse_edge_list("2 1\n0 1\n1 0\n"), PreconditionError);
  EXPECT_THROW(parse_edge_list("x"), PreconditionError);
}

}  // namespace
}  // namespace bslab
