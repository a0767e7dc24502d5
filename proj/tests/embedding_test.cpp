#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "bslab/embedding.hpp"
#include "bslab/error.hpp"
#include "bslab/families.hpp"

namespace bslab {
namespace {

RotationSystem triangle_map() {
  return RotationSystem::from_rotations(3, {{0, 1}, {1, 2}, {2, 0}}, {{0, 5}, {1, 2}, {3, 4}});
}

// K4 drawn with vertex 0 in the middle of the triangle 1, 2, 3.
RotationSystem tetrahedron_map() {
  return RotationSystem::from_rotations(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 1}},
                                        {{0, 2, 4}, {6, 1, 11}, {8, 3, 7}, {10, 5, 9}});
}

RotationSystem square_map() {
  return RotationSystem::from_rotations(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {{0, 7}, {1, 2}, {3, 4}, {5, 6}});
}

TEST(RotationSystem, InvolutionAndVertexOrbits) {
  const RotationSystem rs = random_rotation_system(20, 5, 3);
  for (Dart d = 0; d < rs.dart_count(); ++d) {
    EXPECT_NE(rs.alpha(d), d);
    EXPECT_EQ(rs.alpha(rs.alpha(d)), d);
    EXPECT_EQ(rs.vertex_of(rs.sigma(d)), rs.vertex_of(d));
  }
  const Graph g = rs.underlying_graph();
  EXPECT_EQ(g.edge_count(), rs.edge_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) EXPECT_EQ(g.degree(v), rs.degree(v));
}

TEST(RotationSystem, RejectsBadRotation) {
  EXPECT_THROW(RotationSystem::from_rotations(2, {{0, 1}}, {{0}, {0}}), PreconditionError);
  EXPECT_THROW(RotationSystem::from_rotations(2, {{0, 1}}, {{0, 1}, {}}), PreconditionError);
}

TEST(Faces, Triangle) {
  const FaceTrace t = trace_faces(triangle_map());
  EXPECT_EQ(t.face_count(), 2u);
  EXPECT_EQ(t.lengths(), (std::vector<std::size_t>{3, 3}));
}

TEST(Faces, SingleEdge) {
  const RotationSystem rs = RotationSystem::from_rotations(2, {{0, 1}}, {{0}, {1}});
  const FaceTrace t = trace_faces(rs);
  EXPECT_EQ(t.lengths(), (std::vector<std::size_t>{2}));
  EXPECT_EQ(euler_genus(rs), 0u);
}

TEST(Faces, Tetrahedron) {
  const RotationSystem rs = tetrahedron_map();
  EXPECT_EQ(trace_faces(rs).lengths(), (std::vector<std::size_t>{3, 3, 3, 3}));
  EXPECT_EQ(euler_genus(rs), 0u);
}

TEST(Faces, EveryDartOnce) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const RotationSystem rs = random_rotation_system(5 + seed % 30, 6, seed);
    const FaceTrace t = trace_faces(rs);
    std::vector<int> seen(rs.dart_count(), 0);
    std::size_t total = 0;
    for (const auto& f : t.faces) {
      total += f.size();
      for (std::size_t i = 0; i < f.size(); ++i) {
        ++seen[f[i]];
        EXPECT_EQ(rs.phi(f[i]), f[(i + 1) % f.size()]);
      }
    }
    EXPECT_EQ(total, 2 * rs.edge_count());
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
}

TEST(Genus, TorusGridThree) {
  const EmbeddedGraph t = torus_grid(3);
  EXPECT_EQ(t.rotation.vertex_count(), 9u);
  EXPECT_EQ(t.rotation.edge_count(), 18u);
  EXPECT_EQ(trace_faces(t.rotation).face_count(), 9u);
  EXPECT_EQ(euler_genus(t.rotation), 1u);
}

TEST(Genus, DisconnectedRejected) {
  const RotationSystem rs = RotationSystem::from_rotations(4, {{0, 1}, {2, 3}}, {{0}, {1}, {2}, {3}});
  EXPECT_THROW(euler_genus(rs), PreconditionError);
}

// Relabels edges, flips orientations and rotates each cyclic order.
RotationSystem relabel(const RotationSystem& rs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t m = rs.edge_count();
  std::vector<std::uint32_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<char> flip(m);
  for (auto& f : flip) f = static_cast<char>(rng() & 1);
  std::vector<Edge> edges(m);
  for (std::size_t e = 0; e < m; ++e) {
    Edge x = rs.edges()[e];
    if (flip[e]) std::swap(x.u, x.v);
    edges[perm[e]] = x;
  }
  auto map = [&](Dart d) { return 2 * perm[d >> 1] + ((d & 1u) ^ static_cast<unsigned>(flip[d >> 1])); };
  std::vector<std::vector<Dart>> rot = rs.rotations();
  for (auto& r : rot) {
    for (auto& d : r) d = map(d);
    if (!r.empty()) std::rotate(r.begin(), r.begin() + static_cast<long>(rng() % r.size()), r.end());
  }
  return RotationSystem::from_rotations(rs.vertex_count(), edges, rot);
}

TEST(Genus, InvariantUnderRelabeling) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const RotationSystem rs = random_rotation_system(6 + seed % 20, 6, 500 + seed);
    const RotationSystem other = relabel(rs, seed);
    EXPECT_EQ(euler_genus(rs), euler_genus(other));
    EXPECT_EQ(trace_faces(rs).face_count(), trace_faces(other).face_count());
  }
}

TEST(MinGenus, SmallCompleteGraphs) {
  EXPECT_EQ(min_genus_exhaustive(complete_graph(4)), 0u);
  EXPECT_EQ(min_genus_exhaustive(complete_graph(5)), 1u);
  EXPECT_EQ(min_genus_exhaustive(complete_bipartite(3, 3)), 1u);
  EXPECT_EQ(min_genus_exhaustive(cycle_graph(7)), 0u);
}

TEST(MinGenus, BudgetExceeded) {
  EXPECT_THROW(min_genus_exhaustive(complete_graph(7), 1000), PreconditionError);
}

TEST(MinGenus, LowerBoundsEveryRotation) {
  std::mt19937_64 rng(17);
  for (const Graph& g : {complete_graph(4), complete_bipartite(2, 3), complete_graph(5)}) {
    const std::uint32_t best = min_genus_exhaustive(g);
    for (int trial = 0; trial < 30; ++trial) {
      RotationSystem base = RotationSystem::from_graph(g);
      auto rot = base.rotations();
      for (auto& r : rot) std::shuffle(r.begin(), r.end(), rng);
      const RotationSystem rs =
          RotationSystem::from_rotations(g.vertex_count(), std::vector<Edge>(g.edges().begin(), g.edges().end()), rot);
      EXPECT_LE(best, euler_genus(rs));
    }
  }
}

bool crosses(std::pair<std::uint32_t, std::uint32_t> a, std::pair<std::uint32_t, std::uint32_t> b) {
  auto [a1, a2] = a;
  auto [b1, b2] = b;
  if (a1 > a2) std::swap(a1, a2);
  if (b1 > b2) std::swap(b1, b2);
  if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) return false;
  const bool b1_in = a1 < b1 && b1 < a2;
  const bool b2_in = a1 < b2 && b2 < a2;
  return b1_in != b2_in;
}

TEST(Zigzag, SmallPolygons) {
  EXPECT_TRUE(zigzag_triangulate_polygon(3).empty());
  EXPECT_EQ(zigzag_triangulate_polygon(4).size(), 1u);
  EXPECT_THROW(zigzag_triangulate_polygon(2), PreconditionError);
}

TEST(Zigzag, ValidTriangulationWithTwoChordsPerCorner) {
  for (std::size_t n = 3; n <= 40; ++n) {
    const auto chords = zigzag_triangulate_polygon(n);
    ASSERT_EQ(chords.size(), n - 3);
    std::vector<int> uses(n, 0);
    std::set<std::pair<std::uint32_t, std::uint32_t>> distinct;
    for (auto [a, b] : chords) {
      ASSERT_LT(a, n);
      ASSERT_LT(b, n);
      const auto gap = (b + n - a) % n;
      EXPECT_TRUE(gap >= 2 && gap <= n - 2) << "chord is a polygon side";
      ++uses[a];
      ++uses[b];
      distinct.insert({std::min(a, b), std::max(a, b)});
    }
    EXPECT_EQ(distinct.size(), chords.size());
    for (int u : uses) EXPECT_LE(u, 2);
    for (std::size_t i = 0; i < chords.size(); ++i)
      for (std::size_t j = i + 1; j < chords.size(); ++j) EXPECT_FALSE(crosses(chords[i], chords[j]));
  }
}

TEST(Fill, SquareOnSphere) {
  const RotationSystem out = triangulate_fill(square_map(), 2);
  EXPECT_EQ(out.vertex_count(), 4u);
  EXPECT_EQ(out.edge_count(), 6u);
  EXPECT_EQ(trace_faces(out).face_count(), 4u);
  EXPECT_EQ(euler_genus(out), 0u);
  EXPECT_LE(out.max_degree(), 4u);
}

TEST(Fill, TriangulationsUnchanged) {
  EXPECT_EQ(triangulate_fill(tetrahedron_map(), 3), tetrahedron_map());
  EXPECT_EQ(triangulate_fill(triangle_map(), 2), triangle_map());
}

TEST(Fill, ShortFacesRejected) {
  const RotationSystem edge = RotationSystem::from_rotations(2, {{0, 1}}, {{0}, {1}});
  EXPECT_THROW(triangulate_fill(edge, 1), PreconditionError);
  EXPECT_THROW(triangulate_fill(square_map(), 1), PreconditionError);
}

TEST(Fill, TorusGridProperties) {
  for (std::size_t n = 3; n <= 8; ++n) {
    const RotationSystem in = torus_grid(n).rotation;
    const RotationSystem out = triangulate_fill(in, 4);
    EXPECT_EQ(euler_genus(out), 1u);
    for (std::size_t len : trace_faces(out).lengths()) EXPECT_EQ(len, 3u);
    for (Vertex v = 0; v < in.vertex_count(); ++v) EXPECT_LE(out.degree(v), 3 * in.degree(v));
  }
}

TEST(Fill, RandomMapsKeepEdgesAndGenus) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const RotationSystem in = random_rotation_system(3 + seed % 38, 6, 900 + seed);
    const RotationSystem out = triangulate_fill(in, 6);
    ASSERT_EQ(out.vertex_count(), in.vertex_count());
    std::multiset<std::pair<Vertex, Vertex>> before, after;
    for (const Edge& e : in.edges()) before.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    for (const Edge& e : out.edges()) after.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
    for (const auto& e : before) {
      ASSERT_TRUE(after.count(e) >= before.count(e));
    }
    EXPECT_EQ(euler_genus(in), euler_genus(out));
    const auto lengths = trace_faces(out).lengths();
    EXPECT_TRUE(std::all_of(lengths.begin(), lengths.end(), [](std::size_t l) { return l == 3; }));
    for (Vertex v = 0; v < in.vertex_count(); ++v) EXPECT_LE(out.degree(v), 3 * in.degree(v));
  }
}

TEST(Stretch, Identity) {
  const Graph g = torus_grid(5).graph;
  std::vector<Vertex> id(g.vertex_count());
  std::iota(id.begin(), id.end(), 0u);
  const StretchReport s = metric_stretch(g, g, id, 8, 1);
  EXPECT_EQ(s.contraction, 1.0);
  EXPECT_EQ(s.expansion, 1.0);
  EXPECT_EQ(s.density_radius, 0u);
  EXPECT_TRUE(s.exact);
}

TEST(Stretch, SquareIntoItsTriangulation) {
  const RotationSystem in = square_map();
  const Graph t = triangulate_fill(in, 2).underlying_graph();
  const Vertex id[] = {0, 1, 2, 3};
  const StretchReport s = metric_stretch(in.underlying_graph(), t, id, 8, 1);
  EXPECT_EQ(s.contraction, 2.0);
  EXPECT_EQ(s.expansion, 1.0);
}

TEST(Stretch, PathWithChord) {
  const Graph p3 = Graph::build(3, {{0, 1}, {1, 2}});
  const Graph chord = Graph::build(3, {{0, 1}, {1, 2}, {0, 2}});
  const Vertex id[] = {0, 1, 2};
  const StretchReport s = metric_stretch(p3, chord, id, 8, 1);
  EXPECT_EQ(s.contraction, 2.0);
  EXPECT_EQ(s.density_radius, 0u);
}

TEST(Stretch, RejectsNonEdgePreserving) {
  const Graph p3 = Graph::build(3, {{0, 1}, {1, 2}});
  const Graph other = Graph::build(3, {{0, 2}, {1, 2}});
  const Vertex id[] = {0, 1, 2};
  EXPECT_THROW(metric_stretch(p3, other, id, 8, 1), PreconditionError);
  const Vertex dup[] = {0, 0, 2};
  EXPECT_THROW(metric_stretch(p3, p3, dup, 8, 1), PreconditionError);
}

TEST(RotationText, RoundTrip) {
  const RotationSystem rs = random_rotation_system(12, 5, 4);
  const std::string text = write_rotation_system(rs);
  const RotationSystem back = parse_rotation_system(text);
  EXPECT_EQ(write_rotation_system(back), text);
  EXPECT_EQ(euler_genus(back), euler_genus(rs));
  EXPECT_THROW(parse_rotation_system("2 1\n0\n0\n"), PreconditionError);
}

}  // namespace
}  // namespace bslab
