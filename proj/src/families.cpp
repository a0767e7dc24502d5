#include "bslab/families.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "bslab/error.hpp"

namespace bslab {
namespace {

// Grid with optional wraparound. Vertex (i, j) is i * n + j; each vertex owns
// its east and south edges, and rotations run east, north, west, south.
EmbeddedGraph grid(std::size_t n, bool wrap) {
  const std::size_t vcount = n * n;
  constexpr Dart kNone = std::numeric_limits<Dart>::max();
  std::vector<Edge> edges;
  // slots[v] = {east, north, west, south}
  std::vector<std::array<Dart, 4>> slots(vcount, {kNone, kNone, kNone, kNone});
  auto id = [n](std::size_t i, std::size_t j) { return static_cast<Vertex>(i * n + j); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Vertex v = id(i, j);
      if (wrap || j + 1 < n) {
        const Vertex w = id(i, (j + 1) % n);
        const auto e = static_cast<Dart>(edges.size());
        edges.push_back({v, w});
        slots[v][0] = 2 * e;
        slots[w][2] = 2 * e + 1;
      }
      if (wrap || i + 1 < n) {
        const Vertex w = id((i + 1) % n, j);
        const auto e = static_cast<Dart>(edges.size());
        edges.push_back({v, w});
        slots[v][3] = 2 * e;
        slots[w][1] = 2 * e + 1;
      }
    }
  }
  std::vector<std::vector<Dart>> rotations(vcount);
  for (std::size_t v = 0; v < vcount; ++v) {
    for (Dart d : slots[v]) {
      if (d != kNone) rotations[v].push_back(d);
    }
  }
  EmbeddedGraph out;
  out.graph = Graph::build(vcount, edges);
  out.rotation = RotationSystem::from_rotations(vcount, std::move(edges), rotations);
  return out;
}

}  // namespace

EmbeddedGraph torus_grid(std::size_t n) {
  detail::require(n >= 3, "torus_grid: n must be >= 3");
  return grid(n, true);
}

EmbeddedGraph planar_grid(std::size_t n) {
  detail::require(n >= 2, "planar_grid: n must be >= 2");
  return grid(n, false);
}

Graph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  detail::require(d >= 3, "random_regular: degree must be >= 3");
  detail::require((n * d) % 2 == 0, "random_regular: n * d must be even");
  detail::require(n > d, "random_regular: need n > d for a simple graph");
  std::mt19937_64 rng(seed);
  std::vector<Vertex> stubs(n * d);
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> seen;
  for (std::size_t attempt = 0; attempt < kRandomRegularRestarts; ++attempt) {
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<Vertex>(i / d);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    edges.clear();
    seen.clear();
    bool ok = true;
    for (std::size_t i = 0; ok && i < stubs.size(); i += 2) {
      const Vertex a = std::min(stubs[i], stubs[i + 1]);
      const Vertex b = std::max(stubs[i], stubs[i + 1]);
      ok = a != b && seen.emplace(a, b).second;
      edges.push_back({a, b});
    }
    if (ok) return Graph::build(n, std::move(edges));
  }
  throw PreconditionError("random_regular: pairing model rejected " +
                          std::to_string(kRandomRegularRestarts) + " times");
}

Graph binary_tree(std::size_t depth) {
  detail::require(depth < 30, "binary_tree: depth too large");
  const std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
  std::vector<Edge> edges;
  for (std::size_t child = 1; child < n; ++child) {
    edges.push_back({static_cast<Vertex>((child - 1) / 2), static_cast<Vertex>(child)});
  }
  return Graph::build(n, std::move(edges));
}

Graph path_graph(std::size_t n) {
  detail::require(n >= 1, "path_graph: n must be >= 1");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
  }
  return Graph::build(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
  detail::require(n >= 3, "cycle_graph: n must be >= 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n)});
  }
  return Graph::build(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
  detail::require(n >= 1, "complete_graph: n must be >= 1");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return Graph::build(n, std::move(edges));
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
  detail::require(a >= 1 && b >= 1, "complete_bipartite: both sides must be non-empty");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(a + j)});
    }
  }
  return Graph::build(a + b, std::move(edges));
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, static_cast<Vertex>(i)});
  return Graph::build(leaves + 1, std::move(edges));
}

RotationSystem random_rotation_system(std::size_t vertices, std::size_t max_valence,
                                      std::uint64_t seed) {
  detail::require(vertices >= 3, "random_rotation_system: need at least 3 vertices");
  detail::require(max_valence >= 3, "random_rotation_system: valence cap must be >= 3");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> deg(vertices, 0);
  std::vector<Edge> edges;
  std::set<std::pair<Vertex, Vertex>> present;
  auto add = [&](Vertex a, Vertex b) {
    edges.push_back({a, b});
    ++deg[a];
    ++deg[b];
    present.emplace(std::min(a, b), std::max(a, b));
  };
  // Random recursive tree; a new vertex attaches to an earlier one with room.
  for (Vertex v = 1; v < vertices; ++v) {
    std::vector<Vertex> open;
    for (Vertex u = 0; u < v; ++u) {
      if (deg[u] < max_valence) open.push_back(u);
    }
    add(open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)], v);
  }
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(vertices - 1));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const std::size_t attempts = std::uniform_int_distribution<std::size_t>(0, 2 * vertices)(rng);
  for (std::size_t i = 0; i < attempts; ++i) {
    const Vertex a = pick(rng);
    const Vertex b = pick(rng);
    if (a == b || deg[a] >= max_valence || deg[b] >= max_valence) continue;
    const bool duplicate = present.count({std::min(a, b), std::max(a, b)}) > 0;
    // Occasional parallel edges exercise digon-free multigraph faces.
    if (duplicate && coin(rng) > 0.15) continue;
    add(a, b);
  }

  std::vector<std::vector<Dart>> rotations(vertices);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    rotations[edges[e].u].push_back(static_cast<Dart>(2 * e));
    rotations[edges[e].v].push_back(static_cast<Dart>(2 * e + 1));
  }
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (auto& rot : rotations) std::shuffle(rot.begin(), rot.end(), rng);
    RotationSystem rs = RotationSystem::from_rotations(vertices, edges, rotations);
    const auto lengths = trace_faces(rs).lengths();
    if (std::all_of(lengths.begin(), lengths.end(), [](std::size_t l) { return l >= 3; })) {
      return rs;
    }
  }
  // Parallel pairs that always bound a digon: drop duplicates and retry.
  std::vector<Edge> simple;
  present.clear();
  for (const Edge& e : edges) {
    if (present.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) simple.push_back(e);
  }
  std::vector<std::vector<Dart>> simple_rot(vertices);
  for (std::size_t e = 0; e < simple.size(); ++e) {
    simple_rot[simple[e].u].push_back(static_cast<Dart>(2 * e));
    simple_rot[simple[e].v].push_back(static_cast<Dart>(2 * e + 1));
  }
  for (auto& rot : simple_rot) std::shuffle(rot.begin(), rot.end(), rng);
  return RotationSystem::from_rotations(vertices, std::move(simple), simple_rot);
}

std::string_view family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kPlanarGrid: return "planar_grid";
    case FamilyKind::kTorusGrid: return "torus_grid";
    case FamilyKind::kPath: return "path";
    case FamilyKind::kCycle: return "cycle";
    case FamilyKind::kComplete: return "complete";
    case FamilyKind::kBinaryTree: return "binary_tree";
    case FamilyKind::kRandomRegular: return "random_regular";
  }
  return "unknown";
}

std::optional<FamilyKind> parse_family_kind(std::string_view name) {
  for (FamilyKind k : {FamilyKind::kPlanarGrid, FamilyKind::kTorusGrid, FamilyKind::kPath,
                       FamilyKind::kCycle, FamilyKind::kComplete, FamilyKind::kBinaryTree,
                       FamilyKind::kRandomRegular}) {
    if (family_name(k) == name) return k;
  }
  return std::nullopt;
}

Graph generate(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::kPlanarGrid: return planar_grid(spec.size).graph;
    case FamilyKind::kTorusGrid: return torus_grid(spec.size).graph;
    case FamilyKind::kPath: return path_graph(spec.size);
    case FamilyKind::kCycle: return cycle_graph(spec.size);
    case FamilyKind::kComplete: return complete_graph(spec.size);
    case FamilyKind::kBinaryTree: return binary_tree(spec.size);
    case FamilyKind::kRandomRegular: return random_regular(spec.size, spec.degree, spec.seed);
  }
  throw PreconditionError("unknown family kind");
}

std::size_t expected_vertex_count(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::kPlanarGrid:
    case FamilyKind::kTorusGrid: return spec.size * spec.size;
    case FamilyKind::kBinaryTree: return (std::size_t{1} << (spec.size + 1)) - 1;
    default: return spec.size;
  }
}

std::size_t valence_bound(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::kPlanarGrid:
    case FamilyKind::kTorusGrid: return 4;
    case FamilyKind::kPath:
    case FamilyKind::kCycle: return 2;
    case FamilyKind::kComplete: return spec.size == 0 ? 0 : spec.size - 1;
    case FamilyKind::kBinaryTree: return 3;
    case FamilyKind::kRandomRegular: return spec.degree;
  }
  return 0;
}

std::string describe(const FamilySpec& spec) {
  std::string out(family_name(spec.kind));
  out += '(' + std::to_string(spec.size);
  if (spec.kind == FamilyKind::kRandomRegular) {
    out += ',' + std::to_string(spec.degree) + ",seed=" + std::to_string(spec.seed);
  }
  return out + ')';
}

}  // namespace bslab
