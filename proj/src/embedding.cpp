#include "bslab/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "bslab/error.hpp"

namespace bslab {

// Mutable view used while inserting chords; the public type stays immutable.
class MapBuilder {
 public:
  explicit MapBuilder(const RotationSystem& rs) : rs_(rs) {}

  // Adds an edge whose first dart goes right after `after_u` in the rotation
  // at its vertex and whose second dart goes right after `after_v`.
  std::pair<Dart, Dart> insert_edge(Dart after_u, Dart after_v) {
    const Vertex u = rs_.vertex_of(after_u);
    const Vertex v = rs_.vertex_of(after_v);
    const auto e = static_cast<Dart>(rs_.edges_.size());
    rs_.edges_.push_back({u, v});
    const Dart x = 2 * e;
    const Dart y = 2 * e + 1;
    rs_.sigma_.resize(rs_.sigma_.size() + 2);
    rs_.sigma_[x] = rs_.sigma_[after_u];
    rs_.sigma_[after_u] = x;
    rs_.sigma_[y] = rs_.sigma_[after_v];
    rs_.sigma_[after_v] = y;
    return {x, y};
  }

  RotationSystem release() && { return std::move(rs_); }

 private:
  RotationSystem rs_;
};

RotationSystem RotationSystem::from_rotations(std::size_t vertex_count, std::vector<Edge> edges,
                                              const std::vector<std::vector<Dart>>& rotations) {
  detail::require(rotations.size() == vertex_count,
                  "rotation system: need one rotation per vertex");
  for (const Edge& e : edges) {
    detail::require(e.u < vertex_count && e.v < vertex_count,
                    "rotation system: edge endpoint out of range");
  }
  RotationSystem rs;
  rs.vertex_count_ = vertex_count;
  rs.edges_ = std::move(edges);
  const std::size_t darts = 2 * rs.edges_.size();
  constexpr Dart kUnset = std::numeric_limits<Dart>::max();
  rs.sigma_.assign(darts, kUnset);
  for (Vertex v = 0; v < vertex_count; ++v) {
    const auto& rot = rotations[v];
    for (std::size_t i = 0; i < rot.size(); ++i) {
      const Dart d = rot[i];
      detail::require(d < darts, "rotation system: dart id out of range");
      detail::require(rs.sigma_[d] == kUnset, "rotation system: dart listed twice");
      detail::require(rs.vertex_of(d) == v, "rotation system: dart placed at the wrong vertex");
      rs.sigma_[d] = rot[(i + 1) % rot.size()];
    }
  }
  detail::require(std::find(rs.sigma_.begin(), rs.sigma_.end(), kUnset) == rs.sigma_.end(),
                  "rotation system: some dart is missing from every rotation");
  return rs;
}

RotationSystem RotationSystem::from_graph(const Graph& g) {
  std::vector<std::vector<Dart>> rotations(g.vertex_count());
  std::vector<char> first_loop_dart_used(g.edge_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (const Incidence& inc : g.neighbors(v)) {
      const Edge& e = g.edge(inc.edge);
      Dart d;
      if (e.is_loop()) {
        d = 2 * inc.edge + (first_loop_dart_used[inc.edge] ? 1 : 0);
        first_loop_dart_used[inc.edge] = 1;
      } else {
        d = 2 * inc.edge + (e.u == v ? 0 : 1);
      }
      rotations[v].push_back(d);
    }
  }
  return from_rotations(g.vertex_count(), std::vector<Edge>(g.edges().begin(), g.edges().end()),
                        rotations);
}

std::size_t RotationSystem::degree(Vertex v) const {
  std::size_t deg = 0;
  for (const Edge& e : edges_) deg += (e.u == v) + (e.v == v);
  return deg;
}

std::size_t RotationSystem::max_degree() const {
  std::vector<std::size_t> deg(vertex_count_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::vector<std::vector<Dart>> RotationSystem::rotations() const {
  std::vector<std::vector<Dart>> out(vertex_count_);
  std::vector<char> seen(sigma_.size(), 0);
  for (Dart d = 0; d < sigma_.size(); ++d) {
    if (seen[d]) continue;
    auto& rot = out[vertex_of(d)];
    detail::require(rot.empty(), "rotation system: vertex rotation is not a single cycle");
    for (Dart x = d; !seen[x]; x = sigma_[x]) {
      seen[x] = 1;
      rot.push_back(x);
    }
  }
  return out;
}

Graph RotationSystem::underlying_graph() const { return Graph::build(vertex_count_, edges_); }

std::vector<std::size_t> FaceTrace::lengths() const {
  std::vector<std::size_t> out;
  out.reserve(faces.size());
  for (const auto& f : faces) out.push_back(f.size());
  return out;
}

FaceTrace trace_faces(const RotationSystem& rs) {
  FaceTrace trace;
  std::vector<char> seen(rs.dart_count(), 0);
  for (Dart d = 0; d < rs.dart_count(); ++d) {
    if (seen[d]) continue;
    std::vector<Dart> walk;
    for (Dart x = d; !seen[x]; x = rs.phi(x)) {
      seen[x] = 1;
      walk.push_back(x);
    }
    trace.faces.push_back(std::move(walk));
  }
  return trace;
}

namespace {

std::size_t count_faces(std::span<const Dart> sigma, std::vector<char>& seen) {
  std::fill(seen.begin(), seen.end(), 0);
  std::size_t faces = 0;
  for (Dart d = 0; d < sigma.size(); ++d) {
    if (seen[d]) continue;
    ++faces;
    for (Dart x = d; !seen[x]; x = sigma[opposite(x)]) seen[x] = 1;
  }
  return faces;
}

std::uint32_t genus_from_counts(std::size_t v, std::size_t e, std::size_t f) {
  // A lone vertex still bounds one face on the sphere.
  if (e == 0) f = 1;
  const auto defect = 2 - static_cast<std::int64_t>(v) + static_cast<std::int64_t>(e) -
                      static_cast<std::int64_t>(f);
  if (defect < 0 || defect % 2 != 0) {
    throw PreconditionError("euler genus: Euler defect " + std::to_string(defect) +
                            " is not a non-negative even number (corrupted map?)");
  }
  return static_cast<std::uint32_t>(defect / 2);
}

}  // namespace

std::uint32_t euler_genus(const RotationSystem& rs) {
  detail::require(rs.vertex_count() > 0, "euler genus: empty map");
  detail::require(is_connected(rs.underlying_graph()),
                  "euler genus: underlying graph is disconnected");
  return genus_from_counts(rs.vertex_count(), rs.edge_count(), trace_faces(rs).face_count());
}

std::uint64_t rotation_system_count(const Graph& g) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (std::uint64_t k = 2; k < g.degree(v); ++k) {
      if (total > kMax / k) return kMax;
      total *= k;
    }
  }
  return total;
}

std::uint32_t min_genus_exhaustive(const Graph& g, std::uint64_t budget) {
  detail::require(g.vertex_count() > 0, "min genus: empty graph");
  detail::require(is_connected(g), "min genus: graph must be connected");
  const std::uint64_t configurations = rotation_system_count(g);
  if (configurations > budget) {
    throw PreconditionError("min genus: " + std::to_string(configurations) +
                            " rotation systems exceed the budget of " + std::to_string(budget));
  }
  const RotationSystem base = RotationSystem::from_graph(g);
  std::vector<std::vector<Dart>> rot = base.rotations();
  std::vector<Dart> sigma(base.dart_count());
  std::vector<char> seen(base.dart_count());
  auto load = [&](Vertex v) {
    const auto& r = rot[v];
    for (std::size_t i = 0; i < r.size(); ++i) sigma[r[i]] = r[(i + 1) % r.size()];
  };
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    // Fixing the first dart enumerates each cyclic order exactly once.
    std::sort(rot[v].begin() + (rot[v].empty() ? 0 : 1), rot[v].end());
    load(v);
  }

  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  while (true) {
    const std::size_t faces = count_faces(sigma, seen);
    best = std::min(best, genus_from_counts(g.vertex_count(), g.edge_count(), faces));
    if (best == 0) break;
    // Odometer: advance the first vertex whose tail permutation is not last.
    Vertex v = 0;
    for (; v < g.vertex_count(); ++v) {
      auto& r = rot[v];
      const bool advanced = r.size() > 2 && std::next_permutation(r.begin() + 1, r.end());
      load(v);
      if (advanced) break;
    }
    if (v == g.vertex_count()) break;
  }
  return best;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> zigzag_triangulate_polygon(std::size_t n) {
  detail::require(n >= 3, "zigzag triangulation needs a polygon with at least 3 corners");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> chords;
  chords.reserve(n - 3);
  // The remaining polygon is lo..hi, closed by the side or chord (hi, lo).
  auto lo = std::uint32_t{0};
  auto hi = static_cast<std::uint32_t>(n - 1);
  bool cut_low = true;
  while (hi - lo + 1 > 3) {
    if (cut_low) {
      chords.emplace_back(lo + 1, hi);
      ++lo;
    } else {
      chords.emplace_back(lo, hi - 1);
      --hi;
    }
    cut_low = !cut_low;
  }
  return chords;
}

RotationSystem triangulate_fill(const RotationSystem& rs, std::size_t max_valence) {
  detail::require(rs.max_degree() <= max_valence,
                  "triangulate_fill: input valence exceeds the declared bound");
  const FaceTrace trace = trace_faces(rs);
  for (const auto& face : trace.faces) {
    if (face.size() < 3) {
      throw PreconditionError("triangulate_fill: face of length " + std::to_string(face.size()) +
                              " cannot be triangulated without new vertices");
    }
  }

  MapBuilder builder(rs);
  struct Corner {
    Dart dart;
    std::uint32_t label;  // corner index in the original face walk
  };
  for (const auto& face : trace.faces) {
    if (face.size() == 3) continue;
    // Sub-polygons produced so far; each chord lives in exactly one of them.
    std::vector<std::vector<Corner>> pieces(1);
    for (std::uint32_t k = 0; k < face.size(); ++k) pieces[0].push_back({face[k], k});

    for (const auto& [a, b] : zigzag_triangulate_polygon(face.size())) {
      std::size_t which = pieces.size();
      std::size_t pa = 0, pb = 0;
      for (std::size_t p = 0; p < pieces.size() && which == pieces.size(); ++p) {
        const auto& piece = pieces[p];
        auto ia = std::find_if(piece.begin(), piece.end(), [&](const Corner& c) { return c.label == a; });
        auto ib = std::find_if(piece.begin(), piece.end(), [&](const Corner& c) { return c.label == b; });
        if (ia != piece.end() && ib != piece.end()) {
          which = p;
          pa = static_cast<std::size_t>(ia - piece.begin());
          pb = static_cast<std::size_t>(ib - piece.begin());
        }
      }
      if (which == pieces.size()) throw std::logic_error("zigzag chord crosses a previous chord");
      if (pa > pb) std::swap(pa, pb);
      std::vector<Corner> piece = std::move(pieces[which]);
      const std::size_t m = piece.size();
      // The corner before position p in this sub-polygon sits between
      // alpha(piece[p-1]) and piece[p] in the rotation.
      const Dart before_a = opposite(piece[(pa + m - 1) % m].dart);
      const Dart before_b = opposite(piece[pb - 1].dart);
      const auto [x, y] = builder.insert_edge(before_a, before_b);

      std::vector<Corner> first(piece.begin(), piece.begin() + static_cast<std::ptrdiff_t>(pa));
      first.push_back({x, piece[pa].label});
      first.insert(first.end(), piece.begin() + static_cast<std::ptrdiff_t>(pb), piece.end());
      std::vector<Corner> second(piece.begin() + static_cast<std::ptrdiff_t>(pa),
                                 piece.begin() + static_cast<std::ptrdiff_t>(pb));
      second.push_back({y, piece[pb].label});
      pieces[which] = std::move(first);
      pieces.push_back(std::move(second));
    }
  }
  return std::move(builder).release();
}

StretchReport metric_stretch(const Graph& sub, const Graph& super,
                             std::span<const Vertex> inclusion, std::size_t source_budget,
                             std::uint64_t seed) {
  detail::require(inclusion.size() == sub.vertex_count(),
                  "metric_stretch: inclusion must map every sub vertex");
  std::vector<char> hit(super.vertex_count(), 0);
  for (Vertex v : inclusion) {
    detail::require(super.contains(v), "metric_stretch: inclusion target out of range");
    detail::require(!hit[v], "metric_stretch: inclusion is not injective");
    hit[v] = 1;
  }
  // Edge preservation: every sub edge must map onto some super edge.
  for (const Edge& e : sub.edges()) {
    const Vertex a = inclusion[e.u];
    const Vertex b = inclusion[e.v];
    const auto nbrs = super.neighbors(a);
    const bool present = std::any_of(nbrs.begin(), nbrs.end(),
                                     [&](const Incidence& inc) { return inc.neighbor == b; });
    detail::require(present, "metric_stretch: inclusion is not edge-preserving");
  }

  StretchReport report;
  std::vector<Vertex> sources(sub.vertex_count());
  std::iota(sources.begin(), sources.end(), Vertex{0});
  if (sub.vertex_count() > kExactStretchLimit) {
    std::mt19937_64 rng(seed);
    std::shuffle(sources.begin(), sources.end(), rng);
    sources.resize(std::min(sources.size(), std::max<std::size_t>(source_budget, 1)));
    report.exact = false;
  }
  for (Vertex s : sources) {
    const auto d_sub = distances_from(sub, s);
    const auto d_super = distances_from(super, inclusion[s]);
    for (Vertex t = 0; t < sub.vertex_count(); ++t) {
      if (t == s || d_sub[t] == kUnreachable) continue;
      const double a = d_sub[t];
      const double b = d_super[inclusion[t]];
      report.contraction = std::max(report.contraction, a / b);
      report.expansion = std::max(report.expansion, b / a);
      ++report.pairs_checked;
    }
  }
  const auto to_image = distances_from_set(super, inclusion);
  for (std::uint32_t d : to_image) {
    if (d != kUnreachable) report.density_radius = std::max(report.density_radius, d);
  }
  return report;
}

std::string write_rotation_system(const RotationSystem& rs) {
  std::string out = std::to_string(rs.vertex_count()) + ' ' + std::to_string(rs.edge_count()) + '\n';
  for (const auto& rot : rs.rotations()) {
    for (std::size_t i = 0; i < rot.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(rot[i]);
    }
    out += '\n';
  }
  return out;
}

RotationSystem parse_rotation_system(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  auto parse_numbers = [](std::string_view line) {
    std::vector<std::uint64_t> values;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
      if (pos == line.size()) break;
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
      detail::require(ec == std::errc() && ptr != line.data() + pos,
                      "rotation system text: expected an integer");
      pos = static_cast<std::size_t>(ptr - line.data());
      values.push_back(value);
    }
    return values;
  };
  detail::require(!lines.empty(), "rotation system text: missing 'V E' header");
  const auto header = parse_numbers(lines[0]);
  detail::require(header.size() == 2, "rotation system text: header must be 'V E'");
  const std::size_t v_count = header[0];
  const std::size_t e_count = header[1];
  detail::require(lines.size() >= v_count + 1, "rotation system text: too few vertex lines");
  for (std::size_t i = v_count + 1; i < lines.size(); ++i) {
    detail::require(parse_numbers(lines[i]).empty(), "rotation system text: trailing data");
  }

  std::vector<std::vector<Dart>> rotations(v_count);
  constexpr Vertex kUnset = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> owner(2 * e_count, kUnset);
  for (std::size_t v = 0; v < v_count; ++v) {
    for (std::uint64_t d : parse_numbers(lines[v + 1])) {
      detail::require(d < owner.size(), "rotation system text: dart id out of range");
      detail::require(owner[d] == kUnset, "rotation system text: dart listed twice");
      owner[d] = static_cast<Vertex>(v);
      rotations[v].push_back(static_cast<Dart>(d));
    }
  }
  std::vector<Edge> edges(e_count);
  for (std::size_t e = 0; e < e_count; ++e) {
    detail::require(owner[2 * e] != kUnset && owner[2 * e + 1] != kUnset,
                    "rotation system text: dart missing");
    edges[e] = {owner[2 * e], owner[2 * e + 1]};
  }
  return RotationSystem::from_rotations(v_count, std::move(edges), rotations);
}

}  // namespace bslab
