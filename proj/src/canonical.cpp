#include <algorithm>
#include <numeric>

#include "bslab/error.hpp"
#include "bslab/local_limit.hpp"

namespace bslab {

std::string RootedBallCode::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 15]);
  }
  return out;
}

namespace {

using Colouring = std::vector<std::uint32_t>;
using Perm = std::vector<std::uint32_t>;

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Graph& g) : g_(g), n_(g.vertex_count()) {}

  std::vector<std::uint8_t> run(Colouring initial) {
    refine(initial);
    Perm prefix;
    search(initial, prefix);
    return best_;
  }

 private:
  // Splits colour classes by the multiset of neighbour colours until stable.
  // New colours are ranks of (old colour, signature), so the order of
  // existing cells is preserved.
  void refine(Colouring& colour) const {
    std::size_t cells = count_cells(colour);
    std::vector<std::vector<std::uint32_t>> sig(n_);
    std::vector<std::uint32_t> order(n_);
    while (true) {
      for (Vertex v = 0; v < n_; ++v) {
        auto& s = sig[v];
        s.clear();
        s.push_back(colour[v]);
        for (const Incidence& inc : g_.neighbors(v)) s.push_back(colour[inc.neighbor]);
        std::sort(s.begin() + 1, s.end());
      }
      std::iota(order.begin(), order.end(), 0u);
      std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return sig[a] < sig[b]; });
      std::uint32_t rank = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++rank;
        colour[order[i]] = rank;
      }
      const std::size_t next = n_ == 0 ? 0 : rank + 1;
      if (next == cells) return;
      cells = next;
    }
  }

  static std::size_t count_cells(const Colouring& colour) {
    return colour.empty() ? 0 : *std::max_element(colour.begin(), colour.end()) + 1;
  }

  std::vector<std::uint8_t> encode(const Colouring& position) const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(g_.edge_count());
    for (const Edge& e : g_.edges()) {
      const auto a = position[e.u], b = position[e.v];
      pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::uint8_t> out;
    out.reserve(3 + 2 * pairs.size());
    out.push_back(static_cast<std::uint8_t>(n_));
    out.push_back(static_cast<std::uint8_t>(pairs.size() >> 8));
    out.push_back(static_cast<std::uint8_t>(pairs.size() & 0xff));
    for (auto [a, b] : pairs) {
      out.push_back(static_cast<std::uint8_t>(a));
      out.push_back(static_cast<std::uint8_t>(b));
    }
    return out;
  }

  void leaf(const Colouring& position) {
    auto code = encode(position);
    if (best_.empty() || code < best_) {
      best_ = std::move(code);
      best_inverse_.assign(n_, 0);
      for (Vertex v = 0; v < n_; ++v) best_inverse_[position[v]] = v;
    } else if (code == best_) {
      Perm gamma(n_);
      bool identity = true;
      for (Vertex v = 0; v < n_; ++v) {
        gamma[v] = best_inverse_[position[v]];
        identity = identity && gamma[v] == v;
      }
      if (!identity) automorphisms_.push_back(std::move(gamma));
    }
  }

  // Orbit representatives under the found automorphisms that fix `prefix`.
  std::vector<std::uint32_t> orbits(const Perm& prefix) const {
    std::vector<std::uint32_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Perm& gamma : automorphisms_) {
      const bool fixes = std::all_of(prefix.begin(), prefix.end(),
                                     [&](std::uint32_t v) { return gamma[v] == v; });
      if (!fixes) continue;
      for (Vertex v = 0; v < n_; ++v) {
        const auto a = find(v), b = find(gamma[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (Vertex v = 0; v < n_; ++v) parent[v] = find(v);
    return parent;
  }

  void search(const Colouring& colour, Perm& prefix) {
    const std::size_t cells = count_cells(colour);
    if (cells == n_) {
      leaf(colour);
      return;
    }
    // First non-singleton cell in colour order.
    std::vector<std::uint32_t> size(cells, 0);
    for (auto c : colour) ++size[c];
    std::uint32_t target = 0;
    while (size[target] < 2) ++target;
    std::vector<Vertex> members;
    for (Vertex v = 0; v < n_; ++v) {
      if (colour[v] == target) members.push_back(v);
    }
    std::vector<Vertex> tried;
    for (Vertex v : members) {
      if (!tried.empty()) {
        const auto orbit = orbits(prefix);
        if (std::any_of(tried.begin(), tried.end(), [&](Vertex t) { return orbit[t] == orbit[v]; })) continue;
      }
      tried.push_back(v);
      Colouring next(n_);
      for (Vertex u = 0; u < n_; ++u) {
        next[u] = 2 * colour[u] + (colour[u] == target && u != v ? 1 : 0);
      }
      compress(next);
      refine(next);
      prefix.push_back(v);
      search(next, prefix);
      prefix.pop_back();
    }
  }

  static void compress(Colouring& colour) {
    Colouring values = colour;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (auto& c : colour) {
      c = static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), c) - values.begin());
    }
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<std::uint8_t> best_;
  Perm best_inverse_;
  std::vector<Perm> automorphisms_;
};

}  // namespace

RootedBallCode canonical_code(const Graph& g, Vertex root, std::size_t cap) {
  detail::require(cap <= 255, "canonical_code: cap must fit in one byte");
  detail::require(g.contains(root), "canonical_code: root out of range");
  detail::require(g.vertex_count() <= cap, "canonical_code: vertex count exceeds the cap");
  detail::require(g.edge_count() < 65536, "canonical_code: too many edges");
  const auto dist = distances_from(g, root);
  std::vector<std::pair<std::uint32_t, std::size_t>> key(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) key[v] = {dist[v], g.degree(v)};
  auto sorted = key;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Colouring colour(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    colour[v] = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), key[v]) - sorted.begin());
  }
  RootedBallCode out;
  out.bytes = CanonicalSearch(g).run(std::move(colour));
  out.vertex_count = g.vertex_count();
  std::uint32_t depth = 0;
  for (auto d : dist) {
    if (d != kUnreachable) depth = std::max(depth, d);
  }
  out.depth = depth;
  return out;
}

RootedBallCode canonical_code(const RootedSubgraph& b, std::size_t cap) {
  RootedBallCode out = canonical_code(b.graph, b.root, cap);
  out.depth = b.depth;
  return out;
}

}  // namespace bslab
