#include "bslab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <queue>
#include <random>

#include "bslab/error.hpp"

namespace bslab {

Graph Graph::build(std::size_t vertex_count, std::vector<Edge> edges) {
  detail::require(vertex_count < kUnreachable, "vertex count too large");
  Graph g;
  g.offsets_.assign(vertex_count + 1, 0);
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw PreconditionError("edge endpoint out of range: (" + std::to_string(e.u) +
                              ", " + std::to_string(e.v) + ") with n = " +
                              std::to_string(vertex_count));
    }
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
    g.has_loops_ = g.has_loops_ || e.is_loop();
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.incidences_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    g.incidences_[cursor[e.u]++] = {e.v, id};
    g.incidences_[cursor[e.v]++] = {e.u, id};
  }
  for (Vertex v = 0; v < vertex_count; ++v) {
    g.max_degree_ = std::max(g.max_degree_, g.degree(v));
  }

  std::vector<std::pair<Vertex, Vertex>> keys;
  keys.reserve(edges.size());
  for (const Edge& e : edges) keys.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(keys.begin(), keys.end());
  g.has_parallel_ = std::adjacent_find(keys.begin(), keys.end()) != keys.end();

  g.edges_ = std::move(edges);
  return g;
}

std::vector<std::uint32_t> distances_from(const Graph& g, Vertex source) {
  detail::require(g.contains(source), "source vertex out of range");
  const Vertex sources[] = {source};
  return distances_from_set(g, sources);
}

std::vector<std::uint32_t> distances_from_set(const Graph& g,
                                              std::span<const Vertex> sources) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(g.vertex_count());
  for (Vertex s : sources) {
    detail::require(g.contains(s), "source vertex out of range");
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (const Incidence& inc : g.neighbors(v)) {
      if (dist[inc.neighbor] == kUnreachable) {
        dist[inc.neighbor] = dist[v] + 1;
        queue.push_back(inc.neighbor);
      }
    }
  }
  return dist;
}

RootedSubgraph ball(const Graph& g, Vertex root, std::uint32_t radius) {
  detail::require(g.contains(root), "ball root out of range");
  // Truncated BFS; the queue order becomes the local numbering.
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  std::vector<Vertex> order{root};
  dist[root] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const Vertex v = order[head];
    if (dist[v] == radius) continue;
    for (const Incidence& inc : g.neighbors(v)) {
      if (dist[inc.neighbor] == kUnreachable) {
        dist[inc.neighbor] = dist[v] + 1;
        order.push_back(inc.neighbor);
      }
    }
  }
  RootedSubgraph out;
  out.graph = induced_subgraph(g, order);
  out.root = 0;
  out.depth = radius;
  out.original_ids = std::move(order);
  return out;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  std::vector<std::uint32_t> local(g.vertex_count(), kUnreachable);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    detail::require(g.contains(keep[i]), "induced_subgraph: vertex out of range");
    detail::require(local[keep[i]] == kUnreachable, "induced_subgraph: duplicate vertex");
    local[keep[i]] = static_cast<std::uint32_t>(i);
  }
  // Walk edges incident to kept vertices in local order so the output edge
  // order depends only on `keep`, not on the parent's edge numbering.
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const Vertex v = keep[i];
    bool loop_seen = false;
    for (const Incidence& inc : g.neighbors(v)) {
      const std::uint32_t j = local[inc.neighbor];
      if (j == kUnreachable || j < i) continue;
      if (j == i) {
        // Loops are listed twice at their endpoint.
        loop_seen = !loop_seen;
        if (!loop_seen) continue;
      }
      edges.push_back({static_cast<Vertex>(i), j});
    }
  }
  return Graph::build(keep.size(), std::move(edges));
}

Graph without_edge(const Graph& g, EdgeId skip) {
  detail::require(skip < g.edge_count(), "without_edge: edge id out of range");
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() - 1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (e != skip) edges.push_back(g.edge(e));
  }
  return Graph::build(g.vertex_count(), std::move(edges));
}

std::vector<Vertex> maximal_net(const Graph& g, std::uint32_t r,
                                std::span<const Vertex> order) {
  detail::require(r >= 1, "maximal_net: separation must be >= 1");
  detail::require(order.size() == g.vertex_count(),
                  "maximal_net: order must list every vertex once");
  // blocked[v]: some net point lies at distance < r from v.
  std::vector<char> blocked(g.vertex_count(), 0);
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  std::vector<Vertex> touched, queue;
  std::vector<Vertex> net;
  for (Vertex v : order) {
    detail::require(g.contains(v), "maximal_net: order contains invalid vertex");
    if (blocked[v]) continue;
    net.push_back(v);
    queue.assign(1, v);
    dist[v] = 0;
    touched.assign(1, v);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      blocked[x] = 1;
      if (dist[x] + 1 >= r) continue;
      for (const Incidence& inc : g.neighbors(x)) {
        if (dist[inc.neighbor] == kUnreachable) {
          dist[inc.neighbor] = dist[x] + 1;
          queue.push_back(inc.neighbor);
          touched.push_back(inc.neighbor);
        }
      }
    }
    for (Vertex t : touched) dist[t] = kUnreachable;
  }
  return net;
}

std::vector<Vertex> maximal_net(const Graph& g, std::uint32_t r, std::uint64_t seed) {
  std::vector<Vertex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  return maximal_net(g, r, order);
}

std::vector<std::uint32_t> component_labels(const Graph& g) {
  std::vector<std::uint32_t> label(g.vertex_count(), kUnreachable);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != kUnreachable) continue;
    label[s] = next;
    stack.assign(1, s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (const Incidence& inc : g.neighbors(v)) {
        if (label[inc.neighbor] == kUnreachable) {
          label[inc.neighbor] = next;
          stack.push_back(inc.neighbor);
        }
      }
    }
    ++next;
  }
  return label;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  const auto labels = component_labels(g);
  return std::all_of(labels.begin(), labels.end(), [](std::uint32_t l) { return l == 0; });
}

std::string write_edge_list(const Graph& g) {
  std::string out = std::to_string(g.vertex_count()) + ' ' + std::to_string(g.edge_count()) + '\n';
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

namespace {

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  bool next(std::uint64_t& value) {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    if (pos_ == text_.size()) return false;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || (ptr != end && !is_space(*ptr))) {
      throw PreconditionError("edge list: expected a non-negative integer near offset " +
                              std::to_string(pos_));
    }
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return true;
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; }
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Graph parse_edge_list(std::string_view text) {
  Tokenizer tok(text);
  std::uint64_t n = 0, m = 0;
  if (!tok.next(n) || !tok.next(m)) throw PreconditionError("edge list: missing 'n m' header");
  detail::require(n < kUnreachable, "edge list: vertex count too large");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    std::uint64_t u = 0, v = 0;
    if (!tok.next(u) || !tok.next(v)) {
      throw PreconditionError("edge list: expected " + std::to_string(m) + " edges, got " +
                              std::to_string(i));
    }
    detail::require(u < n && v < n, "edge list: endpoint out of range");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  std::uint64_t extra = 0;
  detail::require(!tok.next(extra), "edge list: trailing data after last edge");
  return Graph::build(n, std::move(edges));
}

}  // namespace bslab
