#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

#include "bslab/error.hpp"
#include "bslab/local_limit.hpp"
#include "bslab/parallel.hpp"

namespace bslab {

EmpiricalDistribution::EmpiricalDistribution(std::uint32_t depth,
                                             std::map<std::string, std::uint64_t> counts)
    : depth_(depth), counts_(std::move(counts)) {
  for (auto it = counts_.begin(); it != counts_.end();) {
    it = it->second == 0 ? counts_.erase(it) : std::next(it);
  }
  for (const auto& [code, c] : counts_) total_ += c;
}

double EmpiricalDistribution::probability(const std::string& code_hex) const {
  const auto it = counts_.find(code_hex);
  if (it == counts_.end() || total_ == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total_);
}

std::map<std::string, double> EmpiricalDistribution::weights() const {
  std::map<std::string, double> out;
  for (const auto& [code, c] : counts_) out[code] = static_cast<double>(c) / static_cast<double>(total_);
  return out;
}

namespace {

std::vector<Vertex> pick_roots(const Graph& g, const std::optional<RootSample>& sample) {
  std::vector<Vertex> roots;
  if (!sample) {
    roots.resize(g.vertex_count());
    std::iota(roots.begin(), roots.end(), Vertex{0});
    return roots;
  }
  detail::require(sample->roots > 0, "sampled mode needs at least one root");
  detail::require(g.vertex_count() > 0, "cannot sample roots of an empty graph");
  std::mt19937_64 rng(sample->seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(g.vertex_count() - 1));
  roots.resize(sample->roots);
  for (auto& r : roots) r = pick(rng);
  return roots;
}

}  // namespace

EmpiricalDistribution neighborhood_distribution(const Graph& g, std::uint32_t r,
                                                std::optional<RootSample> sample, std::size_t cap) {
  const auto roots = pick_roots(g, sample);
  std::vector<std::string> codes(roots.size());
  parallel_for(roots.size(), [&](std::size_t i) {
    codes[i] = canonical_code(ball(g, roots[i], r), cap).hex();
  });
  std::map<std::string, std::uint64_t> counts;
  for (auto& c : codes) ++counts[std::move(c)];
  return EmpiricalDistribution(r, std::move(counts));
}

ExactFraction tv_distance_exact(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  detail::require(a.depth() == b.depth(), "tv_distance: depth mismatch");
  detail::require(a.total() > 0 && b.total() > 0, "tv_distance: empty distribution");
  using Wide = unsigned __int128;
  const Wide na = a.total(), nb = b.total();
  Wide num = 0;
  auto ia = a.counts().begin(), ib = b.counts().begin();
  while (ia != a.counts().end() || ib != b.counts().end()) {
    Wide x = 0, y = 0;
    if (ib == b.counts().end() || (ia != a.counts().end() && ia->first < ib->first)) {
      x = Wide(ia->second) * nb;
      ++ia;
    } else if (ia == a.counts().end() || ib->first < ia->first) {
      y = Wide(ib->second) * na;
      ++ib;
    } else {
      x = Wide(ia->second) * nb;
      y = Wide(ib->second) * na;
      ++ia;
      ++ib;
    }
    num += x > y ? x - y : y - x;
  }
  Wide den = 2 * na * nb;
  Wide p = num, q = den;
  while (q != 0) {
    const Wide t = p % q;
    p = q;
    q = t;
  }
  num /= p;
  den /= p;
  detail::require(den <= ~std::uint64_t{0}, "tv_distance: denominator overflow");
  return {static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den)};
}

double tv_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  return tv_distance_exact(a, b).value();
}

ConvergenceReport convergence_diagnostic(const std::vector<Graph>& graphs, std::uint32_t r,
                                         std::optional<RootSample> sample) {
  detail::require(graphs.size() >= 2, "convergence_diagnostic: need at least two graphs");
  const std::size_t m = graphs.size();
  ConvergenceReport out;
  out.distributions.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::optional<RootSample> s = sample;
    if (s) s->seed = mix_seed(sample->seed, i);
    out.distributions[i] = neighborhood_distribution(graphs[i], r, s);
  }
  out.tv.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      out.tv[i][j] = out.tv[j][i] = tv_distance(out.distributions[i], out.distributions[j]);
    }
  }
  out.tail_begin = m - (m + 1) / 2;
  for (std::size_t i = out.tail_begin; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) out.tail_max = std::max(out.tail_max, out.tv[i][j]);
  }
  return out;
}

double tree_ball_fraction(const Graph& g, std::uint32_t r, std::optional<RootSample> sample) {
  const auto roots = pick_roots(g, sample);
  detail::require(!roots.empty(), "tree_ball_fraction: no roots");
  std::vector<char> tree(roots.size(), 0);
  parallel_for(roots.size(), [&](std::size_t i) {
    const Graph b = ball(g, roots[i], r).graph;
    tree[i] = b.edge_count() + 1 == b.vertex_count();
  });
  const auto hits = std::count(tree.begin(), tree.end(), 1);
  return static_cast<double>(hits) / static_cast<double>(roots.size());
}

std::string write_distribution(const EmpiricalDistribution& d) {
  std::string out = "depth " + std::to_string(d.depth()) + " roots " + std::to_string(d.total()) + "\n";
  char buf[64];
  for (const auto& [code, c] : d.counts()) {
    const double p = static_cast<double>(c) / static_cast<double>(d.total());
    const auto res = std::to_chars(buf, buf + sizeof buf, p);
    out += code;
    out += ' ';
    out.append(buf, res.ptr);
    out += '\n';
  }
  return out;
}

EmpiricalDistribution parse_distribution(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string word_depth, word_roots;
  std::uint32_t depth = 0;
  std::uint64_t total = 0;
  detail::require(static_cast<bool>(in >> word_depth >> depth >> word_roots >> total) &&
                      word_depth == "depth" && word_roots == "roots" && total > 0,
                  "distribution: bad header");
  std::map<std::string, std::uint64_t> counts;
  std::string code, prob;
  while (in >> code >> prob) {
    detail::require(!code.empty() && code.find_first_not_of("0123456789abcdef") == std::string::npos,
                    "distribution: code must be lowercase hex");
    double p = 0.0;
    const auto res = std::from_chars(prob.data(), prob.data() + prob.size(), p);
    detail::require(res.ec == std::errc() && res.ptr == prob.data() + prob.size(),
                    "distribution: bad probability");
    const double scaled = p * static_cast<double>(total);
    const auto c = static_cast<std::uint64_t>(std::llround(scaled));
    detail::require(c > 0 && std::abs(scaled - static_cast<double>(c)) <= 1e-6 * std::max(1.0, scaled),
                    "distribution: probability is not a multiple of 1/roots");
    detail::require(counts.emplace(code, c).second, "distribution: duplicate code");
  }
  detail::require(in.eof(), "distribution: trailing data");
  EmpiricalDistribution d(depth, std::move(counts));
  detail::require(d.total() == total, "distribution: counts do not sum to roots");
  return d;
}

}  // namespace bslab
