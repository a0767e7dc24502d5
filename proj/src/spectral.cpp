#include "bslab/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "bslab/error.hpp"
#include "bslab/kernels.hpp"

namespace bslab {

std::uint64_t edge_boundary(const Graph& g, std::span<const Vertex> set) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : set) {
    detail::require(g.contains(v), "edge_boundary: vertex out of range");
    in[v] = 1;
  }
  std::uint64_t boundary = 0;
  for (const Edge& e : g.edges()) boundary += in[e.u] != in[e.v];
  return boundary;
}

namespace {

// Sorted-list lexicographic order on vertex sets given as bitmasks.
bool lex_less(std::uint32_t a, std::uint32_t b) {
  if (a == b) return false;
  const std::uint32_t diff = a ^ b;
  const std::uint32_t low = diff & (~diff + 1);
  // The set holding `low` is smaller unless the other one ends right there.
  const std::uint32_t above = ~((low << 1) - 1);
  if (a & low) return (b & above) != 0;
  return (a & above) == 0;
}

std::vector<Vertex> mask_to_set(std::uint32_t mask) {
  std::vector<Vertex> out;
  for (Vertex v = 0; mask != 0; ++v, mask >>= 1) {
    if (mask & 1u) out.push_back(v);
  }
  return out;
}

}  // namespace

CutResult cheeger_exact(const Graph& g) {
  const std::size_t n = g.vertex_count();
  detail::require(n >= 2, "cheeger_exact: need at least 2 vertices");
  detail::require(n <= kCheegerExactLimit, "cheeger_exact: graph exceeds the 24-vertex cap");
  detail::require(is_connected(g), "cheeger_exact: graph must be connected");

  std::vector<std::vector<Vertex>> nbrs(n);
  for (Vertex v = 0; v < n; ++v) {
    for (const Incidence& inc : g.neighbors(v)) {
      if (inc.neighbor != v) nbrs[v].push_back(inc.neighbor);
    }
  }
  const std::size_t half = n / 2;
  std::uint32_t mask = 0;
  std::int64_t boundary = 0;
  std::size_t size = 0;
  std::uint64_t best_boundary = 0, best_size = 0;
  std::uint32_t best_mask = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto v = static_cast<Vertex>(std::countr_zero(step));
    const bool adding = !(mask & (1u << v));
    std::int64_t delta = 0;
    for (Vertex u : nbrs[v]) delta += (mask & (1u << u)) ? -1 : 1;
    if (adding) {
      mask |= 1u << v;
      boundary += delta;
      ++size;
    } else {
      mask &= ~(1u << v);
      boundary -= delta;
      --size;
    }
    if (size == 0 || size > half) continue;
    const auto b = static_cast<std::uint64_t>(boundary);
    if (best_size == 0 || b * best_size < best_boundary * size ||
        (b * best_size == best_boundary * size && lex_less(mask, best_mask))) {
      best_boundary = b;
      best_size = size;
      best_mask = mask;
    }
  }
  return CutResult{best_boundary, best_size, mask_to_set(best_mask)};
}

namespace {

struct Laplacian {
  const Graph* g;
  LaplacianKind kind;
  std::vector<double> inv_sqrt_degree;  // normalized only
  std::vector<double> kernel;           // unit kernel vector

  Laplacian(const Graph& graph, LaplacianKind k) : g(&graph), kind(k) {
    const std::size_t n = graph.vertex_count();
    kernel.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    if (kind == LaplacianKind::kNormalized) {
      inv_sqrt_degree.resize(n);
      double norm2 = 0.0;
      for (Vertex v = 0; v < n; ++v) {
        const double d = static_cast<double>(loopless_degree(v));
        inv_sqrt_degree[v] = 1.0 / std::sqrt(d);
        kernel[v] = std::sqrt(d);
        norm2 += d;
      }
      for (double& x : kernel) x /= std::sqrt(norm2);
    }
  }

  std::size_t loopless_degree(Vertex v) const {
    std::size_t d = 0;
    for (const Incidence& inc : g->neighbors(v)) d += inc.neighbor != v;
    return d;
  }

  void apply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = g->vertex_count();
    for (Vertex v = 0; v < n; ++v) {
      double acc = 0.0;
      if (kind == LaplacianKind::kCombinatorial) {
        for (const Incidence& inc : g->neighbors(v)) {
          if (inc.neighbor != v) acc += x[v] - x[inc.neighbor];
        }
      } else {
        for (const Incidence& inc : g->neighbors(v)) {
          if (inc.neighbor != v) {
            acc += x[v] * inv_sqrt_degree[v] - x[inc.neighbor] * inv_sqrt_degree[inc.neighbor];
          }
        }
        acc *= inv_sqrt_degree[v];
      }
      y[v] = acc;
    }
  }

  // Rayleigh quotient x'Lx / x'x, summed edge by edge.
  double rayleigh(std::span<const double> x) const {
    double num = 0.0;
    for (const Edge& e : g->edges()) {
      if (e.is_loop()) continue;
      const double diff = kind == LaplacianKind::kCombinatorial
                              ? x[e.u] - x[e.v]
                              : x[e.u] * inv_sqrt_degree[e.u] - x[e.v] * inv_sqrt_degree[e.v];
      num += diff * diff;
    }
    return num / kernels::dot(x, x);
  }

  Eigen::MatrixXd dense() const {
    const std::size_t n = g->vertex_count();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::vector<double> e(n, 0.0), col(n);
    for (std::size_t j = 0; j < n; ++j) {
      e[j] = 1.0;
      apply(e, col);
      e[j] = 0.0;
      for (std::size_t i = 0; i < n; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    }
    return m;
  }
};

void check_spectral_input(const Graph& g) {
  detail::require(g.vertex_count() >= 2, "lambda2: need at least 2 vertices");
  detail::require(is_connected(g), "lambda2: graph must be connected");
}

void orthogonalize(std::span<double> w, std::span<const double> basis_vector) {
  kernels::axpy(-kernels::dot(w, basis_vector), basis_vector, w);
}

FiedlerPair dense_fiedler(const Laplacian& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.dense());
  FiedlerPair out;
  const auto col = solver.eigenvectors().col(1);
  out.vector.assign(col.data(), col.data() + col.size());
  orthogonalize(out.vector, op.kernel);
  const double norm = std::sqrt(kernels::dot(out.vector, out.vector));
  for (double& x : out.vector) x /= norm;
  out.lambda2 = op.rayleigh(out.vector);
  return out;
}

FiedlerPair lanczos_fiedler(const Laplacian& op, const EigenOptions& options) {
  const std::size_t n = op.g->vertex_count();
  const std::size_t dim = n - 1;  // deflated space
  const std::size_t cap = std::min(dim, options.max_iterations);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  std::vector<double> q(n);
  for (double& x : q) x = normal(rng);
  orthogonalize(q, op.kernel);
  {
    const double norm = std::sqrt(kernels::dot(q, q));
    for (double& x : q) x /= norm;
  }

  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> w(n);
  double last_residual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd ritz;
  double theta = 0.0;

  auto solve_tridiagonal = [&](std::size_t m) {
    Eigen::VectorXd diag(static_cast<Eigen::Index>(m)), sub(static_cast<Eigen::Index>(m > 0 ? m - 1 : 0));
    for (std::size_t i = 0; i < m; ++i) diag(static_cast<Eigen::Index>(i)) = alpha[i];
    for (std::size_t i = 0; i + 1 < m; ++i) sub(static_cast<Eigen::Index>(i)) = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    theta = tri.eigenvalues()(0);
    ritz = tri.eigenvectors().col(0);
  };

  for (std::size_t j = 0; j < cap; ++j) {
    basis.push_back(q);
    op.apply(q, w);
    const double a = kernels::dot(w, q);
    alpha.push_back(a);
    // Full reorthogonalization, twice.
    for (int pass = 0; pass < 2; ++pass) {
      orthogonalize(w, op.kernel);
      for (const auto& b : basis) orthogonalize(w, b);
    }
    const double b = std::sqrt(kernels::dot(w, w));
    const std::size_t m = j + 1;
    const bool exhausted = m == dim || b <= 1e-13 * std::max(1.0, std::abs(a));
    if (exhausted || m % 5 == 0 || m == cap) {
      solve_tridiagonal(m);
      last_residual = exhausted ? 0.0 : b * std::abs(ritz(static_cast<Eigen::Index>(m - 1)));
      if (last_residual <= options.relative_tolerance * std::abs(theta) || exhausted) {
        FiedlerPair out;
        out.lambda2 = theta;
        out.vector.assign(n, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
          kernels::axpy(ritz(static_cast<Eigen::Index>(i)), basis[i], out.vector);
        }
        const double norm = std::sqrt(kernels::dot(out.vector, out.vector));
        for (double& x : out.vector) x /= norm;
        out.iterations = m;
        out.residual = last_residual;
        return out;
      }
    }
    beta.push_back(b);
    for (std::size_t i = 0; i < n; ++i) q[i] = w[i] / b;
  }
  throw ConvergenceError("lambda2: Lanczos did not converge within " + std::to_string(cap) +
                             " iterations",
                         last_residual);
}

}  // namespace

FiedlerPair fiedler_pair(const Graph& g, LaplacianKind kind, const EigenOptions& options) {
  check_spectral_input(g);
  const Laplacian op(g, kind);
  if (!options.force_iterative && g.vertex_count() <= options.dense_limit) return dense_fiedler(op);
  return lanczos_fiedler(op, options);
}

double lambda2(const Graph& g, LaplacianKind kind, const EigenOptions& options) {
  return fiedler_pair(g, kind, options).lambda2;
}

std::vector<double> laplacian_spectrum_dense(const Graph& g, LaplacianKind kind) {
  detail::require(g.vertex_count() >= 1, "spectrum: empty graph");
  if (kind == LaplacianKind::kNormalized) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      detail::require(g.degree(v) > 0, "spectrum: normalized Laplacian needs no isolated vertices");
    }
  }
  const Laplacian op(g, kind);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.dense(), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

CutResult sweep_cut(const Graph& g, std::span<const double> scores) {
  const std::size_t n = g.vertex_count();
  detail::require(scores.size() == n, "sweep_cut: one score per vertex required");
  detail::require(n >= 2, "sweep_cut: need at least 2 vertices");
  for (double s : scores) detail::require(std::isfinite(s), "sweep_cut: scores must be finite");

  std::vector<Vertex> order(n);
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  if (*hi - *lo <= 1e-14 * (1.0 + std::abs(*hi))) {
    // Degenerate scores: BFS order, covering every component.
    const auto dist = distances_from(g, 0);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });
  } else {
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return scores[a] < scores[b]; });
  }

  const std::size_t half = n / 2;
  CutResult best;
  std::vector<char> in(n, 0);
  for (int direction = 0; direction < 2; ++direction) {
    std::fill(in.begin(), in.end(), 0);
    std::int64_t boundary = 0;
    for (std::size_t k = 0; k < half; ++k) {
      const Vertex v = direction == 0 ? order[k] : order[n - 1 - k];
      for (const Incidence& inc : g.neighbors(v)) {
        if (inc.neighbor != v) boundary += in[inc.neighbor] ? -1 : 1;
      }
      in[v] = 1;
      CutResult candidate{static_cast<std::uint64_t>(boundary), k + 1, {}};
      if (best.size == 0 || candidate.better_than(best)) {
        candidate.witness.reserve(k + 1);
        for (std::size_t i = 0; i <= k; ++i) {
          candidate.witness.push_back(direction == 0 ? order[i] : order[n - 1 - i]);
        }
        std::sort(candidate.witness.begin(), candidate.witness.end());
        best = std::move(candidate);
      }
    }
  }
  return best;
}

ExpanderCertificate expander_certify(const Graph& g, double epsilon, const EigenOptions& options) {
  ExpanderCertificate cert;
  cert.threshold = epsilon;
  cert.lambda2 = lambda2(g, LaplacianKind::kCombinatorial, options);
  cert.lower_bound = cert.lambda2 / 2.0;
  cert.certified = cert.lower_bound >= epsilon;
  return cert;
}

}  // namespace bslab
