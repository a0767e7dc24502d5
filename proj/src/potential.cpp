#include "bslab/potential.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "bslab/error.hpp"
#include "bslab/kernels.hpp"
#include "bslab/parallel.hpp"

namespace bslab {

double dirichlet_energy(const Graph& g, std::span<const double> u, double p) {
  detail::require(u.size() == g.vertex_count(), "energy: one value per vertex required");
  double energy = 0.0;
  for (const Edge& e : g.edges()) {
    const double drop = std::abs(u[e.u] - u[e.v]);
    energy += p == 2.0 ? drop * drop : std::pow(drop, p);
  }
  return energy;
}

namespace {

constexpr std::int64_t kFixed = -1;

// Laplacian restricted to the free vertices, with per-edge weights.
class ReducedSystem {
 public:
  ReducedSystem(const Graph& g, std::vector<std::int64_t> index, std::vector<Vertex> free)
      : g_(g), index_(std::move(index)), free_(std::move(free)) {}

  std::size_t size() const { return free_.size(); }
  std::span<const Vertex> free_vertices() const { return free_; }
  std::int64_t index_of(Vertex v) const { return index_[v]; }

  // Solves the weighted harmonic equations for the free entries of u,
  // starting from the current free entries. Returns CG iterations.
  std::size_t solve(std::span<const double> weight, std::span<double> u,
                    const SolverOptions& options) const {
    const std::size_t n = size();
    if (n == 0) return 0;
    std::vector<double> x(n), rhs(n, 0.0), diag(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const Vertex v = free_[k];
      x[k] = u[v];
      for (const Incidence& inc : g_.neighbors(v)) {
        if (inc.neighbor == v) continue;
        const double w = weight[inc.edge];
        diag[k] += w;
        if (index_[inc.neighbor] == kFixed) rhs[k] += w * u[inc.neighbor];
      }
    }
    std::vector<double> r(n), z(n), dir(n), ad(n);
    apply(weight, x, ad);
    for (std::size_t k = 0; k < n; ++k) r[k] = rhs[k] - ad[k];
    const double rhs_norm = std::sqrt(kernels::dot(rhs, rhs));
    const double target = options.linear_tolerance * std::max(rhs_norm, 1e-300);
    for (std::size_t k = 0; k < n; ++k) z[k] = r[k] / diag[k];
    dir = z;
    double rz = kernels::dot(r, z);
    std::size_t it = 0;
    double rnorm = std::sqrt(kernels::dot(r, r));
    for (; it < options.max_linear_iterations && rnorm > target; ++it) {
      apply(weight, dir, ad);
      const double step = rz / kernels::dot(dir, ad);
      kernels::axpy(step, dir, x);
      kernels::axpy(-step, ad, r);
      rnorm = std::sqrt(kernels::dot(r, r));
      for (std::size_t k = 0; k < n; ++k) z[k] = r[k] / diag[k];
      const double rz_next = kernels::dot(r, z);
      kernels::xpay(z, rz_next / rz, dir);
      rz = rz_next;
    }
    if (rnorm > target) {
      throw ConvergenceError("capacity: conjugate gradient hit its iteration cap", rnorm / std::max(rhs_norm, 1e-300));
    }
    for (std::size_t k = 0; k < n; ++k) u[free_[k]] = x[k];
    return it;
  }

 private:
  void apply(std::span<const double> weight, std::span<const double> x, std::span<double> y) const {
    for (std::size_t k = 0; k < free_.size(); ++k) {
      const Vertex v = free_[k];
      double acc = 0.0;
      for (const Incidence& inc : g_.neighbors(v)) {
        if (inc.neighbor == v) continue;
        const double w = weight[inc.edge];
        const std::int64_t j = index_[inc.neighbor];
        acc += w * (x[k] - (j == kFixed ? 0.0 : x[static_cast<std::size_t>(j)]));
      }
      y[k] = acc;
    }
  }

  const Graph& g_;
  std::vector<std::int64_t> index_;
  std::vector<Vertex> free_;
};

// Gradient of the p-energy at the free vertices; also returns the largest
// flux magnitude at any vertex for normalization.
double relative_gradient(const Graph& g, const ReducedSystem& sys, std::span<const double> u,
                         double p, std::vector<double>* gradient_out = nullptr) {
  std::vector<double> grad(g.vertex_count(), 0.0);
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    const double d = u[e.u] - u[e.v];
    const double flux = p * std::copysign(std::pow(std::abs(d), p - 1.0), d);
    grad[e.u] += flux;
    grad[e.v] -= flux;
  }
  double free_max = 0.0, all_max = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    all_max = std::max(all_max, std::abs(grad[v]));
    if (sys.index_of(v) != kFixed) free_max = std::max(free_max, std::abs(grad[v]));
  }
  if (gradient_out) *gradient_out = std::move(grad);
  return all_max > 0.0 ? free_max / all_max : 0.0;
}

void clamp_unit(std::span<double> u) {
  for (double& x : u) x = std::clamp(x, 0.0, 1.0);
}

}  // namespace

PotentialSolution p_capacity(const Graph& g, std::span<const Vertex> source,
                             std::span<const Vertex> ground, double p,
                             const SolverOptions& options) {
  detail::require(p > 1.0 && std::isfinite(p), "capacity: exponent p must be > 1");
  detail::require(!source.empty() && !ground.empty(), "capacity: source and ground must be non-empty");
  const std::size_t n = g.vertex_count();
  std::vector<signed char> role(n, 0);  // 1 source, -1 ground
  for (Vertex v : source) {
    detail::require(g.contains(v), "capacity: source vertex out of range");
    role[v] = 1;
  }
  for (Vertex v : ground) {
    detail::require(g.contains(v), "capacity: ground vertex out of range");
    detail::require(role[v] != 1, "capacity: source and ground overlap");
    role[v] = -1;
  }

  PotentialSolution sol;
  sol.u.assign(n, 0.0);
  for (Vertex v = 0; v < n; ++v) sol.u[v] = role[v] == 1 ? 1.0 : 0.0;

  // Components without both boundary types are constant at the optimum.
  const auto comp = component_labels(g);
  const std::uint32_t comps = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<char> has_source(comps, 0), has_ground(comps, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (role[v] == 1) has_source[comp[v]] = 1;
    if (role[v] == -1) has_ground[comp[v]] = 1;
  }
  std::vector<std::int64_t> index(n, kFixed);
  std::vector<Vertex> free;
  for (Vertex v = 0; v < n; ++v) {
    if (role[v] != 0) continue;
    if (has_source[comp[v]] && has_ground[comp[v]]) {
      index[v] = static_cast<std::int64_t>(free.size());
      free.push_back(v);
    } else {
      sol.u[v] = has_source[comp[v]] ? 1.0 : 0.0;
    }
  }
  const ReducedSystem sys(g, std::move(index), std::move(free));

  std::vector<double> weight(g.edge_count(), 1.0);
  sol.iterations = sys.solve(weight, sol.u, options);
  clamp_unit(sol.u);
  if (p == 2.0) {
    sol.energy = dirichlet_energy(g, sol.u, p);
    sol.residual = relative_gradient(g, sys, sol.u, p);
    return sol;
  }

  // Damped IRLS. Each step solves the weighted harmonic problem with weights
  // |drop|^(p-2) (regularized), then line-searches along the change. The
  // step 1/(p-1) is the Newton step of the unregularized energy.
  double energy = dirichlet_energy(g, sol.u, p);
  double scale = 0.0;
  for (const Edge& e : g.edges()) scale = std::max(scale, std::abs(sol.u[e.u] - sol.u[e.v]));
  double eps = 1e-2 * std::max(scale, 1e-12);
  const double eps_floor = 1e-12 * std::max(scale, 1e-12);
  std::size_t stalled = 0;
  std::size_t outer = 0;
  std::vector<double> target(sol.u), trial(n), gradient;
  double gradient_step = 1.0;
  for (; outer < options.max_outer_iterations && stalled < options.stall_window; ++outer) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edge(e);
      const double d = sol.u[ed.u] - sol.u[ed.v];
      weight[e] = std::pow(d * d + eps * eps, 0.5 * (p - 2.0));
    }
    target = sol.u;
    sol.iterations += sys.solve(weight, target, options);

    double best_energy = energy;
    std::vector<double> best;
    auto try_step = [&](double t) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = sol.u[i] + t * (target[i] - sol.u[i]);
      clamp_unit(trial);
      const double e = dirichlet_energy(g, trial, p);
      if (e < best_energy) {
        best_energy = e;
        best = trial;
        return true;
      }
      return false;
    };
    const bool newton_ok = try_step(1.0 / (p - 1.0));
    const bool full_ok = try_step(1.0);
    if (!newton_ok && !full_ok) {
      for (double t = 0.5 / (p - 1.0); t > 1e-12; t *= 0.5) {
        if (try_step(t)) break;
      }
    }
    if (best.empty() && p < 2.0) {
      // Projected gradient fallback.
      relative_gradient(g, sys, sol.u, p, &gradient);
      for (double t = gradient_step; t > 1e-16; t *= 0.5) {
        for (std::size_t i = 0; i < n; ++i) {
          trial[i] = sys.index_of(static_cast<Vertex>(i)) == kFixed ? sol.u[i] : sol.u[i] - t * gradient[i];
        }
        clamp_unit(trial);
        const double e = dirichlet_energy(g, trial, p);
        if (e < best_energy) {
          best_energy = e;
          best = trial;
          gradient_step = 2.0 * t;
          break;
        }
      }
    }
    const double decrease = best.empty() ? 0.0 : (energy - best_energy) / std::max(energy, 1e-300);
    if (!best.empty()) {
      sol.u = std::move(best);
      energy = best_energy;
    }
    stalled = decrease < options.stall_tolerance ? stalled + 1 : 0;
    eps = std::max(eps_floor, 0.1 * eps);
  }
  sol.energy = energy;
  sol.residual = relative_gradient(g, sys, sol.u, p);
  if (stalled < options.stall_window) {
    throw ConvergenceError("capacity: IRLS did not settle within the iteration cap", sol.residual);
  }
  return sol;
}

PotentialSolution p_capacity(const CapacityProblem& problem, const SolverOptions& options) {
  return p_capacity(problem.graph, problem.source, problem.ground, problem.exponent, options);
}

double effective_resistance(const Graph& g, std::span<const Vertex> source,
                            std::span<const Vertex> ground) {
  const double cap = p_capacity(g, source, ground, 2.0).energy;
  return cap > 0.0 ? 1.0 / cap : std::numeric_limits<double>::infinity();
}

ParabolicityProfile parabolicity_profile(const Graph& g, Vertex root,
                                         std::span<const std::uint32_t> radii, double p,
                                         const SolverOptions& options) {
  detail::require(!radii.empty(), "profile: need at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    detail::require(radii[i] >= 2, "profile: radii must be >= 2");
    detail::require(i == 0 || radii[i] > radii[i - 1], "profile: radii must be increasing");
  }
  const auto dist = distances_from(g, root);
  std::uint32_t eccentricity = 0;
  for (std::uint32_t d : dist) {
    if (d != kUnreachable) eccentricity = std::max(eccentricity, d);
  }
  detail::require(radii.back() <= eccentricity,
                  "profile: radius exceeds the component of the root");
  std::vector<Vertex> source;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] <= 1) source.push_back(v);
  }

  ParabolicityProfile profile;
  profile.points.resize(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    std::vector<Vertex> ground;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (dist[v] != kUnreachable && dist[v] >= radii[i]) ground.push_back(v);
    }
    profile.points[i] = {radii[i], p_capacity(g, source, ground, p, options).energy};
  });

  profile.last_value = profile.points.back().capacity;
  const std::size_t start = profile.points.size() / 2;
  const std::size_t m = profile.points.size() - start;
  if (m >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = start; i < profile.points.size(); ++i) {
      const double x = std::log(static_cast<double>(profile.points[i].radius));
      const double y = std::log(profile.points[i].capacity);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double dm = static_cast<double>(m);
    profile.log_slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
  }
  const bool decaying = profile.log_slope < -0.1 ||
                        profile.last_value < 0.5 * profile.points.front().capacity;
  profile.verdict = decaying ? "decaying toward 0" : "bounded away from 0";
  return profile;
}

EscapeEstimate escape_probability_mc(const Graph& g, Vertex root,
                                     std::span<const Vertex> boundary, std::uint64_t trials,
                                     std::uint64_t seed) {
  detail::require(trials > 0, "escape: trials must be positive");
  detail::require(!boundary.empty(), "escape: boundary must be non-empty");
  detail::require(g.contains(root), "escape: root out of range");
  std::vector<char> target(g.vertex_count(), 0);
  for (Vertex b : boundary) {
    detail::require(g.contains(b), "escape: boundary vertex out of range");
    detail::require(b != root, "escape: root must not lie in the boundary");
    target[b] = 1;
  }
  detail::require(g.degree(root) > 0, "escape: root is isolated");

  EscapeEstimate out;
  out.trials = trials;
  const auto dist = distances_from(g, root);
  const bool reachable = std::any_of(boundary.begin(), boundary.end(),
                                     [&](Vertex b) { return dist[b] != kUnreachable; });
  if (reachable) {
    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> escapes(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
      std::mt19937_64 rng(mix_seed(seed, c));
      const std::uint64_t begin = c * kChunk;
      const std::uint64_t end = std::min(trials, begin + kChunk);
      std::uint64_t hits = 0;
      for (std::uint64_t t = begin; t < end; ++t) {
        Vertex v = root;
        while (true) {
          const auto nbrs = g.neighbors(v);
          v = nbrs[std::uniform_int_distribution<std::size_t>(0, nbrs.size() - 1)(rng)].neighbor;
          if (target[v]) {
            ++hits;
            break;
          }
          if (v == root) break;
        }
      }
      escapes[c] = hits;
    });
    out.escapes = std::accumulate(escapes.begin(), escapes.end(), std::uint64_t{0});
  }
  out.estimate = static_cast<double>(out.escapes) / static_cast<double>(trials);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
  return out;
}

void validate_path_family(const PathFamily& family, const Graph& g) {
  std::vector<char> on_path(g.vertex_count(), 0);
  for (const auto& path : family.paths) {
    detail::require(!path.empty(), "path family: empty path");
    for (std::size_t i = 0; i < path.size(); ++i) {
      detail::require(g.contains(path[i]), "path family: vertex out of range");
      detail::require(!on_path[path[i]], "path family: path is not self-avoiding");
      on_path[path[i]] = 1;
      if (i > 0) {
        const auto nbrs = g.neighbors(path[i - 1]);
        detail::require(std::any_of(nbrs.begin(), nbrs.end(),
                                    [&](const Incidence& inc) { return inc.neighbor == path[i]; }),
                        "path family: consecutive vertices are not adjacent");
      }
    }
    for (Vertex v : path) on_path[v] = 0;
  }
}

ModulusResult modulus_small(const PathFamily& family, double p, double tolerance,
                            std::size_t max_sweeps) {
  detail::require(p > 1.0 && std::isfinite(p), "modulus: exponent p must be > 1");
  detail::require(family.paths.size() <= kModulusPathCap, "modulus: too many paths");
  ModulusResult out;
  if (family.paths.empty()) return out;

  // Compact vertex ids.
  Vertex max_id = 0;
  for (const auto& path : family.paths) {
    detail::require(!path.empty(), "modulus: empty path");
    for (Vertex v : path) max_id = std::max(max_id, v);
  }
  out.rho.assign(static_cast<std::size_t>(max_id) + 1, 0.0);
  std::vector<std::int64_t> local(out.rho.size(), -1);
  std::vector<Vertex> ids;
  std::vector<std::vector<std::size_t>> paths;
  for (const auto& path : family.paths) {
    std::vector<std::size_t> lp;
    for (Vertex v : path) {
      if (local[v] < 0) {
        local[v] = static_cast<std::int64_t>(ids.size());
        ids.push_back(v);
      }
      lp.push_back(static_cast<std::size_t>(local[v]));
    }
    std::vector<std::size_t> sorted = lp;
    std::sort(sorted.begin(), sorted.end());
    detail::require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                    "modulus: path is not self-avoiding");
    paths.push_back(std::move(lp));
  }

  // Dual: maximize sum mu - (p - 1) sum_v (m_v / p)^q, m_v = sum of mu over
  // paths through v, q = p / (p - 1). Primal recovery rho_v = (m_v/p)^(1/(p-1)).
  const double inv = 1.0 / (p - 1.0);
  const double q = p * inv;
  const std::size_t nv = ids.size();
  std::vector<double> mu(paths.size(), 0.0), m(nv, 0.0);
  auto rho_of = [&](double mass) { return mass <= 0.0 ? 0.0 : std::pow(mass / p, inv); };

  auto evaluate = [&](double& primal, double& dual, std::vector<double>& rho) {
    rho.assign(nv, 0.0);
    for (std::size_t v = 0; v < nv; ++v) rho[v] = rho_of(m[v]);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& path : paths) {
      double s = 0.0;
      for (std::size_t v : path) s += rho[v];
      worst = std::min(worst, s);
    }
    // Scale to admissibility.
    const double scale = worst > 0.0 ? 1.0 / worst : std::numeric_limits<double>::infinity();
    primal = 0.0;
    for (double& r : rho) {
      r *= scale;
      primal += std::pow(r, p);
    }
    dual = std::accumulate(mu.begin(), mu.end(), 0.0);
    for (std::size_t v = 0; v < nv; ++v) dual -= (p - 1.0) * std::pow(std::max(m[v], 0.0) / p, q);
  };

  // Newton steps on the paths with positive multipliers, solving
  // sum_{v in path} rho(m_v) = 1 for each of them. Kept only if the duality
  // gap shrinks; any mu >= 0 gives a valid dual bound.
  auto polish = [&] {
    std::vector<double> rho_tmp;
    double p0 = 0.0, d0 = 0.0;
    evaluate(p0, d0, rho_tmp);
    for (int step = 0; step < 20; ++step) {
      std::vector<std::size_t> active;
      for (std::size_t k = 0; k < paths.size(); ++k) {
        if (mu[k] > 0.0) active.push_back(k);
      }
      if (active.empty()) return;
      const auto na = static_cast<Eigen::Index>(active.size());
      Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(na, na);
      Eigen::VectorXd res(na);
      std::vector<double> slope(nv, 0.0);
      for (std::size_t v = 0; v < nv; ++v) {
        slope[v] = m[v] <= 0.0 ? 0.0 : inv / p * std::pow(m[v] / p, inv - 1.0);
      }
      std::vector<std::vector<char>> member(active.size(), std::vector<char>(nv, 0));
      for (Eigen::Index a = 0; a < na; ++a) {
        double sum = -1.0;
        for (std::size_t v : paths[active[a]]) {
          member[a][v] = 1;
          sum += rho_of(m[v]);
        }
        res(a) = sum;
      }
      for (Eigen::Index a = 0; a < na; ++a) {
        for (Eigen::Index b = 0; b <= a; ++b) {
          double x = 0.0;
          for (std::size_t v : paths[active[a]]) x += member[b][v] ? slope[v] : 0.0;
          jac(a, b) = jac(b, a) = x;
        }
      }
      const Eigen::VectorXd delta = jac.completeOrthogonalDecomposition().solve(-res);
      const std::vector<double> mu_old = mu, m_old = m;
      for (Eigen::Index a = 0; a < na; ++a) {
        const std::size_t k = active[a];
        const double t = std::max(0.0, mu[k] + delta(a));
        for (std::size_t v : paths[k]) m[v] += t - mu[k];
        mu[k] = t;
      }
      double p1 = 0.0, d1 = 0.0;
      evaluate(p1, d1, rho_tmp);
      if (!(p1 - d1 < p0 - d0)) {
        mu = mu_old;
        m = m_old;
        return;
      }
      p0 = p1;
      d0 = d1;
    }
  };

  std::vector<double> rho;
  double primal = std::numeric_limits<double>::infinity(), dual = 0.0;
  double best_gap = std::numeric_limits<double>::infinity();
  std::size_t stalled = 0;
  std::size_t sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    for (std::size_t k = 0; k < paths.size(); ++k) {
      const auto& path = paths[k];
      const double old = mu[k];
      // h(t) = sum_{v in path} rho(m_v - old + t), increasing in t.
      auto h = [&](double t) {
        double s = 0.0;
        for (std::size_t v : path) s += rho_of(m[v] - old + t);
        return s;
      };
      double t = 0.0;
      if (h(0.0) < 1.0) {
        double lo = 0.0, hi = std::max(old, 1e-300);
        while (h(hi) < 1.0) hi *= 2.0;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          (h(mid) < 1.0 ? lo : hi) = mid;
        }
        t = 0.5 * (lo + hi);
      }
      mu[k] = t;
      for (std::size_t v : path) m[v] += t - old;
    }
    if (sweep % 8 == 7 || paths.size() == 1) {
      if (sweep % 64 == 63) polish();
      evaluate(primal, dual, rho);
      const double gap = (primal - dual) / primal;
      if (gap <= tolerance) break;
      // Rounding floor: the gap stopped shrinking.
      if (gap < 0.999 * best_gap) {
        best_gap = gap;
        stalled = 0;
      } else if (++stalled >= 32) {
        break;
      }
    }
  }
  evaluate(primal, dual, rho);
  if (primal - dual > std::max(tolerance, 1e-6) * primal) {
    throw ConvergenceError("modulus: dual coordinate ascent did not close the gap",
                           (primal - dual) / primal);
  }
  out.value = primal;
  out.lower_bound = dual;
  out.sweeps = sweep + 1;
  for (std::size_t v = 0; v < nv; ++v) out.rho[ids[v]] = rho[v];
  return out;
}

PathFamily paths_to_sphere(const Graph& g, std::span<const Vertex> source, std::uint32_t r,
                           std::size_t budget) {
  detail::require(!source.empty(), "paths_to_sphere: source must be non-empty");
  detail::require(r >= 1, "paths_to_sphere: radius must be >= 1");
  const auto dist = distances_from_set(g, source);
  PathFamily family;
  std::vector<char> on_path(g.vertex_count(), 0);
  std::vector<Vertex> path;
  auto dfs = [&](auto&& self, Vertex v) -> void {
    path.push_back(v);
    on_path[v] = 1;
    if (dist[v] == r) {
      detail::require(family.paths.size() < budget, "paths_to_sphere: path budget exceeded");
      family.paths.push_back(path);
    } else {
      for (const Incidence& inc : g.neighbors(v)) {
        if (!on_path[inc.neighbor] && dist[inc.neighbor] <= r) self(self, inc.neighbor);
      }
    }
    on_path[v] = 0;
    path.pop_back();
  };
  std::vector<Vertex> starts(source.begin(), source.end());
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  for (Vertex s : starts) dfs(dfs, s);
  return family;
}

double cap_mod_constant(std::size_t max_degree, double p) {
  const double d = static_cast<double>(std::max<std::size_t>(max_degree, 1));
  return std::max(std::pow(2.0, p - 1.0) * d, 2.0 * std::pow(d, p - 1.0));
}

CapModComparison compare_cap_mod(const Graph& g, std::span<const Vertex> source,
                                 std::uint32_t r, double p, std::size_t path_budget) {
  const auto dist = distances_from_set(g, source);
  std::vector<Vertex> ground;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (dist[v] != kUnreachable && dist[v] >= r) ground.push_back(v);
  }
  detail::require(!ground.empty(), "compare_cap_mod: no vertex at the requested distance");
  CapModComparison out;
  out.capacity = p_capacity(g, source, ground, p).energy;
  const PathFamily family = paths_to_sphere(g, source, r, path_budget);
  out.path_count = family.paths.size();
  out.modulus = modulus_small(family, p).value;
  out.ratio = out.capacity / out.modulus;
  out.max_degree = g.max_degree();
  out.constant = cap_mod_constant(out.max_degree, p);
  constexpr double kSlack = 1e-9;
  out.within_bounds = out.ratio >= (1.0 - kSlack) / out.constant &&
                      out.ratio <= out.constant * (1.0 + kSlack);
  return out;
}

}  // namespace bslab
