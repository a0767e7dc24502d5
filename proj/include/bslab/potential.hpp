#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bslab/graph.hpp"

namespace bslab {

// Dirichlet problem for the p-capacity of `source` (u = 1) relative to
// `ground` (u = 0).
struct CapacityProblem {
  Graph graph;
  std::vector<Vertex> source;
  std::vector<Vertex> ground;
  double exponent = 2.0;
};

struct PotentialSolution {
  std::vector<double> u;   // 1 on source, 0 on ground, within [0, 1]
  double energy = 0.0;     // sum over edges of |u(a) - u(b)|^p
  std::size_t iterations = 0;
  double residual = 0.0;   // relative gradient norm on the free vertices
};

struct SolverOptions {
  // Relative residual for the inner linear (CG) solves.
  double linear_tolerance = 1e-13;
  std::size_t max_linear_iterations = 100'000;
  // Outer loop for p != 2: stop once the relative energy decrease stayed
  // below `stall_tolerance` for `stall_window` consecutive iterations.
  double stall_tolerance = 1e-10;
  std::size_t stall_window = 32;
  std::size_t max_outer_iterations = 5'000;
};

double dirichlet_energy(const Graph& g, std::span<const double> u, double p);

// cap_p(S; Z) = inf sum_e |u(a) - u(b)|^p over u with u = 1 on S, u = 0 on
// Z. Linear Laplacian solve for p = 2; damped IRLS with a projected
// gradient fallback otherwise. Vertices in components touching neither set
// get u = 0; components touching only one set take that set's value.
// Throws ConvergenceError if an iteration cap is hit.
PotentialSolution p_capacity(const Graph& g, std::span<const Vertex> source,
                             std::span<const Vertex> ground, double p,
                             const SolverOptions& options = {});
PotentialSolution p_capacity(const CapacityProblem& problem, const SolverOptions& options = {});

// 1 / cap_2(S; Z); +infinity when S and Z are not connected.
double effective_resistance(const Graph& g, std::span<const Vertex> source,
                            std::span<const Vertex> ground);

struct ProfilePoint {
  std::uint32_t radius = 0;
  double capacity = 0.0;
};

struct ParabolicityProfile {
  std::vector<ProfilePoint> points;
  double last_value = 0.0;
  // Least-squares slope of log(capacity) against log(radius), last half.
  double log_slope = 0.0;
  std::string verdict;  // "decaying toward 0" or "bounded away from 0"
};

// cap_p(B(root, 1); {v : d(root, v) >= r}) for each r. Radii must be
// increasing, >= 2, and no larger than the eccentricity of root.
ParabolicityProfile parabolicity_profile(const Graph& g, Vertex root,
                                         std::span<const std::uint32_t> radii, double p,
                                         const SolverOptions& options = {});

struct EscapeEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t escapes = 0;
};

// Fraction of simple random walks from root that reach `boundary` before
// returning to root. Trials are split into fixed chunks with derived seeds,
// so the result depends only on (trials, seed).
EscapeEstimate escape_probability_mc(const Graph& g, Vertex root,
                                     std::span<const Vertex> boundary, std::uint64_t trials,
                                     std::uint64_t seed);

struct PathFamily {
  std::vector<std::vector<Vertex>> paths;
};

// Self-avoidance, and adjacency of consecutive vertices in g.
void validate_path_family(const PathFamily& family, const Graph& g);

inline constexpr std::size_t kModulusPathCap = 100'000;

struct ModulusResult {
  double value = 0.0;        // sum rho^p of the admissible rho below
  double lower_bound = 0.0;  // dual objective; value - lower_bound is the gap
  std::vector<double> rho;   // indexed by vertex id, 0 where unused
  std::size_t sweeps = 0;
};

// Vertex p-modulus inf sum_v rho(v)^p subject to sum_{v in path} rho(v) >= 1
// for every path. Solved by coordinate ascent on the concave dual; the
// returned rho is rescaled to be exactly admissible. Empty family -> 0.
ModulusResult modulus_small(const PathFamily& family, double p, double tolerance = 1e-10,
                            std::size_t max_sweeps = 200'000);

// Every self-avoiding path from a vertex of S to the first vertex at
// distance r from S. Throws PreconditionError once more than `budget`
// paths have been found.
PathFamily paths_to_sphere(const Graph& g, std::span<const Vertex> source, std::uint32_t r,
                           std::size_t budget = kModulusPathCap);

struct CapModComparison {
  double capacity = 0.0;
  double modulus = 0.0;
  double ratio = 0.0;      // capacity / modulus
  double constant = 0.0;   // c(d, p); ratio is expected in [1/c, c]
  std::size_t path_count = 0;
  std::size_t max_degree = 0;
  bool within_bounds = false;
};

// c(d, p) = max(2^(p-1) d, 2 d^(p-1)): edge capacity and vertex modulus of
// the S-to-sphere paths agree up to this factor on graphs of valence <= d.
double cap_mod_constant(std::size_t max_degree, double p);

CapModComparison compare_cap_mod(const Graph& g, std::span<const Vertex> source,
                                 std::uint32_t r, double p,
                                 std::size_t path_budget = kModulusPathCap);

}  // namespace bslab
