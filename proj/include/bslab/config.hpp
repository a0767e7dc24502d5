#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bslab/families.hpp"

namespace bslab {

enum class ExperimentId { kE1, kE2, kE3, kE4, kE5 };

std::string_view experiment_name(ExperimentId id);
std::optional<ExperimentId> parse_experiment_id(std::string_view name);

// Empirical constants measured once and then asserted.
struct Thresholds {
  double expander_floor = 0.05;       // lambda2 / 2 for random cubic graphs
  double expander_share = 0.9;        // fraction of instances above the floor
  double tree_profile_floor = 1.5;    // cap_2 profile of the binary tree
  double tree_oracle_tolerance = 0.05;
  double profile_r_squared = 0.98;    // linear fit of the torus profile in log r
  double tree_ball_fraction = 0.9;    // random cubic graphs, depth 2
  double support_slope = 0.1;         // |slope| of log max s*count/|C| vs log |C|
};

struct ExperimentConfig {
  ExperimentId id = ExperimentId::kE1;
  std::uint64_t seed = 1;
  std::vector<FamilySpec> families;
  std::vector<std::uint32_t> radii;
  std::vector<double> deltas;
  std::vector<std::size_t> s_values;
  std::vector<double> exponents;
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> sizes;
  std::size_t dimension = 2;
  std::uint64_t trials = 100'000;
  std::size_t instances = 200;
  std::size_t max_vertices = 40;
  std::size_t max_valence = 6;
  Thresholds thresholds;
};

// The fully resolved default plan of each experiment.
ExperimentConfig default_config(ExperimentId id);

// JSON object with a required "experiment" key; every other key overrides
// the corresponding default. Unknown keys and ill-typed values throw
// PreconditionError.
ExperimentConfig parse_config(std::string_view text);
std::string write_config(const ExperimentConfig& config);

}  // namespace bslab
