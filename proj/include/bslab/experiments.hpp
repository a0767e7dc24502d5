#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bslab/config.hpp"
#include "bslab/embedding.hpp"
#include "bslab/graph.hpp"
#include "bslab/spectral.hpp"

namespace bslab {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string format_number(double x);
std::string to_csv(const Table& t);
std::string to_json(const std::vector<Table>& tables);

struct ExperimentReport {
  std::string id;
  std::vector<Table> tables;
  std::vector<std::string> summary;
  std::string svg;  // E2 only
  // Serialized inputs and solutions behind the tables, keyed by file name.
  std::vector<std::pair<std::string, std::string>> artifacts;
};

// E1: Cheeger bounds across families.
struct CheegerRow {
  std::string family;
  std::size_t n = 0;
  std::size_t vertices = 0;
  double h_upper = 0.0;  // best of Fiedler sweep and row sweep (grids)
  double h_lower = 0.0;  // lambda2 / 2
};
std::vector<CheegerRow> e1_rows(const ExperimentConfig& cfg);

// Row-major coordinate sweep on an n x n grid: best cut among unions of
// leading or trailing rows.
CutResult grid_row_sweep(const Graph& grid, std::size_t n);

// E2: capacity profiles and escape probabilities.
struct ProfileRow {
  std::string family;
  Vertex root = 0;
  std::uint32_t radius = 0;
  double capacity = 0.0;
  double oracle = -1.0;  // closed form where known, else -1
};
struct EscapeRow {
  std::string instance;
  std::size_t degree = 0;
  double resistance = 0.0;
  double predicted = 0.0;  // 1 / (deg(root) * R_eff)
  double estimate = 0.0;
  double sigma = 0.0;      // binomial standard deviation at `predicted`
  std::uint64_t trials = 0;
};
struct RecurrenceResult {
  std::vector<ProfileRow> profiles;
  std::vector<EscapeRow> escapes;
};
// cap_2 from the depth-1 ball of the root of a complete binary tree to the
// vertices at depth >= r, by series-parallel reduction.
double binary_tree_capacity(std::uint32_t r);
RecurrenceResult e2_rows(const ExperimentConfig& cfg);
std::string e2_plot(const std::vector<ProfileRow>& rows);

// E3: supported-point counts on uniform point sets.
struct SupportRow {
  std::size_t points = 0;
  std::uint64_t seed = 0;
  double delta = 0.0;
  std::size_t s = 0;
  std::size_t count_necessary = 0;
  std::size_t count_sufficient = 0;
  double ratio = 0.0;  // s * count_necessary / |C|
};
struct SupportResult {
  std::vector<SupportRow> rows;
  // Per (size, delta): max over s of the ratio, averaged over seeds.
  std::vector<std::pair<std::size_t, double>> max_ratio;
  double slope = 0.0;  // least squares of log max_ratio vs log |C| (first delta)
  bool two_cluster_supported = false;
  std::size_t collinear_count = 0;
};
SupportResult e3_rows(const ExperimentConfig& cfg);

// E4: triangulation property suite.
struct FillCheck {
  bool triangles = false;
  bool vertices = false;
  bool edges = false;
  bool valence = false;
  bool genus = false;
  bool all() const { return triangles && vertices && edges && valence && genus; }
};
FillCheck check_fill(const RotationSystem& in, const RotationSystem& out);

struct FillRow {
  std::size_t index = 0;
  std::size_t vertices = 0;
  std::size_t edges_in = 0;
  std::size_t edges_out = 0;
  std::uint32_t genus = 0;
  std::size_t valence_in = 0;
  std::size_t valence_out = 0;
  FillCheck check;
  double contraction = 0.0;
  double expansion = 0.0;
};
std::vector<FillRow> e4_rows(const ExperimentConfig& cfg);

// E5: depth-r total variation between members of each family sequence.
struct TvRow {
  std::string family;
  std::uint32_t radius = 0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  double tv = 0.0;
  double expected = -1.0;  // exact value where transitivity or the path law fixes it
};
struct TreeFractionRow {
  std::size_t vertices = 0;
  std::uint64_t seed = 0;
  std::uint32_t radius = 0;
  double fraction = 0.0;
};
struct ConvergenceResult {
  std::vector<TvRow> tv;
  std::vector<std::pair<std::string, double>> tail_max;
  std::vector<TreeFractionRow> tree_fraction;
};
ConvergenceResult e5_rows(const ExperimentConfig& cfg);

// Seed actually used for a seeded family entry.
std::uint64_t instance_seed(const ExperimentConfig& cfg, std::uint64_t entry_seed);

ExperimentReport run_experiment(const ExperimentConfig& cfg, bool with_artifacts = false);

}  // namespace bslab
