#include "bslab/config.hpp"

#include <set>

#include <json.hpp>

#include "bslab/error.hpp"

namespace bslab {

using nlohmann::json;

std::string_view experiment_name(ExperimentId id) {
  switch (id) {
    case ExperimentId::kE1: return "e1";
    case ExperimentId::kE2: return "e2";
    case ExperimentId::kE3: return "e3";
    case ExperimentId::kE4: return "e4";
    case ExperimentId::kE5: return "e5";
  }
  return "unknown";
}

std::optional<ExperimentId> parse_experiment_id(std::string_view name) {
  for (auto id : {ExperimentId::kE1, ExperimentId::kE2, ExperimentId::kE3, ExperimentId::kE4, ExperimentId::kE5}) {
    const auto n = experiment_name(id);
    if (name == n || (name.size() == 2 && name[0] == 'E' && name[1] == n[1])) return id;
  }
  return std::nullopt;
}

namespace {

FamilySpec family(FamilyKind kind, std::size_t size, std::uint64_t seed = 0) {
  FamilySpec f;
  f.kind = kind;
  f.size = size;
  f.seed = seed;
  return f;
}

std::vector<std::uint32_t> range(std::uint32_t lo, std::uint32_t hi) {
  std::vector<std::uint32_t> out;
  for (auto r = lo; r <= hi; ++r) out.push_back(r);
  return out;
}

}  // namespace

ExperimentConfig default_config(ExperimentId id) {
  ExperimentConfig c;
  c.id = id;
  switch (id) {
    case ExperimentId::kE1:
      for (std::size_t n : {8, 16, 32, 64}) c.families.push_back(family(FamilyKind::kPlanarGrid, n));
      for (std::size_t n : {8, 16, 32}) c.families.push_back(family(FamilyKind::kTorusGrid, n));
      for (std::size_t n : {100, 200, 500, 1000}) {
        for (std::uint64_t s = 1; s <= 10; ++s) c.families.push_back(family(FamilyKind::kRandomRegular, n, s));
      }
      break;
    case ExperimentId::kE2:
      c.families = {family(FamilyKind::kTorusGrid, 64), family(FamilyKind::kBinaryTree, 12),
                    family(FamilyKind::kPath, 64)};
      c.radii = range(2, 16);
      c.exponents = {2.0};
      break;
    case ExperimentId::kE3:
      c.sizes = {100, 1000, 10000};
      c.deltas = {1.0 / 3.0};
      c.s_values = {2, 4, 8, 16, 32, 64, 128};
      c.seeds = {1};
      break;
    case ExperimentId::kE4:
      break;
    case ExperimentId::kE5:
      for (std::size_t n : {6, 12, 24}) c.families.push_back(family(FamilyKind::kTorusGrid, n));
      for (std::size_t k = 4; k <= 8; ++k) c.families.push_back(family(FamilyKind::kPath, std::size_t{1} << k));
      for (std::size_t n : {250, 500, 1000}) c.families.push_back(family(FamilyKind::kRandomRegular, n, 1));
      c.radii = {2};
      break;
  }
  return c;
}

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  detail::require(j.is_object(), where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    detail::require(allowed.contains(key), where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw PreconditionError(where + ": bad value for '" + key + "'");
  }
}

FamilySpec parse_family(const json& j) {
  check_keys(j, {"kind", "size", "degree", "seed"}, "family");
  detail::require(j.contains("kind") && j.contains("size"), "family: 'kind' and 'size' are required");
  std::string kind;
  read(j, "kind", kind, "family");
  const auto k = parse_family_kind(kind);
  detail::require(k.has_value(), "family: unknown kind '" + kind + "'");
  FamilySpec f;
  f.kind = *k;
  read(j, "size", f.size, "family");
  read(j, "degree", f.degree, "family");
  read(j, "seed", f.seed, "family");
  return f;
}

json family_json(const FamilySpec& f) {
  return {{"kind", family_name(f.kind)}, {"size", f.size}, {"degree", f.degree}, {"seed", f.seed}};
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("config: invalid JSON: ") + e.what());
  }
  check_keys(j, {"experiment", "seed", "families", "radii", "deltas", "s_values", "exponents", "seeds",
                 "sizes", "dimension", "trials", "instances", "max_vertices", "max_valence", "thresholds"},
             "config");
  detail::require(j.contains("experiment"), "config: 'experiment' is required");
  std::string name;
  read(j, "experiment", name, "config");
  const auto id = parse_experiment_id(name);
  detail::require(id.has_value(), "config: unknown experiment '" + name + "'");
  ExperimentConfig c = default_config(*id);
  read(j, "seed", c.seed, "config");
  if (j.contains("families")) {
    detail::require(j["families"].is_array(), "config: 'families' must be an array");
    c.families.clear();
    for (const auto& f : j["families"]) c.families.push_back(parse_family(f));
  }
  read(j, "radii", c.radii, "config");
  read(j, "deltas", c.deltas, "config");
  read(j, "s_values", c.s_values, "config");
  read(j, "exponents", c.exponents, "config");
  read(j, "seeds", c.seeds, "config");
  read(j, "sizes", c.sizes, "config");
  read(j, "dimension", c.dimension, "config");
  read(j, "trials", c.trials, "config");
  read(j, "instances", c.instances, "config");
  read(j, "max_vertices", c.max_vertices, "config");
  read(j, "max_valence", c.max_valence, "config");
  if (j.contains("thresholds")) {
    const json& t = j["thresholds"];
    const std::string where = "thresholds";
    check_keys(t, {"expander_floor", "expander_share", "tree_profile_floor", "tree_oracle_tolerance",
                   "profile_r_squared", "tree_ball_fraction", "support_slope"},
               where);
    read(t, "expander_floor", c.thresholds.expander_floor, where);
    read(t, "expander_share", c.thresholds.expander_share, where);
    read(t, "tree_profile_floor", c.thresholds.tree_profile_floor, where);
    read(t, "tree_oracle_tolerance", c.thresholds.tree_oracle_tolerance, where);
    read(t, "profile_r_squared", c.thresholds.profile_r_squared, where);
    read(t, "tree_ball_fraction", c.thresholds.tree_ball_fraction, where);
    read(t, "support_slope", c.thresholds.support_slope, where);
  }
  for (double d : c.deltas) detail::require(d > 0.0 && d < 1.0, "config: deltas must lie in (0, 1)");
  for (double p : c.exponents) detail::require(p > 1.0, "config: exponents must be > 1");
  for (auto s : c.s_values) detail::require(s >= 1, "config: s_values must be >= 1");
  for (auto r : c.radii) detail::require(r >= 1, "config: radii must be >= 1");
  detail::require(c.dimension >= 1, "config: dimension must be >= 1");
  return c;
}

std::string write_config(const ExperimentConfig& c) {
  json families = json::array();
  for (const auto& f : c.families) families.push_back(family_json(f));
  const Thresholds& t = c.thresholds;
  json j = {{"experiment", experiment_name(c.id)},
            {"seed", c.seed},
            {"families", families},
            {"radii", c.radii},
            {"deltas", c.deltas},
            {"s_values", c.s_values},
            {"exponents", c.exponents},
            {"seeds", c.seeds},
            {"sizes", c.sizes},
            {"dimension", c.dimension},
            {"trials", c.trials},
            {"instances", c.instances},
            {"max_vertices", c.max_vertices},
            {"max_valence", c.max_valence},
            {"thresholds",
             {{"expander_floor", t.expander_floor},
              {"expander_share", t.expander_share},
              {"tree_profile_floor", t.tree_profile_floor},
              {"tree_oracle_tolerance", t.tree_oracle_tolerance},
              {"profile_r_squared", t.profile_r_squared},
              {"tree_ball_fraction", t.tree_ball_fraction},
              {"support_slope", t.support_slope}}}};
  return j.dump(2) + "\n";
}

}  // namespace bslab
