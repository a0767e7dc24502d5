#include <gtest/gtest.h>

#include "bslab/config.hpp"
#include "bslab/error.hpp"
#include "bslab/experiments.hpp"
#include "bslab/families.hpp"

namespace bslab {
namespace {

TEST(Config, NamesRoundTrip) {
  for (ExperimentId id : {ExperimentId::kE1, ExperimentId::kE2, ExperimentId::kE3, ExperimentId::kE4,
                          ExperimentId::kE5}) {
    EXPECT_EQ(parse_experiment_id(experiment_name(id)), id);
  }
  EXPECT_EQ(parse_experiment_id("E3"), ExperimentId::kE3);
  EXPECT_FALSE(parse_experiment_id("e6").has_value());
}

TEST(Config, MinimalConfigTakesDefaults) {
  const auto c = parse_config(R"({"experiment": "e3"})");
  const auto d = default_config(ExperimentId::kE3);
  EXPECT_EQ(write_config(c), write_config(d));
  EXPECT_EQ(c.sizes, (std::vector<std::size_t>{100, 1000, 10000}));
  EXPECT_EQ(c.s_values.front(), 2u);
  EXPECT_EQ(c.s_values.back(), 128u);
}

TEST(Config, OverridesApply) {
  const auto c = parse_config(
      R"({"experiment": "e2", "seed": 9, "radii": [2, 4], "families": [{"kind": "path", "size": 10}],
          "thresholds": {"tree_profile_floor": 1.25}})");
  EXPECT_EQ(c.id, ExperimentId::kE2);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.radii, (std::vector<std::uint32_t>{2, 4}));
  ASSERT_EQ(c.families.size(), 1u);
  EXPECT_EQ(c.families[0].kind, FamilyKind::kPath);
  EXPECT_EQ(c.thresholds.tree_profile_floor, 1.25);
  EXPECT_EQ(c.thresholds.profile_r_squared, Thresholds{}.profile_r_squared);
}

TEST(Config, RoundTrip) {
  for (ExperimentId id : {ExperimentId::kE1, ExperimentId::kE2, ExperimentId::kE3, ExperimentId::kE4,
                          ExperimentId::kE5}) {
    const std::string text = write_config(default_config(id));
    EXPECT_EQ(write_config(parse_config(text)), text);
  }
}

TEST(Config, RejectsTyposAndBadValues) {
  EXPECT_THROW(parse_config(R"({"experiment": "e4", "instance": 5})"), PreconditionError);
  EXPECT_THROW(parse_config(R"({"seed": 5})"), PreconditionError);
  EXPECT_THROW(parse_config(R"({"experiment": "e9"})"), PreconditionError);
  EXPECT_THROW(parse_config(R"({"experiment": "e1", "seed": "x"})"), PreconditionError);
  EXPECT_THROW(parse_config(R"({"experiment": "e1", "families": [{"kind": "path", "size": 4, "sise": 1}]})"),
               PreconditionError);
  EXPECT_THROW(parse_config(R"({"experiment": "e1", "families": [{"kind": "blob", "size": 4}]})"),
               PreconditionError);
  EXPECT_THROW(parse_config(R"({"experiment": "e1", "thresholds": {"floor": 1}})"), PreconditionError);
  EXPECT_THROW(parse_config("[1, 2"), PreconditionError);
}

TEST(Tables, Formatting) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(3.0), "3");
  Table t{"demo", {"a", "b"}, {{"1", "x"}, {"2.5", "y"}}};
  EXPECT_EQ(to_csv(t), "a,b\n1,x\n2.5,y\n");
  const std::string js = to_json({t});
  EXPECT_NE(js.find("\"demo\""), std::string::npos);
  EXPECT_NE(js.find("2.5"), std::string::npos);
  EXPECT_EQ(js.find("\"2.5\""), std::string::npos);
}

TEST(Experiments, BinaryTreeRecursion) {
  // r = 2: four forced unit edges. r = 3: four copies of 1 in series with 2 parallel edges.
  EXPECT_DOUBLE_EQ(binary_tree_capacity(2), 4.0);
  EXPECT_DOUBLE_EQ(binary_tree_capacity(3), 8.0 / 3.0);
}

TEST(Experiments, InstanceSeedsDiffer) {
  ExperimentConfig cfg;
  cfg.seed = 1;
  EXPECT_NE(instance_seed(cfg, 1), instance_seed(cfg, 2));
  ExperimentConfig other = cfg;
  other.seed = 2;
  EXPECT_NE(instance_seed(cfg, 1), instance_seed(other, 1));
  EXPECT_EQ(instance_seed(cfg, 1), instance_seed(cfg, 1));
}

}  // namespace
}  // namespace bslab
