#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "bslab/error.hpp"
#include "bslab/pointsupport.hpp"

namespace bslab {
namespace {

// Direct quadratic evaluation of the support number: every point of C is a
// candidate centre.
std::size_t brute_support(const FiniteMetric& c, std::size_t w, double delta, CenterMode mode) {
  double rho2 = std::numeric_limits<double>::infinity();
  for (std::size_t z = 0; z < c.size(); ++z) {
    if (z != w) rho2 = std::min(rho2, c.squared_distance(w, z));
  }
  const double outer2 = rho2 / (delta * delta);
  const double factor = mode == CenterMode::kNecessary ? 1.0 : 2.0;
  const double inner2 = factor * factor * delta * delta * rho2;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t centre = 0; centre < c.size(); ++centre) {
    std::size_t left = 0;
    for (std::size_t z = 0; z < c.size(); ++z) {
      if (c.squared_distance(w, z) <= outer2 && c.squared_distance(centre, z) > inner2) ++left;
    }
    best = std::min(best, left);
  }
  return best;
}

FiniteMetric as_matrix(const FiniteMetric& c) {
  const std::size_t n = c.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = c.distance(i, j);
  return FiniteMetric::from_matrix(n, std::move(d));
}

TEST(SupportNumber, MatchesBruteForceAcrossMethods) {
  for (std::size_t dim : {1, 2, 3, 4}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const FiniteMetric c = uniform_cube(150, dim, 100 * dim + seed);
      for (double delta : {0.2, 1.0 / 3.0, 0.6}) {
        for (CenterMode mode : {CenterMode::kNecessary, CenterMode::kSufficient}) {
          const auto brute = support_numbers(c, delta, mode, SearchMethod::kBruteForce);
          const auto automatic = support_numbers(c, delta, mode, SearchMethod::kAuto);
          EXPECT_EQ(brute, automatic);
          if (dim <= 3) EXPECT_EQ(brute, support_numbers(c, delta, mode, SearchMethod::kGrid));
          for (std::size_t w = 0; w < c.size(); w += 7) {
            EXPECT_EQ(brute[w], brute_support(c, w, delta, mode)) << dim << " " << w;
          }
        }
      }
    }
  }
}

TEST(SupportNumber, MatrixModeAgreesWithPoints) {
  const FiniteMetric c = uniform_cube(80, 2, 3);
  const FiniteMetric m = as_matrix(c);
  EXPECT_FALSE(m.has_points());
  for (std::size_t w = 0; w < c.size(); ++w) {
    EXPECT_EQ(support_number(m, w, 0.3, CenterMode::kNecessary), brute_support(m, w, 0.3, CenterMode::kNecessary));
  }
  EXPECT_EQ(support_numbers(c, 0.3, CenterMode::kNecessary), support_numbers(m, 0.3, CenterMode::kNecessary));
}

TEST(SupportNumber, CollinearInteriorPoints) {
  std::vector<double> xs;
  for (int i = 0; i < 20; ++i) xs.push_back(i);
  const FiniteMetric line = FiniteMetric::from_points(1, xs);
  // Interior points see 7 points within 3; any centre removes only itself.
  for (std::size_t w = 3; w <= 16; ++w) {
    EXPECT_EQ(support_number(line, w, 1.0 / 3.0, CenterMode::kNecessary), 6u);
    EXPECT_EQ(support_number(line, w, 1.0 / 3.0, CenterMode::kSufficient), 6u);
  }
  EXPECT_EQ(support_number(line, 0, 1.0 / 3.0, CenterMode::kNecessary), 3u);
}

TEST(SupportNumber, ModesAreOrdered) {
  const FiniteMetric c = uniform_cube(300, 2, 9);
  for (double delta : {0.1, 0.25, 0.45}) {
    const auto nec = support_numbers(c, delta, CenterMode::kNecessary);
    const auto suf = support_numbers(c, delta, CenterMode::kSufficient);
    for (std::size_t w = 0; w < c.size(); ++w) EXPECT_LE(suf[w], nec[w]);
  }
}

TEST(SupportNumber, CountsMonotoneInS) {
  const FiniteMetric c = uniform_cube(500, 2, 4);
  std::vector<std::size_t> s_values;
  for (std::size_t s = 1; s <= 64; ++s) s_values.push_back(s);
  const auto counts = count_supported(c, 1.0 / 3.0, s_values, CenterMode::kNecessary);
  EXPECT_EQ(counts.front(), c.size());
  for (std::size_t i = 1; i < counts.size(); ++i) EXPECT_LE(counts[i], counts[i - 1]);
  EXPECT_EQ(counts[4], count_supported(c, 1.0 / 3.0, 5, CenterMode::kNecessary));
}

TEST(SupportNumber, MonotoneInDelta) {
  const FiniteMetric c = uniform_cube(250, 2, 14);
  for (CenterMode mode : {CenterMode::kNecessary, CenterMode::kSufficient}) {
    std::vector<std::size_t> prev = support_numbers(c, 0.8, mode);
    for (double delta : {0.6, 0.45, 1.0 / 3.0, 0.2, 0.1}) {
      const auto cur = support_numbers(c, delta, mode);
      for (std::size_t w = 0; w < c.size(); ++w) EXPECT_GE(cur[w], prev[w]);
      prev = cur;
    }
  }
}

TEST(SupportNumber, ScaleInvariant) {
  const FiniteMetric c = uniform_cube(200, 3, 6);
  const auto base = support_numbers(c, 0.3, CenterMode::kNecessary);
  for (double t : {0.25, 2.0, 1024.0}) {
    EXPECT_EQ(support_numbers(c.scaled(t), 0.3, CenterMode::kNecessary), base);
  }
  const FiniteMetric m = as_matrix(c);
  EXPECT_EQ(support_numbers(m.scaled(8.0), 0.3, CenterMode::kNecessary),
            support_numbers(m, 0.3, CenterMode::kNecessary));
}

TEST(TwoCluster, SupportedForSmallDelta) {
  for (double delta : {0.05, 0.1, 0.25, 0.5}) {
    for (std::size_t s : {1, 4, 32}) {
      for (std::size_t dim : {1, 2, 3}) {
        const auto ex = two_cluster_example(delta, s, dim);
        EXPECT_EQ(ex.metric.size(), 2 * s + 2);
        EXPECT_EQ(isolation_radius(ex.metric, ex.w), 1.0);
        const auto suf = support_number(ex.metric, ex.w, delta, CenterMode::kSufficient);
        EXPECT_GE(suf, s) << delta << " " << s << " " << dim;
        EXPECT_LE(suf, 2 * s + 2);
        EXPECT_TRUE(is_supported(ex.metric, ex.w, delta, s, CenterMode::kNecessary));
        EXPECT_EQ(suf, brute_support(ex.metric, ex.w, delta, CenterMode::kSufficient));
      }
    }
  }
}

TEST(TwoCluster, RejectsLargeDelta) {
  EXPECT_THROW(two_cluster_example(0.8, 4, 2), PreconditionError);
  EXPECT_THROW(two_cluster_example(0.3, 0, 2), PreconditionError);
}

TEST(SupportNumber, Preconditions) {
  const FiniteMetric dup = FiniteMetric::from_points(2, {0, 0, 1, 1, 0, 0});
  EXPECT_THROW(support_number(dup, 0, 0.3, CenterMode::kNecessary), PreconditionError);
  const FiniteMetric c = uniform_cube(10, 4, 1);
  EXPECT_THROW(support_number(c, 0, 1.0, CenterMode::kNecessary), PreconditionError);
  EXPECT_THROW(support_number(c, 0, 0.0, CenterMode::kNecessary), PreconditionError);
  EXPECT_THROW(support_number(c, 10, 0.5, CenterMode::kNecessary), PreconditionError);
  EXPECT_THROW(support_numbers(c, 0.5, CenterMode::kNecessary, SearchMethod::kGrid), PreconditionError);
  EXPECT_THROW(count_supported(c, 0.5, 0, CenterMode::kNecessary), PreconditionError);
  EXPECT_THROW(support_number(uniform_cube(1, 2, 1), 0, 0.5, CenterMode::kNecessary), PreconditionError);
}

TEST(Metric, MatrixValidation) {
  EXPECT_THROW(FiniteMetric::from_matrix(2, {0, 1, 2, 0}), PreconditionError);
  EXPECT_THROW(FiniteMetric::from_matrix(2, {1, 1, 1, 0}), PreconditionError);
  EXPECT_THROW(FiniteMetric::from_matrix(2, {0, -1, -1, 0}), PreconditionError);
  EXPECT_THROW(FiniteMetric::from_matrix(3, {0, 1, 5, 1, 0, 1, 5, 1, 0}), PreconditionError);
  EXPECT_THROW(FiniteMetric::from_matrix(2, {0, 1, 1}), PreconditionError);
  EXPECT_NO_THROW(FiniteMetric::from_matrix(3, {0, 1, 2, 1, 0, 1, 2, 1, 0}));
}

TEST(Metric, FormatsRoundTrip) {
  const FiniteMetric c = uniform_cube(40, 3, 77);
  const FiniteMetric back = parse_finite_metric(write_point_cloud(c));
  ASSERT_TRUE(back.has_points());
  ASSERT_EQ(back.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(back.point(i)[k], c.point(i)[k]);

  const FiniteMetric m = parse_finite_metric(write_distance_matrix(c));
  ASSERT_FALSE(m.has_points());
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) EXPECT_EQ(m.distance(i, j), c.distance(i, j));
  EXPECT_EQ(write_distance_matrix(m), write_distance_matrix(c));

  EXPECT_THROW(parse_finite_metric("2 2\n0 0\n1\n"), PreconditionError);
  EXPECT_THROW(parse_finite_metric("2 1\n0 0 7\n"), PreconditionError);
  EXPECT_THROW(parse_finite_metric("1 2 3\n"), PreconditionError);
  EXPECT_THROW(parse_finite_metric("2\nx\n"), PreconditionError);
}

}  // namespace
}  // namespace bslab
