#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bslab/error.hpp"
#include "bslab/kernels.hpp"

namespace bslab::kernels {
namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

const std::size_t kLengths[] = {0, 1, 3, 4, 5, 7, 8, 15, 16, 17, 100, 1023};

TEST(Kernels, ScalarReference) {
  const std::vector<double> x{1, 2, 3}, y{4, 5, 6};
  EXPECT_EQ(scalar::dot(x.data(), y.data(), 3), 32.0);
  std::vector<double> z = y;
  scalar::axpy(2.0, x.data(), z.data(), 3);
  EXPECT_EQ(z, (std::vector<double>{6, 9, 12}));
  z = y;
  scalar::xpay(x.data(), 0.5, z.data(), 3);
  EXPECT_EQ(z, (std::vector<double>{3, 4.5, 6}));
  const std::vector<double> soa{0, 3, 1, 0, 4, 1};  // points (0,0) (3,4) (1,1)
  const PointBlock block{soa.data(), 3, 3, 2};
  const double q[] = {0, 0};
  double out[3];
  scalar::squared_distances(block, q, out);
  EXPECT_EQ(out[0], 0.0);
  EXPECT_EQ(out[1], 25.0);
  EXPECT_EQ(out[2], 2.0);
  EXPECT_EQ(scalar::count_within(out, 3, 2.0), 2u);
}

#if defined(BSLAB_HAVE_AVX2)
TEST(Kernels, Avx2MatchesScalar) {
  if (!isa_available(Isa::kAvx2)) GTEST_SKIP() << "no AVX2 on this CPU";
  for (std::size_t n : kLengths) {
    const auto x = random_vector(n, n), y = random_vector(n, n + 1000);
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) abs_sum += std::abs(x[i] * y[i]);
    EXPECT_NEAR(avx2::dot(x.data(), y.data(), n), scalar::dot(x.data(), y.data(), n),
                4.0 * n * 1.2e-16 * abs_sum);
    auto ys = y, yv = y;
    scalar::axpy(0.37, x.data(), ys.data(), n);
    avx2::axpy(0.37, x.data(), yv.data(), n);
    EXPECT_EQ(ys, yv);
    ys = y;
    yv = y;
    scalar::xpay(x.data(), -1.3, ys.data(), n);
    avx2::xpay(x.data(), -1.3, yv.data(), n);
    EXPECT_EQ(ys, yv);
    for (std::size_t dim : {1, 2, 3, 5}) {
      const auto coords = random_vector(n * dim + 1, 7 * n + dim);
      const PointBlock block{coords.data(), n, n, dim};
      const auto query = random_vector(dim, 99);
      std::vector<double> a(n), b(n);
      scalar::squared_distances(block, query.data(), a.data());
      avx2::squared_distances(block, query.data(), b.data());
      EXPECT_EQ(a, b);
      for (double r2 : {0.0, 0.5, 1.5, 10.0}) {
        EXPECT_EQ(scalar::count_within(a.data(), n, r2), avx2::count_within(a.data(), n, r2));
      }
    }
  }
}
#endif

TEST(Kernels, DispatchFollowsActiveIsa) {
  const Isa before = active_isa();
  EXPECT_TRUE(isa_available(Isa::kScalar));
  set_active_isa(Isa::kScalar);
  EXPECT_EQ(active_isa(), Isa::kScalar);
  EXPECT_EQ(isa_name(Isa::kScalar), "scalar");
  const auto x = random_vector(33, 1), y = random_vector(33, 2);
  EXPECT_EQ(dot(x, y), scalar::dot(x.data(), y.data(), 33));
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (!isa_available(isa)) EXPECT_THROW(set_active_isa(isa), PreconditionError);
  }
  set_active_isa(before);
}

}  // namespace
}  // namespace bslab::kernels
