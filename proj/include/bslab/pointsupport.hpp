#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bslab {

// Finite metric space given either by points in R^d (Euclidean distance) or
// by an explicit distance matrix.
class FiniteMetric {
 public:
  FiniteMetric() = default;

  // coords holds n rows of `dim` values.
  static FiniteMetric from_points(std::size_t dim, std::vector<double> coords);
  // Full n x n matrix, row-major. Checks symmetry, zero diagonal and
  // non-negativity; the triangle inequality is spot-checked on up to
  // `triangle_samples` seeded triples.
  static FiniteMetric from_matrix(std::size_t n, std::vector<double> dist,
                                  std::size_t triangle_samples = 10'000);

  std::size_t size() const { return n_; }
  bool has_points() const { return dim_ > 0; }
  std::size_t dim() const { return dim_; }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  double distance(std::size_t i, std::size_t j) const;
  // Points mode: squared distance summed coordinate by coordinate, the same
  // order the distance kernels use. Matrix mode: d(i, j)^2.
  double squared_distance(std::size_t i, std::size_t j) const;

  // Every distance multiplied by t > 0.
  FiniteMetric scaled(double t) const;

  // Coordinates in structure-of-arrays layout (points mode only).
  std::span<const double> soa() const { return soa_; }

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<double> soa_;
  std::vector<double> dist_;
};

// min over z != w of d(w, z).
double isolation_radius(const FiniteMetric& c, std::size_t w);

// Ball centres are restricted to points of C. With radius delta*rho a false
// answer proves w is not supported; with radius 2*delta*rho a true answer
// proves it is. Balls are closed.
enum class CenterMode { kNecessary, kSufficient };

// Neighbour queries: brute force over all points, or a uniform grid (points
// mode with dim <= 3). kAuto picks the grid when available.
enum class SearchMethod { kAuto, kBruteForce, kGrid };

// min over centres c of |C n B(w, rho/delta) \ B(c, r_c)|. w is
// (delta, s)-supported in the chosen mode iff this is >= s.
std::size_t support_number(const FiniteMetric& c, std::size_t w, double delta, CenterMode mode,
                           SearchMethod method = SearchMethod::kAuto);
bool is_supported(const FiniteMetric& c, std::size_t w, double delta, std::size_t s,
                  CenterMode mode, SearchMethod method = SearchMethod::kAuto);

// Support numbers of every point; count_supported(s) = #{w : number >= s}.
std::vector<std::size_t> support_numbers(const FiniteMetric& c, double delta, CenterMode mode,
                                         SearchMethod method = SearchMethod::kAuto);
std::size_t count_supported(const FiniteMetric& c, double delta, std::size_t s, CenterMode mode,
                            SearchMethod method = SearchMethod::kAuto);
std::vector<std::size_t> count_supported(const FiniteMetric& c, double delta,
                                         std::span<const std::size_t> s_values, CenterMode mode,
                                         SearchMethod method = SearchMethod::kAuto);

struct SupportedExample {
  FiniteMetric metric;
  std::size_t w = 0;
};

// w at the origin with its nearest neighbour at distance 1 on axis 0, plus
// two clusters of s points centred at +-a on axis 0, a = (1 + 1/delta) / 2.
// Cluster radius min(delta/4, (1/delta - 1)/4). Throws PreconditionError
// when the clusters cannot be kept more than 4*delta apart inside the
// annulus 1 <= |x| <= 1/delta (delta above roughly 0.7).
SupportedExample two_cluster_example(double delta, std::size_t s, std::size_t dim);

// n points uniform in [0, 1]^dim.
FiniteMetric uniform_cube(std::size_t n, std::size_t dim, std::uint64_t seed);

// "d n" then n coordinate lines, or "n" then the strict lower triangle, row
// i holding d(i, 0) .. d(i, i-1).
std::string write_point_cloud(const FiniteMetric& c);
std::string write_distance_matrix(const FiniteMetric& c);
// Detects the format from the header line.
FiniteMetric parse_finite_metric(std::string_view text);

}  // namespace bslab
