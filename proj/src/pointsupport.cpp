#include "bslab/pointsupport.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "bslab/error.hpp"
#include "bslab/kernels.hpp"
#include "bslab/parallel.hpp"

namespace bslab {

FiniteMetric FiniteMetric::from_points(std::size_t dim, std::vector<double> coords) {
  detail::require(dim > 0, "point cloud: dimension must be positive");
  detail::require(coords.size() % dim == 0, "point cloud: coordinate count is not a multiple of dim");
  for (double x : coords) detail::require(std::isfinite(x), "point cloud: non-finite coordinate");
  FiniteMetric m;
  m.dim_ = dim;
  m.n_ = coords.size() / dim;
  m.coords_ = std::move(coords);
  m.soa_.resize(m.coords_.size());
  for (std::size_t i = 0; i < m.n_; ++i) {
    for (std::size_t k = 0; k < dim; ++k) m.soa_[k * m.n_ + i] = m.coords_[i * dim + k];
  }
  return m;
}

FiniteMetric FiniteMetric::from_matrix(std::size_t n, std::vector<double> dist,
                                       std::size_t triangle_samples) {
  detail::require(dist.size() == n * n, "distance matrix: expected n*n entries");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    detail::require(dist[i * n + i] == 0.0, "distance matrix: diagonal must be zero");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist[i * n + j];
      detail::require(std::isfinite(d) && d >= 0.0, "distance matrix: entries must be finite and >= 0");
      detail::require(d == dist[j * n + i], "distance matrix: not symmetric");
      scale = std::max(scale, d);
    }
  }
  auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
    detail::require(dist[i * n + k] <= dist[i * n + j] + dist[j * n + k] + 1e-12 * scale,
                    "distance matrix: triangle inequality fails");
  };
  if (n > 0) {
    const std::uint64_t all = static_cast<std::uint64_t>(n) * n * n;
    if (all <= triangle_samples) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) check(i, j, k);
    } else {
      std::mt19937_64 rng(0x7419u);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t t = 0; t < triangle_samples; ++t) {
        const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
        check(i, j, k);
      }
    }
  }
  FiniteMetric m;
  m.n_ = n;
  m.dist_ = std::move(dist);
  return m;
}

double FiniteMetric::squared_distance(std::size_t i, std::size_t j) const {
  if (dim_ == 0) {
    const double d = dist_[i * n_ + j];
    return d * d;
  }
  double s = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double diff = coords_[j * dim_ + k] - coords_[i * dim_ + k];
    s += diff * diff;
  }
  return s;
}

double FiniteMetric::distance(std::size_t i, std::size_t j) const {
  return dim_ == 0 ? dist_[i * n_ + j] : std::sqrt(squared_distance(i, j));
}

FiniteMetric FiniteMetric::scaled(double t) const {
  detail::require(t > 0.0 && std::isfinite(t), "scaled: factor must be positive");
  if (dim_ > 0) {
    auto coords = coords_;
    for (double& x : coords) x *= t;
    return from_points(dim_, std::move(coords));
  }
  auto dist = dist_;
  for (double& x : dist) x *= t;
  return from_matrix(n_, std::move(dist), 0);
}

namespace {

class Neighbours {
 public:
  Neighbours(const FiniteMetric& c, SearchMethod method) : c_(c) {
    const bool grid_ok = c.has_points() && c.dim() <= 3 && c.size() > 0;
    detail::require(method != SearchMethod::kGrid || grid_ok,
                    "grid search needs a point cloud of dimension <= 3");
    if (grid_ok && method != SearchMethod::kBruteForce) build_grid();
  }

  // Indices j with squared_distance(q, j) <= r2.
  void within(std::size_t q, double r2, std::vector<std::size_t>& out) const {
    out.clear();
    if (!grid_) {
      if (!c_.has_points()) {
        for (std::size_t j = 0; j < c_.size(); ++j) {
          if (c_.squared_distance(q, j) <= r2) out.push_back(j);
        }
        return;
      }
      std::vector<double> d2(c_.size());
      kernels::squared_distances(block(), c_.point(q), d2);
      for (std::size_t j = 0; j < d2.size(); ++j) {
        if (d2[j] <= r2) out.push_back(j);
      }
      return;
    }
    const double r = std::sqrt(r2) * (1.0 + 1e-12);
    std::size_t lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    for (std::size_t k = 0; k < dim_; ++k) {
      const double x = c_.point(q)[k];
      lo[k] = cell_coord(k, x - r);
      hi[k] = cell_coord(k, x + r);
    }
    for (std::size_t a = lo[0]; a <= hi[0]; ++a)
      for (std::size_t b = lo[1]; b <= hi[1]; ++b)
        for (std::size_t e = lo[2]; e <= hi[2]; ++e) {
          const std::size_t cell = (a * cells_[1] + b) * cells_[2] + e;
          for (std::size_t t = start_[cell]; t < start_[cell + 1]; ++t) {
            const std::size_t j = items_[t];
            if (c_.squared_distance(q, j) <= r2) out.push_back(j);
          }
        }
    std::sort(out.begin(), out.end());
  }

  double nearest_squared(std::size_t q) const {
    double best = std::numeric_limits<double>::infinity();
    if (grid_) {
      std::vector<std::size_t> found;
      for (double r = h_; r <= 4.0 * diameter_ + h_; r *= 2.0) {
        within(q, r * r, found);
        for (std::size_t j : found) {
          if (j != q) best = std::min(best, c_.squared_distance(q, j));
        }
        if (std::isfinite(best)) return best;
      }
    }
    if (c_.has_points()) {
      std::vector<double> d2(c_.size());
      kernels::squared_distances(block(), c_.point(q), d2);
      for (std::size_t j = 0; j < d2.size(); ++j) {
        if (j != q) best = std::min(best, d2[j]);
      }
      return best;
    }
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (j != q) best = std::min(best, c_.squared_distance(q, j));
    }
    return best;
  }

 private:
  kernels::PointBlock block() const {
    return {c_.soa().data(), c_.size(), c_.size(), c_.dim()};
  }

  std::size_t cell_coord(std::size_t k, double x) const {
    const double t = std::floor((x - lo_[k]) / h_);
    if (t <= 0.0) return 0;
    return std::min(cells_[k] - 1, static_cast<std::size_t>(t));
  }

  void build_grid() {
    dim_ = c_.dim();
    double extent_max = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (std::size_t i = 0; i < c_.size(); ++i) {
        lo = std::min(lo, c_.point(i)[k]);
        hi = std::max(hi, c_.point(i)[k]);
      }
      lo_[k] = lo;
      extent_[k] = hi - lo;
      extent_max = std::max(extent_max, hi - lo);
    }
    if (extent_max == 0.0) return;
    double sq = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) sq += extent_[k] * extent_[k];
    diameter_ = std::sqrt(sq);
    const double per_axis = std::ceil(std::pow(static_cast<double>(c_.size()) / 2.0, 1.0 / static_cast<double>(dim_)));
    h_ = extent_max / std::max(1.0, per_axis);
    std::size_t total = 1;
    for (std::size_t k = 0; k < 3; ++k) {
      cells_[k] = k < dim_ ? static_cast<std::size_t>(std::floor(extent_[k] / h_)) + 1 : 1;
      total *= cells_[k];
    }
    std::vector<std::size_t> cell_of(c_.size());
    start_.assign(total + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      std::size_t idx[3] = {0, 0, 0};
      for (std::size_t k = 0; k < dim_; ++k) idx[k] = cell_coord(k, c_.point(i)[k]);
      cell_of[i] = (idx[0] * cells_[1] + idx[1]) * cells_[2] + idx[2];
      ++start_[cell_of[i] + 1];
    }
    for (std::size_t t = 0; t < total; ++t) start_[t + 1] += start_[t];
    items_.resize(c_.size());
    auto fill = start_;
    for (std::size_t i = 0; i < c_.size(); ++i) items_[fill[cell_of[i]]++] = i;
    grid_ = true;
  }

  const FiniteMetric& c_;
  bool grid_ = false;
  std::size_t dim_ = 0;
  double lo_[3] = {0, 0, 0};
  double extent_[3] = {0, 0, 0};
  double h_ = 0.0;
  double diameter_ = 0.0;
  std::size_t cells_[3] = {1, 1, 1};
  std::vector<std::size_t> start_;
  std::vector<std::size_t> items_;
};

void check_delta(double delta) {
  detail::require(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
}

std::size_t support_number_with(const FiniteMetric& c, const Neighbours& nb, std::size_t w,
                                double delta, CenterMode mode) {
  const double rho2 = nb.nearest_squared(w);
  detail::require(rho2 > 0.0, "supported points: duplicate points in C");
  const double outer2 = rho2 / (delta * delta);
  const double inner2 = (mode == CenterMode::kNecessary ? 1.0 : 4.0) * delta * delta * rho2;

  std::vector<std::size_t> annulus, centres;
  nb.within(w, outer2, annulus);
  const double reach = std::sqrt(outer2) + std::sqrt(inner2);
  nb.within(w, reach * reach * (1.0 + 1e-9), centres);

  std::size_t best = annulus.size();
  if (c.has_points()) {
    const std::size_t m = annulus.size(), dim = c.dim();
    std::vector<double> soa(m * dim), d2(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < dim; ++k) soa[k * m + i] = c.point(annulus[i])[k];
    }
    const kernels::PointBlock block{soa.data(), m, m, dim};
    for (std::size_t centre : centres) {
      kernels::squared_distances(block, c.point(centre), d2);
      best = std::min(best, m - kernels::count_within(d2, inner2));
      if (best == 0) break;
    }
  } else {
    for (std::size_t centre : centres) {
      std::size_t removed = 0;
      for (std::size_t a : annulus) removed += c.squared_distance(centre, a) <= inner2 ? 1 : 0;
      best = std::min(best, annulus.size() - removed);
      if (best == 0) break;
    }
  }
  return best;
}

}  // namespace

double isolation_radius(const FiniteMetric& c, std::size_t w) {
  detail::require(c.size() >= 2, "isolation_radius: need at least two points");
  detail::require(w < c.size(), "isolation_radius: index out of range");
  return std::sqrt(Neighbours(c, SearchMethod::kBruteForce).nearest_squared(w));
}

std::size_t support_number(const FiniteMetric& c, std::size_t w, double delta, CenterMode mode,
                           SearchMethod method) {
  check_delta(delta);
  detail::require(c.size() >= 2, "supported points: need at least two points");
  detail::require(w < c.size(), "supported points: index out of range");
  return support_number_with(c, Neighbours(c, method), w, delta, mode);
}

bool is_supported(const FiniteMetric& c, std::size_t w, double delta, std::size_t s,
                  CenterMode mode, SearchMethod method) {
  return support_number(c, w, delta, mode, method) >= s;
}

std::vector<std::size_t> support_numbers(const FiniteMetric& c, double delta, CenterMode mode,
                                         SearchMethod method) {
  check_delta(delta);
  detail::require(c.size() >= 2, "supported points: need at least two points");
  const Neighbours nb(c, method);
  std::vector<std::size_t> out(c.size());
  parallel_for(c.size(), [&](std::size_t w) { out[w] = support_number_with(c, nb, w, delta, mode); });
  return out;
}

std::vector<std::size_t> count_supported(const FiniteMetric& c, double delta,
                                         std::span<const std::size_t> s_values, CenterMode mode,
                                         SearchMethod method) {
  for (std::size_t s : s_values) detail::require(s >= 1, "supported points: s must be >= 1");
  const auto numbers = support_numbers(c, delta, mode, method);
  std::vector<std::size_t> out;
  for (std::size_t s : s_values) {
    out.push_back(static_cast<std::size_t>(
        std::count_if(numbers.begin(), numbers.end(), [&](std::size_t x) { return x >= s; })));
  }
  return out;
}

std::size_t count_supported(const FiniteMetric& c, double delta, std::size_t s, CenterMode mode,
                            SearchMethod method) {
  const std::size_t values[] = {s};
  return count_supported(c, delta, values, mode, method).front();
}

SupportedExample two_cluster_example(double delta, std::size_t s, std::size_t dim) {
  check_delta(delta);
  detail::require(s >= 1, "two_cluster_example: s must be >= 1");
  detail::require(dim >= 1, "two_cluster_example: dimension must be >= 1");
  const double outer = 1.0 / delta;
  const double centre = 0.5 * (1.0 + outer);
  const double radius = std::min(delta / 4.0, (outer - 1.0) / 4.0);
  detail::require(centre - radius > 2.0 * delta * (1.0 + 1e-9),
                  "two_cluster_example: delta too large for two separated clusters");
  std::vector<double> coords;
  auto add = [&](double x0, double spread) {
    for (std::size_t k = 0; k < dim; ++k) {
      double x = 0.0;
      if (k == 0) x = x0;
      if (k == dim - 1) x += spread;
      coords.push_back(x);
    }
  };
  add(0.0, 0.0);
  add(1.0, 0.0);
  for (double sign : {1.0, -1.0}) {
    for (std::size_t i = 0; i < s; ++i) {
      const double offset =
          s == 1 ? 0.0 : radius * (2.0 * static_cast<double>(i) / static_cast<double>(s - 1) - 1.0);
      add(sign * centre, offset);
    }
  }
  return {FiniteMetric::from_points(dim, std::move(coords)), 0};
}

FiniteMetric uniform_cube(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> coords(n * dim);
  for (double& x : coords) x = unit(rng);
  return FiniteMetric::from_points(dim, std::move(coords));
}

namespace {

void append_number(std::string& out, double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  out.append(buf, res.ptr);
}

}  // namespace

std::string write_point_cloud(const FiniteMetric& c) {
  detail::require(c.has_points(), "write_point_cloud: metric has no coordinates");
  std::string out = std::to_string(c.dim()) + " " + std::to_string(c.size()) + "\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t k = 0; k < c.dim(); ++k) {
      if (k) out += ' ';
      append_number(out, c.point(i)[k]);
    }
    out += '\n';
  }
  return out;
}

std::string write_distance_matrix(const FiniteMetric& c) {
  std::string out = std::to_string(c.size()) + "\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (j) out += ' ';
      append_number(out, c.distance(i, j));
    }
    out += '\n';
  }
  return out;
}

FiniteMetric parse_finite_metric(std::string_view text) {
  const auto eol = text.find('\n');
  std::istringstream header{std::string(text.substr(0, eol))};
  std::vector<std::size_t> head;
  std::size_t x = 0;
  while (header >> x) head.push_back(x);
  detail::require(header.eof() && (head.size() == 1 || head.size() == 2), "metric: bad header line");
  std::istringstream body{eol == std::string_view::npos ? std::string() : std::string(text.substr(eol + 1))};
  auto read_values = [&](std::size_t count) {
    std::vector<double> values(count);
    std::string token;
    for (double& v : values) {
      detail::require(static_cast<bool>(body >> token), "metric: too few values");
      const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
      detail::require(res.ec == std::errc() && res.ptr == token.data() + token.size(), "metric: bad number");
    }
    detail::require(!(body >> token), "metric: trailing data");
    return values;
  };
  if (head.size() == 2) return FiniteMetric::from_points(head[0], read_values(head[0] * head[1]));
  const std::size_t n = head[0];
  const auto lower = read_values(n * (n - (n > 0 ? 1 : 0)) / 2);
  std::vector<double> dist(n * n, 0.0);
  std::size_t t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) dist[i * n + j] = dist[j * n + i] = lower[t++];
  }
  return FiniteMetric::from_matrix(n, std::move(dist));
}

}  // namespace bslab
