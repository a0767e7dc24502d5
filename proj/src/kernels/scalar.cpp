#include "bslab/kernels.hpp"

namespace bslab::kernels::scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay(const double* x, double a, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

void squared_distances(const PointBlock& points, const double* query, double* out) {
  for (std::size_t i = 0; i < points.count; ++i) out[i] = 0.0;
  for (std::size_t k = 0; k < points.dim; ++k) {
    const double* row = points.coords + k * points.stride;
    const double q = query[k];
    for (std::size_t i = 0; i < points.count; ++i) {
      const double diff = row[i] - q;
      out[i] += diff * diff;
    }
  }
}

std::size_t count_within(const double* d2, std::size_t n, double radius2) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += d2[i] <= radius2 ? 1 : 0;
  return count;
}

}  // namespace bslab::kernels::scalar
