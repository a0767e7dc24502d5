#include <arm_neon.h>

#include "bslab/kernels.hpp"

namespace bslab::kernels::neon {

double dot(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void xpay(const double* x, double a, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(x + i), vmulq_f64(va, vld1q_f64(y + i))));
  }
  for (; i < n; ++i) y[i] = x[i] + a * y[i];
}

void squared_distances(const PointBlock& points, const double* query, double* out) {
  const std::size_t n = points.count;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < points.dim; ++k) {
      const float64x2_t diff =
          vsubq_f64(vld1q_f64(points.coords + k * points.stride + i), vdupq_n_f64(query[k]));
      acc = vaddq_f64(acc, vmulq_f64(diff, diff));
    }
    vst1q_f64(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < points.dim; ++k) {
      const double diff = points.coords[k * points.stride + i] - query[k];
      acc += diff * diff;
    }
    out[i] = acc;
  }
}

std::size_t count_within(const double* d2, std::size_t n, double radius2) {
  const float64x2_t r = vdupq_n_f64(radius2);
  uint64x2_t hits = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // Lane mask is all-ones on a hit; shifting right by 63 turns it into 1.
    hits = vaddq_u64(hits, vshrq_n_u64(vcleq_f64(vld1q_f64(d2 + i), r), 63));
  }
  std::size_t count = vgetq_lane_u64(hits, 0) + vgetq_lane_u64(hits, 1);
  for (; i < n; ++i) count += d2[i] <= radius2 ? 1 : 0;
  return count;
}

}  // namespace bslab::kernels::neon
