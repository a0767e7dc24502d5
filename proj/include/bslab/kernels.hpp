#pragma once

// Dense inner loops shared by the solvers: vector arithmetic for CG/Lanczos
// and distance sweeps over point clouds. Each kernel has a scalar reference
// implementation and, where the target supports it, an AVX2 or NEON variant.
// The variant is picked once at startup from CPUID; set BSLAB_SIMD=scalar in
// the environment to pin the reference path.
//
// Elementwise kernels (axpy, xpay, squared_distances, count_within) are
// bit-identical across variants. Reductions (dot) differ only by summation
// order.

#include <cstddef>
#include <span>
#include <string_view>

namespace bslab::kernels {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
// Switch the process-wide variant. Throws PreconditionError if unavailable.
void set_active_isa(Isa isa);

// Point coordinates in structure-of-arrays layout: coordinate k of point i is
// coords[k * stride + i].
struct PointBlock {
  const double* coords = nullptr;
  std::size_t count = 0;
  std::size_t stride = 0;
  std::size_t dim = 0;
};

double dot(std::span<const double> x, std::span<const double> y);
// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
// y = x + a * y
void xpay(std::span<const double> x, double a, std::span<double> y);
// out[i] = |points_i - query|^2, accumulated dimension by dimension.
void squared_distances(const PointBlock& points, std::span<const double> query,
                       std::span<double> out);
// #{i : d2[i] <= radius2}
std::size_t count_within(std::span<const double> d2, double radius2);

// Fixed-variant entry points, used by the equivalence tests and the
// dispatcher. Calling a variant the CPU lacks is undefined behaviour; check
// isa_available() first.
#define BSLAB_KERNEL_DECLS                                                     \
  double dot(const double* x, const double* y, std::size_t n);                 \
  void axpy(double a, const double* x, double* y, std::size_t n);              \
  void xpay(const double* x, double a, double* y, std::size_t n);              \
  void squared_distances(const PointBlock& points, const double* query,        \
                         double* out);                                         \
  std::size_t count_within(const double* d2, std::size_t n, double radius2);

namespace scalar { BSLAB_KERNEL_DECLS }
#if defined(BSLAB_HAVE_AVX2)
namespace avx2 { BSLAB_KERNEL_DECLS }
#endif
#if defined(BSLAB_HAVE_NEON)
namespace neon { BSLAB_KERNEL_DECLS }
#endif

#undef BSLAB_KERNEL_DECLS

}  // namespace bslab::kernels
