#include <atomic>
#include <cstdlib>
#include <string>

#include "bslab/error.hpp"
#include "bslab/kernels.hpp"

namespace bslab::kernels {
namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*xpay)(const double*, double, double*, std::size_t);
  void (*squared_distances)(const PointBlock&, const double*, double*);
  std::size_t (*count_within)(const double*, std::size_t, double);
};

constexpr Table kScalarTable{scalar::dot, scalar::axpy, scalar::xpay,
                             scalar::squared_distances, scalar::count_within};
#if defined(BSLAB_HAVE_AVX2)
constexpr Table kAvx2Table{avx2::dot, avx2::axpy, avx2::xpay, avx2::squared_distances,
                           avx2::count_within};
#endif
#if defined(BSLAB_HAVE_NEON)
constexpr Table kNeonTable{neon::dot, neon::axpy, neon::xpay, neon::squared_distances,
                           neon::count_within};
#endif

const Table* table_for(Isa isa) {
  switch (isa) {
#if defined(BSLAB_HAVE_AVX2)
    case Isa::kAvx2:
      return &kAvx2Table;
#endif
#if defined(BSLAB_HAVE_NEON)
    case Isa::kNeon:
      return &kNeonTable;
#endif
    default:
      return &kScalarTable;
  }
}

Isa detect() {
  if (const char* env = std::getenv("BSLAB_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return Isa::kScalar;
  }
  if (isa_available(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_available(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

struct State {
  std::atomic<Isa> isa{detect()};
  std::atomic<const Table*> table{table_for(isa.load())};
};

State& state() {
  static State s;
  return s;
}

const Table& active() { return *state().table.load(std::memory_order_relaxed); }

void check_same_size(std::size_t a, std::size_t b) {
  detail::require(a == b, "kernel operands differ in length");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
    case Isa::kScalar:
      break;
  }
  return "scalar";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(BSLAB_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(BSLAB_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return state().isa.load(); }

void set_active_isa(Isa isa) {
  detail::require(isa_available(isa), "requested SIMD variant is not available on this CPU");
  state().isa.store(isa);
  state().table.store(table_for(isa));
}

double dot(std::span<const double> x, std::span<const double> y) {
  check_same_size(x.size(), y.size());
  return active().dot(x.data(), y.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  check_same_size(x.size(), y.size());
  active().axpy(a, x.data(), y.data(), x.size());
}

void xpay(std::span<const double> x, double a, std::span<double> y) {
  check_same_size(x.size(), y.size());
  active().xpay(x.data(), a, y.data(), x.size());
}

void squared_distances(const PointBlock& points, std::span<const double> query,
                       std::span<double> out) {
  check_same_size(query.size(), points.dim);
  check_same_size(out.size(), points.count);
  active().squared_distances(points, query.data(), out.data());
}

std::size_t count_within(std::span<const double> d2, double radius2) {
  return active().count_within(d2.data(), d2.size(), radius2);
}

}  // namespace bslab::kernels
