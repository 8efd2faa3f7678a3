#include <atomic>
#include <cstdlib>
#include <string>

#include "stieltjes/errors.hpp"
#include "stieltjes/kernels.hpp"

namespace stieltjes::kernels {

namespace {

Backend detect() noexcept {
  if (const char* forced = std::getenv("STIELTJES_KERNELS"); forced && std::string(forced) == "scalar") {
    return Backend::scalar;
  }
#if defined(STIELTJES_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Backend::avx2;
#endif
#if defined(STIELTJES_HAVE_NEON)
  return Backend::neon;
#endif
  return Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

bool backend_supported(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(STIELTJES_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
#if defined(STIELTJES_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

void force_backend(Backend b) {
  if (!backend_supported(b)) {
    throw InvalidArgument("kernel backend " + std::string(backend_name(b)) + " is not available on this host");
  }
  current().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

#if defined(STIELTJES_HAVE_AVX2)
#define STIELTJES_DISPATCH(fn, ...)                              \
  switch (active_backend()) {                                    \
    case Backend::avx2:                                          \
      return avx2::fn(__VA_ARGS__);                              \
    default:                                                     \
      return scalar::fn(__VA_ARGS__);                            \
  }
#elif defined(STIELTJES_HAVE_NEON)
#define STIELTJES_DISPATCH(fn, ...)                              \
  switch (active_backend()) {                                    \
    case Backend::neon:                                          \
      return neon::fn(__VA_ARGS__);                              \
    default:                                                     \
      return scalar::fn(__VA_ARGS__);                            \
  }
#else
#define STIELTJES_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__);
#endif

double increment_dot(std::span<const double> weights, std::span<const double> levels) {
  if (levels.size() != weights.size() + 1) throw InvalidArgument("increment_dot needs one more level than weights");
  STIELTJES_DISPATCH(increment_dot, weights, levels)
}

PartSums split_parts(std::span<const double> masses, std::span<const double> values) {
  if (masses.size() != values.size()) throw InvalidArgument("split_parts needs equally sized inputs");
  STIELTJES_DISPATCH(split_parts, masses, values)
}

double max_gap(std::span<const double> grid) { STIELTJES_DISPATCH(max_gap, grid) }

void midpoints(std::span<const double> grid, std::span<double> out) {
  if (grid.size() >= 1 && out.size() + 1 != grid.size()) throw InvalidArgument("midpoints: output size mismatch");
  STIELTJES_DISPATCH(midpoints, grid, out)
}

void fractional_tags(std::span<const double> grid, double theta, std::span<double> out) {
  if (grid.size() >= 1 && out.size() + 1 != grid.size()) {
    throw InvalidArgument("fractional_tags: output size mismatch");
  }
  STIELTJES_DISPATCH(fractional_tags, grid, theta, out)
}

#undef STIELTJES_DISPATCH

}  // namespace stieltjes::kernels
