#include <immintrin.h>

#include <algorithm>

#include "stieltjes/kernels.hpp"

namespace stieltjes::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, shuf));
}

// max(0, v) with the operand order of std::max(v, 0.0): -0.0 passes through.
inline __m256d positive_part(__m256d zero, __m256d v) { return _mm256_max_pd(zero, v); }

}  // namespace

double increment_dot(std::span<const double> weights, std::span<const double> levels) {
  const std::size_t n = weights.size();
  const double* w = weights.data();
  const double* l = levels.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(l + j + 1), _mm256_loadu_pd(l + j));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(l + j + 5), _mm256_loadu_pd(l + j + 4));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(w + j), d0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(w + j + 4), d1));
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; j < n; ++j) sum += w[j] * (l[j + 1] - l[j]);
  return sum;
}

PartSums split_parts(std::span<const double> masses, std::span<const double> values) {
  const std::size_t n = masses.size();
  const double* m = masses.data();
  const double* v = values.data();
  const __m256d zero = _mm256_setzero_pd();
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d pos = _mm256_setzero_pd();
  __m256d neg = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d mv = _mm256_loadu_pd(m + j);
    const __m256d vv = _mm256_loadu_pd(v + j);
    pos = _mm256_add_pd(pos, _mm256_mul_pd(mv, positive_part(zero, vv)));
    neg = _mm256_add_pd(neg, _mm256_mul_pd(mv, positive_part(zero, _mm256_xor_pd(vv, sign))));
  }
  PartSums s{hsum(pos), hsum(neg)};
  for (; j < n; ++j) {
    s.positive += m[j] * std::max(v[j], 0.0);
    s.negative += m[j] * std::max(-v[j], 0.0);
  }
  return s;
}

double max_gap(std::span<const double> grid) {
  if (grid.size() < 2) return 0.0;
  const std::size_t n = grid.size() - 1;
  const double* g = grid.data();
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    acc = _mm256_max_pd(acc, _mm256_sub_pd(_mm256_loadu_pd(g + j + 1), _mm256_loadu_pd(g + j)));
  }
  double m = hmax(acc);
  for (; j < n; ++j) m = std::max(m, g[j + 1] - g[j]);
  return m;
}

void midpoints(std::span<const double> grid, std::span<double> out) {
  if (grid.size() < 2) return;
  const std::size_t n = grid.size() - 1;
  const double* g = grid.data();
  double* o = out.data();
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d s = _mm256_add_pd(_mm256_loadu_pd(g + j), _mm256_loadu_pd(g + j + 1));
    _mm256_storeu_pd(o + j, _mm256_mul_pd(half, s));
  }
  for (; j < n; ++j) o[j] = 0.5 * (g[j] + g[j + 1]);
}

void fractional_tags(std::span<const double> grid, double theta, std::span<double> out) {
  if (grid.size() < 2) return;
  const std::size_t n = grid.size() - 1;
  const double* g = grid.data();
  double* o = out.data();
  const __m256d t = _mm256_set1_pd(theta);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d a = _mm256_loadu_pd(g + j);
    const __m256d b = _mm256_loadu_pd(g + j + 1);
    _mm256_storeu_pd(o + j, _mm256_add_pd(a, _mm256_mul_pd(t, _mm256_sub_pd(b, a))));
  }
  for (; j < n; ++j) o[j] = g[j] + theta * (g[j + 1] - g[j]);
}

}  // namespace stieltjes::kernels::avx2
