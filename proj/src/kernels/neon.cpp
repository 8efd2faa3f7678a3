#include <arm_neon.h>

#include <algorithm>

#include "stieltjes/kernels.hpp"

namespace stieltjes::kernels::neon {

double increment_dot(std::span<const double> weights, std::span<const double> levels) {
  const std::size_t n = weights.size();
  const double* w = weights.data();
  const double* l = levels.data();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const float64x2_t d0 = vsubq_f64(vld1q_f64(l + j + 1), vld1q_f64(l + j));
    const float64x2_t d1 = vsubq_f64(vld1q_f64(l + j + 3), vld1q_f64(l + j + 2));
    // Separate multiply and add: no fused rounding, matching the scalar path.
    acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(w + j), d0));
    acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(w + j + 2), d1));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; j < n; ++j) sum += w[j] * (l[j + 1] - l[j]);
  return sum;
}

PartSums split_parts(std::span<const double> masses, std::span<const double> values) {
  const std::size_t n = masses.size();
  const double* m = masses.data();
  const double* v = values.data();
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t pos = vdupq_n_f64(0.0);
  float64x2_t neg = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t mv = vld1q_f64(m + j);
    const float64x2_t vv = vld1q_f64(v + j);
    // Select rather than vmaxq so -0.0 passes through as in std::max(v, 0.0).
    const float64x2_t p = vbslq_f64(vcltq_f64(vv, zero), zero, vv);
    const float64x2_t nv = vnegq_f64(vv);
    const float64x2_t q = vbslq_f64(vcltq_f64(nv, zero), zero, nv);
    pos = vaddq_f64(pos, vmulq_f64(mv, p));
    neg = vaddq_f64(neg, vmulq_f64(mv, q));
  }
  PartSums s{vaddvq_f64(pos), vaddvq_f64(neg)};
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
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    acc = vmaxq_f64(acc, vsubq_f64(vld1q_f64(g + j + 1), vld1q_f64(g + j)));
  }
  double m = vmaxvq_f64(acc);
  for (; j < n; ++j) m = std::max(m, g[j + 1] - g[j]);
  return m;
}

void midpoints(std::span<const double> grid, std::span<double> out) {
  if (grid.size() < 2) return;
  const std::size_t n = grid.size() - 1;
  const double* g = grid.data();
  double* o = out.data();
  const float64x2_t half = vdupq_n_f64(0.5);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    vst1q_f64(o + j, vmulq_f64(half, vaddq_f64(vld1q_f64(g + j), vld1q_f64(g + j + 1))));
  }
  for (; j < n; ++j) o[j] = 0.5 * (g[j] + g[j + 1]);
}

void fractional_tags(std::span<const double> grid, double theta, std::span<double> out) {
  if (grid.size() < 2) return;
  const std::size_t n = grid.size() - 1;
  const double* g = grid.data();
  double* o = out.data();
  const float64x2_t t = vdupq_n_f64(theta);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t a = vld1q_f64(g + j);
    const float64x2_t b = vld1q_f64(g + j + 1);
    vst1q_f64(o + j, vaddq_f64(a, vmulq_f64(t, vsubq_f64(b, a))));
  }
  for (; j < n; ++j) o[j] = g[j] + theta * (g[j + 1] - g[j]);
}

}  // namespace stieltjes::kernels::neon
