#include <algorithm>

#include "stieltjes/kernels.hpp"

namespace stieltjes::kernels::scalar {

double increment_dot(std::span<const double> weights, std::span<const double> levels) {
  double sum = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    sum += weights[j] * (levels[j + 1] - levels[j]);
  }
  return sum;
}

PartSums split_parts(std::span<const double> masses, std::span<const double> values) {
  PartSums s;
  for (std::size_t j = 0; j < masses.size(); ++j) {
    const double v = values[j];
    s.positive += masses[j] * std::max(v, 0.0);
    s.negative += masses[j] * std::max(-v, 0.0);
  }
  return s;
}

double max_gap(std::span<const double> grid) {
  double m = 0.0;
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) m = std::max(m, grid[j + 1] - grid[j]);
  return m;
}

void midpoints(std::span<const double> grid, std::span<double> out) {
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) out[j] = 0.5 * (grid[j] + grid[j + 1]);
}

void fractional_tags(std::span<const double> grid, double theta, std::span<double> out) {
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) out[j] = grid[j] + theta * (grid[j + 1] - grid[j]);
}

}  // namespace stieltjes::kernels::scalar
