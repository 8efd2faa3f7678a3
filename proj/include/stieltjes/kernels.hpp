#pragma once

// Data-parallel inner loops shared by the Riemann-Stieltjes and
// Lebesgue-Stieltjes engines.
//
// Every kernel has a scalar reference implementation. Vector variants are
// selected once at startup from the host's capabilities. Element-wise
// kernels (midpoints, fractional_tags, max_gap) are bit-identical across
// backends; the reductions (increment_dot, split_parts) reassociate the sum
// and agree with the scalar reference to within n * eps * sum|terms|.

#include <span>
#include <string_view>

namespace stieltjes::kernels {

enum class Backend { scalar, avx2, neon };

struct PartSums {
  double positive = 0.0;  // sum of w * max(v, 0)
  double negative = 0.0;  // sum of w * max(-v, 0)
};

/// sum_j weights[j] * (levels[j + 1] - levels[j]); levels.size() == weights.size() + 1.
double increment_dot(std::span<const double> weights, std::span<const double> levels);

/// Positive and negative parts of sum_j masses[j] * values[j], split by the sign of values[j].
PartSums split_parts(std::span<const double> masses, std::span<const double> values);

/// max_j (grid[j + 1] - grid[j]); 0 for fewer than two points.
double max_gap(std::span<const double> grid);

/// out[j] = 0.5 * (grid[j] + grid[j + 1]); out.size() == grid.size() - 1.
void midpoints(std::span<const double> grid, std::span<double> out);

/// out[j] = grid[j] + theta * (grid[j + 1] - grid[j]).
void fractional_tags(std::span<const double> grid, double theta, std::span<double> out);

Backend active_backend() noexcept;
bool backend_supported(Backend b) noexcept;
/// Pins the dispatch table; throws InvalidArgument for an unsupported backend.
void force_backend(Backend b);
std::string_view backend_name(Backend b) noexcept;

namespace scalar {
double increment_dot(std::span<const double> weights, std::span<const double> levels);
PartSums split_parts(std::span<const double> masses, std::span<const double> values);
double max_gap(std::span<const double> grid);
void midpoints(std::span<const double> grid, std::span<double> out);
void fractional_tags(std::span<const double> grid, double theta, std::span<double> out);
}  // namespace scalar

#if defined(STIELTJES_HAVE_AVX2)
namespace avx2 {
double increment_dot(std::span<const double> weights, std::span<const double> levels);
PartSums split_parts(std::span<const double> masses, std::span<const double> values);
double max_gap(std::span<const double> grid);
void midpoints(std::span<const double> grid, std::span<double> out);
void fractional_tags(std::span<const double> grid, double theta, std::span<double> out);
}  // namespace avx2
#endif

#if defined(STIELTJES_HAVE_NEON)
namespace neon {
double increment_dot(std::span<const double> weights, std::span<const double> levels);
PartSums split_parts(std::span<const double> masses, std::span<const double> values);
double max_gap(std::span<const double> grid);
void midpoints(std::span<const double> grid, std::span<double> out);
void fractional_tags(std::span<const double> grid, double theta, std::span<double> out);
}  // namespace neon
#endif

}  // namespace stieltjes::kernels
