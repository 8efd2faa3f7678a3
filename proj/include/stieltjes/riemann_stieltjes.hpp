#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "stieltjes/distribution.hpp"
#include "stieltjes/integrand.hpp"
#include "stieltjes/partition.hpp"
#include "stieltjes/results.hpp"

namespace stieltjes {

inline constexpr std::uint64_t kDefaultSeed = 12345;
/// Refinement levels tried by adaptive_rs_continuous before giving up.
inline constexpr int kDefaultQuadLevels = 22;
/// adaptive_rs_continuous never accepts a level below this one, so that two
/// coarse sums agreeing by accident cannot end the refinement.
inline constexpr int kMinQuadLevel = 4;
inline constexpr int kDefaultWitnessLevels = 16;

enum class TagKind { left, right, midpoint, random_uniform, at_jump, left_of_jump, right_of_jump };

inline constexpr std::array<TagKind, 7> kAllTagKinds = {
    TagKind::left,   TagKind::right,       TagKind::midpoint,     TagKind::random_uniform,
    TagKind::at_jump, TagKind::left_of_jump, TagKind::right_of_jump};

/// Rule for placing one tag in each closed cell.
///
/// The jump-aware kinds look at the jumps of F that lie in or on the border
/// of a cell. AtJump puts the tag on the jump. LeftOfJump/RightOfJump put it
/// strictly on the named side, at distance min(half the room, width * 2^-20);
/// when the jump sits on the opposite edge of the cell, the tag goes to that
/// edge, the admissible point nearest the requested side. Cells without a
/// jump use the midpoint.
struct TagPolicy {
  TagKind kind = TagKind::midpoint;
  std::uint64_t seed = kDefaultSeed;

  static TagPolicy random(std::uint64_t seed = kDefaultSeed) { return {TagKind::random_uniform, seed}; }
};

std::string_view to_string(TagKind k) noexcept;
/// Accepts the names printed by to_string ("left", "at_jump", ...), plus
/// hyphenated and CamelCase spellings.
std::optional<TagKind> parse_tag_kind(std::string_view s);

/// One tag per cell of `grid`. `jumps` must be ascending; `rng` is consumed
/// only by random_uniform.
std::vector<double> make_tags(std::span<const double> grid, TagKind kind, std::span<const double> jumps,
                              std::mt19937_64& rng);

/// sum_j f(c_j) (F(y_{j+1}) - F(y_j)).
double rs_sum(const Integrand& f, const StepDF& F, const Partition& p);
double rs_sum(const Integrand& f, const MixedDF& F, const Partition& p);
double rs_sum(const Integrand& f, const Distribution& F, const Partition& p);

enum class RefinementStrategy { uniform_dyadic, random_nested };

/// Grids with 2^n cells for n = 1..n_max. random_nested splits every cell
/// of the previous grid at a random fraction in [1/2 - e_n, 1/2 + e_n] with
/// e_n = 2^-(n+1), so mesh(n) <= (b - a) 2^-n prod(1 + 2 e_k) < e (b - a) 2^-n.
std::vector<std::vector<double>> refinement_sequence(double a, double b, RefinementStrategy strategy, int n_max,
                                                     std::uint64_t seed = kDefaultSeed);

/// Boundary terms {F(a+0) - F(a)} f(a) + {F(b) - F(b-0)} f(b) plus
/// p_h f(x_h) over the jumps strictly inside ]a, b[. Signed masses are fine.
/// Throws NotIntegrableError, carrying a witness, when f is declared
/// discontinuous at an interior jump.
IntegralResult rs_integral_step_closed_form(const Integrand& f, const StepDF& F, double a, double b);

/// As above plus the integral of f against each continuous segment over
/// the part of its gap inside [a, b].
IntegralResult rs_integral_mixed_closed_form(const Integrand& f, const MixedDF& F, double a, double b,
                                             double quad_tol = 1e-9, int quad_levels = kDefaultQuadLevels);

IntegralResult rs_integral_closed_form(const Integrand& f, const Distribution& F, double a, double b,
                                       double quad_tol = 1e-9, int quad_levels = kDefaultQuadLevels);

struct ConvergeOptions {
  RefinementStrategy strategy = RefinementStrategy::uniform_dyadic;
  /// Stop as soon as the verdict is reached; off keeps every level for export.
  bool stop_early = true;
};

/// RS sums along the refinement sequence. Converged when the last three
/// sums lie within tol of each other, counting only levels at which no cell
/// holds two jumps of F.
ConvergenceTrace rs_converge(const Integrand& f, const Distribution& F, double a, double b, const TagPolicy& policy,
                             double tol, int n_max, const ConvergeOptions& options = {});
ConvergenceTrace rs_converge(const Integrand& f, const StepDF& F, double a, double b, const TagPolicy& policy,
                             double tol, int n_max, const ConvergeOptions& options = {});

/// Limits of RS sums at a jump x of F where f is declared discontinuous.
///
/// Sums are taken against the single jump at x (levels F(x-0), F(x),
/// F(x+0)); the rest of F contributes the same amount to every recipe. Grids
/// for the on-grid case put x on a grid point at every level (2^(n-1)
/// uniform cells on each side); grids for the inside-cell case keep x at
/// fraction sqrt(2) - 1 of a cell of width (b - a) 2^-n.
///
/// Throws NoWitnessError when f has no declared discontinuity at x and
/// InvalidArgument when F has no jump at x inside ]a, b[.
WitnessReport divergence_witness(const Integrand& f, const StepDF& F, double x, double a, double b, double tol,
                                 int n_max = kDefaultWitnessLevels);
WitnessReport divergence_witness(const Integrand& f, const Distribution& F, double x, double a, double b, double tol,
                                 int n_max = kDefaultWitnessLevels);

/// Midpoint RS sums of f against the continuous F_segment on 2^n uniform
/// cells of [u, v], n = 0, 1, ..., until two successive sums differ by
/// less than tol (at level kMinQuadLevel or later). Throws QuadratureError
/// with the trace when n_max is reached.
double adaptive_rs_continuous(const Integrand& f, const std::function<double(double)>& F_segment, double u,
                              double v, double tol, int n_max = kDefaultQuadLevels);

}  // namespace stieltjes
