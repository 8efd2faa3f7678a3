#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stieltjes/distribution.hpp"
#include "stieltjes/extended_real.hpp"
#include "stieltjes/integrand.hpp"
#include "stieltjes/results.hpp"

namespace stieltjes {

inline constexpr double kDefaultTruncationTol = 1e-12;
inline constexpr double kDefaultQuadTol = 1e-9;

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// Weighted sum of Dirac measures at the jumps of a right-continuous,
/// non-decreasing step function.
class DiscreteMeasure {
 public:
  /// Materialized atoms; generated tails are reached through atoms_in().
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  /// Total mass; +inf for divergent families, nullopt when it cannot be
  /// certified from the available tail bounds.
  const std::optional<ExtendedReal>& total_mass() const noexcept { return total_; }

  std::vector<Atom> atoms_in(double a, double b) const;
  /// Measure of the half-open interval ]a, b].
  double measure(double a, double b) const;

 private:
  friend DiscreteMeasure discrete_measure(const StepDF& F, double truncation_tol);
  explicit DiscreteMeasure(StepDF F) : df_(std::move(F)) {}

  StepDF df_;
  std::vector<Atom> atoms_;
  std::optional<ExtendedReal> total_;
};

/// Throws PreconditionError for signed F, ConventionError naming the first
/// jump that is not right-continuous, and PreconditionError when a
/// whole-line F without left tail does not start from 0.
DiscreteMeasure discrete_measure(const StepDF& F, double truncation_tol = kDefaultTruncationTol);

struct LsOptions {
  /// Generated tails stop once (remaining mass bound) * (integrand bound)
  /// drops below this.
  double truncation_tol = kDefaultTruncationTol;
  /// Terms visited per tail before giving up on certification.
  std::size_t max_tail_terms = 1000;
  /// A part (f+ or f-) whose partial sums still grow by at least this much
  /// over the second half of the visited terms is judged divergent.
  double divergence_increment = 1.0;
  /// Terms summed per kernel call on a tail; the truncation test runs after each batch.
  std::size_t batch = 32;
};

/// Sum of p_h f(x_h) over every atom, split into the integrals of f+ and f-
/// so that existence follows the usual dichotomy: finite when both parts
/// are finite, +/-inf when exactly one diverges, undefined when both do.
///
/// Without a declared integrand bound the largest |f| over the latest batch
/// stands in for it and the result is flagged as estimated.
IntegralResult ls_integral_step(const Integrand& f, const StepDF& F, const LsOptions& options);
IntegralResult ls_integral_step(const Integrand& f, const StepDF& F,
                                double truncation_tol = kDefaultTruncationTol);

/// Atom sum plus the integral of f against each continuous segment.
IntegralResult ls_integral_mixed(const Integrand& f, const MixedDF& F, double quad_tol = kDefaultQuadTol,
                                 double truncation_tol = kDefaultTruncationTol);

IntegralResult ls_integral(const Integrand& f, const Distribution& F, const LsOptions& options = {},
                           double quad_tol = kDefaultQuadTol);

}  // namespace stieltjes
