#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stieltjes/distribution.hpp"
#include "stieltjes/integrand.hpp"
#include "stieltjes/lebesgue_stieltjes.hpp"
#include "stieltjes/results.hpp"
#include "stieltjes/riemann_stieltjes.hpp"

namespace stieltjes {

/// True when F has finitely many jumps in [a, b]. False when generated
/// locations stop moving outward before leaving [a, b] (an accumulation
/// point); throws CannotCertifyError when the enumeration budget runs out.
bool locally_finite(const Distribution& F, double a, double b, std::size_t budget = kDefaultEnumerationBudget);

/// T = 1, 2, 4, ..., 2^20.
std::vector<double> default_window_schedule();

struct ImproperOptions {
  std::vector<double> window_schedule = default_window_schedule();
  /// Monotone window values beyond this magnitude are reported as +/-inf.
  double divergence_threshold = 1e6;
  /// Window ends sitting on a jump move outward by k * nudge_offset, k = 1..nudge_budget.
  double nudge_offset = 1e-3 * 1.4142135623730951;
  int nudge_budget = 10;
  double quad_tol = kDefaultQuadTol;
  int quad_levels = kDefaultQuadLevels;
};

/// Limit of the RS integral over [-T, T] as T runs through the schedule.
/// Finite when three consecutive window values agree within tol, the first
/// of them taken on a window that already holds every materialized jump.
IntegralResult improper_rs(const Integrand& f, const Distribution& F, double tol, const ImproperOptions& options = {});
IntegralResult improper_rs(const Integrand& f, const Distribution& F, double tol,
                           std::span<const double> window_schedule);

/// RS integral of f against F over its whole interval domain [lo, hi], with
/// F read as constant outside the domain: the closed form on [lo, hi] plus
/// the step F(lo) - base at lo.
IntegralResult rs_integral_extended(const Integrand& f, const Distribution& F, double quad_tol = kDefaultQuadTol,
                                    int quad_levels = kDefaultQuadLevels);

struct ComparisonReport {
  enum class Verdict { agree, disagree, not_comparable };

  std::optional<IntegralResult> ls;
  std::optional<IntegralResult> rs;
  std::string ls_error;
  std::string rs_error;
  Verdict verdict = Verdict::not_comparable;
  /// |ls - rs| when both are finite.
  std::optional<double> max_abs_difference;
};

std::string_view to_string(ComparisonReport::Verdict v) noexcept;

/// Runs the LS closed form and the (improper) RS integral on the same
/// problem. Agree when both are finite and within tol, or both carry the
/// same infinite or undefined status. An error on either side makes the
/// pair not comparable.
ComparisonReport compare_ls_rs(const Integrand& f, const Distribution& F, double tol, const LsOptions& ls_options = {},
                               const ImproperOptions& rs_options = {});

}  // namespace stieltjes
