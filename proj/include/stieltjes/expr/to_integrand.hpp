#pragma once

#include <optional>
#include <vector>

#include "stieltjes/expr/ast.hpp"
#include "stieltjes/integrand.hpp"

namespace stieltjes::expr {

/// Points of ]lo, hi[ where e may jump: piecewise guard ends and the
/// points where a sign or floor argument crosses 0 or an integer. Exact for
/// arguments affine in x; otherwise found by sampling 2048 points and
/// bisecting down to adjacent doubles. Ascending, without duplicates.
std::vector<double> breakpoint_candidates(const Expr& e, double lo, double hi);

/// Integrand backed by e, with a declared discontinuity (value and both
/// one-sided limits) at every candidate breakpoint in ]lo, hi[ where a
/// one-sided limit differs from the value by more than 1e-12 relative.
/// Throws InvalidArgument when lo >= hi or the range is not finite.
Integrand to_integrand(ExprPtr e, double lo, double hi, std::optional<double> bound = std::nullopt);

/// Same, with discontinuities only at the given points (e.g. the jump
/// locations of F); useful on unbounded ranges.
Integrand to_integrand_at(ExprPtr e, const std::vector<double>& points, std::optional<double> bound = std::nullopt);

}  // namespace stieltjes::expr
