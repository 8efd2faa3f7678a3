#pragma once

#include "stieltjes/expr/ast.hpp"

namespace stieltjes::expr {

/// Value at x. Throws EvaluationError for log of a non-positive number,
/// sqrt of a negative one, division by zero, and non-finite results.
double evaluate(const Expr& e, double x);

/// One-sided limit and one-sided derivative of an expression.
struct Jet {
  double value = 0.0;
  double slope = 0.0;
};

/// lim e(t) as t -> x from the right (side = +1) or the left (side = -1).
/// Piecewise bodies are chosen by the side of x they cover; sign and floor
/// are resolved from the direction in which their argument moves. When
/// the argument is flat to first order the result falls back to sampling
/// at a neighbouring point.
Jet one_sided(const Expr& e, double x, int side);

}  // namespace stieltjes::expr
