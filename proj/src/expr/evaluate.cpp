#include "stieltjes/expr/evaluate.hpp"

#include <cmath>
#include <string>

#include "stieltjes/errors.hpp"
#include "stieltjes/extended_real.hpp"

namespace stieltjes::expr {

namespace {

double checked(double v, const char* what, double x) {
  if (!std::isfinite(v)) throw EvaluationError(std::string(what) + " is not finite at x = " + format_double(x));
  return v;
}

double apply(Func f, double a, double x) {
  switch (f) {
    case Func::sin:
      return std::sin(a);
    case Func::cos:
      return std::cos(a);
    case Func::exp:
      return checked(std::exp(a), "exp", x);
    case Func::log:
      if (!(a > 0.0)) throw EvaluationError("log of a non-positive number at x = " + format_double(x));
      return std::log(a);
    case Func::abs:
      return std::fabs(a);
    case Func::sign:
      return static_cast<double>((a > 0.0) - (a < 0.0));
    case Func::floor:
      return std::floor(a);
    case Func::sqrt:
      if (a < 0.0) throw EvaluationError("sqrt of a negative number at x = " + format_double(x));
      return std::sqrt(a);
  }
  return 0.0;
}

double combine(BinaryOp op, double a, double b, double x) {
  switch (op) {
    case BinaryOp::add:
      return checked(a + b, "sum", x);
    case BinaryOp::sub:
      return checked(a - b, "difference", x);
    case BinaryOp::mul:
      return checked(a * b, "product", x);
    case BinaryOp::div:
      if (b == 0.0) throw EvaluationError("division by zero at x = " + format_double(x));
      return checked(a / b, "quotient", x);
    case BinaryOp::pow:
      return checked(std::pow(a, b), "power", x);
  }
  return 0.0;
}

const Expr* select(const Piecewise& p, double x) {
  for (const Piece& piece : p.pieces) {
    if (piece.guard.contains(x)) return piece.body.get();
  }
  if (p.otherwise) return p.otherwise.get();
  throw EvaluationError("no piece covers x = " + format_double(x));
}

const Expr* select_side(const Piecewise& p, double x, int side) {
  for (const Piece& piece : p.pieces) {
    if (piece.guard.contains_side(x, side)) return piece.body.get();
  }
  if (p.otherwise) return p.otherwise.get();
  throw EvaluationError("no piece covers the neighbourhood of x = " + format_double(x));
}

// Neighbouring sample point used when first-order information is not enough.
double nudge(double x, int side) { return x + side * 1e-9 * std::max(1.0, std::fabs(x)); }

}  // namespace

double evaluate(const Expr& e, double x) {
  return std::visit(
      [x](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return x;
        } else if constexpr (std::is_same_v<T, Unary>) {
          return -evaluate(*n.operand, x);
        } else if constexpr (std::is_same_v<T, Binary>) {
          double a = evaluate(*n.lhs, x);
          double b = evaluate(*n.rhs, x);
          return combine(n.op, a, b, x);
        } else if constexpr (std::is_same_v<T, Call>) {
          return apply(n.fn, evaluate(*n.arg, x), x);
        } else {
          return evaluate(*select(n, x), x);
        }
      },
      e.node);
}

Jet one_sided(const Expr& e, double x, int side) {
  return std::visit(
      [&](const auto& n) -> Jet {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          return {n.value, 0.0};
        } else if constexpr (std::is_same_v<T, Variable>) {
          return {x, 1.0};
        } else if constexpr (std::is_same_v<T, Unary>) {
          Jet a = one_sided(*n.operand, x, side);
          return {-a.value, -a.slope};
        } else if constexpr (std::is_same_v<T, Binary>) {
          Jet a = one_sided(*n.lhs, x, side);
          Jet b = one_sided(*n.rhs, x, side);
          double v = combine(n.op, a.value, b.value, x);
          switch (n.op) {
            case BinaryOp::add:
              return {v, a.slope + b.slope};
            case BinaryOp::sub:
              return {v, a.slope - b.slope};
            case BinaryOp::mul:
              return {v, a.slope * b.value + a.value * b.slope};
            case BinaryOp::div:
              return {v, (a.slope * b.value - a.value * b.slope) / (b.value * b.value)};
            case BinaryOp::pow:
              if (b.slope == 0.0) {
                return {v, b.value == 0.0 ? 0.0 : b.value * std::pow(a.value, b.value - 1.0) * a.slope};
              }
              return {v, v * (b.slope * std::log(a.value) + b.value * a.slope / a.value)};
          }
          return {v, 0.0};
        } else if constexpr (std::is_same_v<T, Call>) {
          Jet a = one_sided(*n.arg, x, side);
          double v = apply(n.fn, a.value, x);
          const double moving = side * a.slope;  // > 0: the argument grows along the approach
          switch (n.fn) {
            case Func::sin:
              return {v, std::cos(a.value) * a.slope};
            case Func::cos:
              return {v, -std::sin(a.value) * a.slope};
            case Func::exp:
              return {v, v * a.slope};
            case Func::log:
              return {v, a.slope / a.value};
            case Func::sqrt:
              return {v, a.slope / (2.0 * v)};
            case Func::abs:
              if (a.value != 0.0) return {v, a.value > 0.0 ? a.slope : -a.slope};
              return {v, side * std::fabs(a.slope)};
            case Func::sign:
              if (a.value != 0.0) return {v, 0.0};
              if (moving > 0.0) return {1.0, 0.0};
              if (moving < 0.0) return {-1.0, 0.0};
              return {evaluate(e, nudge(x, side)), 0.0};
            case Func::floor:
              if (a.value != std::floor(a.value)) return {v, 0.0};
              if (moving > 0.0) return {a.value, 0.0};
              if (moving < 0.0) return {a.value - 1.0, 0.0};
              return {evaluate(e, nudge(x, side)), 0.0};
          }
          return {v, 0.0};
        } else {
          return one_sided(*select_side(n, x, side), x, side);
        }
      },
      e.node);
}

}  // namespace stieltjes::expr
