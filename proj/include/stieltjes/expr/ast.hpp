#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stieltjes::expr {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class BinaryOp { add, sub, mul, div, pow };
enum class Func { sin, cos, exp, log, abs, sign, floor, sqrt };

struct Number {
  double value = 0.0;
};

struct Variable {};

/// Negation.
struct Unary {
  ExprPtr operand;
};

struct Binary {
  BinaryOp op = BinaryOp::add;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct Call {
  Func fn = Func::sin;
  ExprPtr arg;
};

/// Set of x admitted by a guard: a half-line, a bounded interval, or a
/// single point. An absent end is infinite.
struct GuardInterval {
  std::optional<double> lo;
  bool lo_closed = false;
  std::optional<double> hi;
  bool hi_closed = false;

  bool contains(double x) const noexcept;
  bool is_point() const noexcept { return lo && hi && *lo == *hi; }
  /// Contains every point of ]x, x + e[ (side = +1) or ]x - e, x[ (side = -1) for small e.
  bool contains_side(double x, int side) const noexcept;

  friend bool operator==(const GuardInterval&, const GuardInterval&) = default;
};

struct Piece {
  GuardInterval guard;
  ExprPtr body;
};

/// Pieces with pairwise-disjoint guards; `otherwise` (may be null) covers
/// the rest of the line.
struct Piecewise {
  std::vector<Piece> pieces;
  ExprPtr otherwise;
};

struct Expr {
  std::variant<Number, Variable, Unary, Binary, Call, Piecewise> node;
};

ExprPtr make_number(double v);
ExprPtr make_variable();
ExprPtr make_negate(ExprPtr operand);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_call(Func fn, ExprPtr arg);
/// Throws InvalidArgument when guards overlap or, without `otherwise`, fail
/// to cover the real line.
ExprPtr make_piecewise(std::vector<Piece> pieces, ExprPtr otherwise);

/// Checks the piecewise guard rules; returns an explanation on failure.
std::optional<std::string> check_guards(const std::vector<Piece>& pieces, bool has_otherwise);

std::string_view func_name(Func f) noexcept;
std::optional<Func> func_from_name(std::string_view name) noexcept;
char op_symbol(BinaryOp op) noexcept;

/// Structural equality; literals compare by value.
bool equal(const Expr& a, const Expr& b);

/// Fully parenthesized source text that parses back to an equal tree.
std::string print(const Expr& e);
std::string print(const GuardInterval& g);

}  // namespace stieltjes::expr
