#include "stieltjes/expr/ast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stieltjes/errors.hpp"
#include "stieltjes/extended_real.hpp"

namespace stieltjes::expr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ExprPtr wrap(decltype(Expr::node) node) { return std::make_shared<const Expr>(Expr{std::move(node)}); }

void require(const ExprPtr& e) {
  if (!e) throw InvalidArgument("expression node is missing");
}

double lo_of(const GuardInterval& g) { return g.lo ? *g.lo : -kInf; }
double hi_of(const GuardInterval& g) { return g.hi ? *g.hi : kInf; }

bool overlap(const GuardInterval& a, const GuardInterval& b) {
  const double lo = std::max(lo_of(a), lo_of(b));
  const double hi = std::min(hi_of(a), hi_of(b));
  if (lo < hi) return true;
  if (lo > hi) return false;
  return a.contains(lo) && b.contains(lo);
}

std::string cmp_text(bool closed, bool less) {
  if (less) return closed ? " <= " : " < ";
  return closed ? " >= " : " > ";
}

}  // namespace

bool GuardInterval::contains(double x) const noexcept {
  if (lo && (x < *lo || (x == *lo && !lo_closed))) return false;
  if (hi && (x > *hi || (x == *hi && !hi_closed))) return false;
  return true;
}

bool GuardInterval::contains_side(double x, int side) const noexcept {
  if (side > 0) return (!lo || *lo <= x) && (!hi || *hi > x);
  return (!lo || *lo < x) && (!hi || *hi >= x);
}

ExprPtr make_number(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("numeric literal is not finite");
  return wrap(Number{v});
}

ExprPtr make_variable() { return wrap(Variable{}); }

ExprPtr make_negate(ExprPtr operand) {
  require(operand);
  return wrap(Unary{std::move(operand)});
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  require(lhs);
  require(rhs);
  return wrap(Binary{op, std::move(lhs), std::move(rhs)});
}

ExprPtr make_call(Func fn, ExprPtr arg) {
  require(arg);
  return wrap(Call{fn, std::move(arg)});
}

ExprPtr make_piecewise(std::vector<Piece> pieces, ExprPtr otherwise) {
  for (const Piece& p : pieces) require(p.body);
  if (auto why = check_guards(pieces, otherwise != nullptr)) throw InvalidArgument(*why);
  return wrap(Piecewise{std::move(pieces), std::move(otherwise)});
}

std::optional<std::string> check_guards(const std::vector<Piece>& pieces, bool has_otherwise) {
  if (pieces.empty() && !has_otherwise) return "piecewise block has no pieces";
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const GuardInterval& g = pieces[i].guard;
    if (g.lo && g.hi && (*g.lo > *g.hi || (*g.lo == *g.hi && !(g.lo_closed && g.hi_closed)))) {
      return "guard '" + print(g) + "' admits no x";
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (overlap(pieces[j].guard, g)) {
        return "guards '" + print(pieces[j].guard) + "' and '" + print(g) + "' overlap";
      }
    }
  }
  if (has_otherwise) return std::nullopt;

  // Sweep the guards left to right; the covered prefix must never break.
  std::vector<GuardInterval> sorted;
  for (const Piece& p : pieces) sorted.push_back(p.guard);
  std::sort(sorted.begin(), sorted.end(), [](const GuardInterval& a, const GuardInterval& b) {
    if (lo_of(a) != lo_of(b)) return lo_of(a) < lo_of(b);
    return a.lo_closed && !b.lo_closed;
  });
  double reach = -kInf;
  bool reach_closed = false;  // whether `reach` itself is covered
  bool first = true;
  for (const GuardInterval& g : sorted) {
    if (first) {
      if (g.lo) return "guards leave x < " + format_double(*g.lo) + " uncovered (add an else piece)";
      first = false;
    } else if (lo_of(g) > reach || (lo_of(g) == reach && !reach_closed && !g.lo_closed)) {
      return "guards leave a gap at x = " + format_double(reach) + " (add an else piece)";
    }
    if (hi_of(g) > reach || (hi_of(g) == reach && g.hi_closed)) {
      reach = hi_of(g);
      reach_closed = g.hi_closed;
    }
  }
  if (reach != kInf) return "guards leave x > " + format_double(reach) + " uncovered (add an else piece)";
  return std::nullopt;
}

std::string_view func_name(Func f) noexcept {
  switch (f) {
    case Func::sin:
      return "sin";
    case Func::cos:
      return "cos";
    case Func::exp:
      return "exp";
    case Func::log:
      return "log";
    case Func::abs:
      return "abs";
    case Func::sign:
      return "sign";
    case Func::floor:
      return "floor";
    case Func::sqrt:
      return "sqrt";
  }
  return "";
}

std::optional<Func> func_from_name(std::string_view name) noexcept {
  for (Func f : {Func::sin, Func::cos, Func::exp, Func::log, Func::abs, Func::sign, Func::floor, Func::sqrt}) {
    if (func_name(f) == name) return f;
  }
  return std::nullopt;
}

char op_symbol(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::add:
      return '+';
    case BinaryOp::sub:
      return '-';
    case BinaryOp::mul:
      return '*';
    case BinaryOp::div:
      return '/';
    case BinaryOp::pow:
      return '^';
  }
  return '?';
}

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Number>) {
          return x.value == y.value && std::signbit(x.value) == std::signbit(y.value);
        } else if constexpr (std::is_same_v<T, Variable>) {
          return true;
        } else if constexpr (std::is_same_v<T, Unary>) {
          return equal(*x.operand, *y.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
        } else if constexpr (std::is_same_v<T, Call>) {
          return x.fn == y.fn && equal(*x.arg, *y.arg);
        } else {
          if (x.pieces.size() != y.pieces.size()) return false;
          if ((x.otherwise == nullptr) != (y.otherwise == nullptr)) return false;
          for (std::size_t i = 0; i < x.pieces.size(); ++i) {
            if (!(x.pieces[i].guard == y.pieces[i].guard)) return false;
            if (!equal(*x.pieces[i].body, *y.pieces[i].body)) return false;
          }
          return !x.otherwise || equal(*x.otherwise, *y.otherwise);
        }
      },
      a.node);
}

std::string print(const GuardInterval& g) {
  if (g.is_point()) return "x == " + format_double(*g.lo);
  if (g.lo && g.hi) {
    return format_double(*g.lo) + cmp_text(g.lo_closed, true) + "x" + cmp_text(g.hi_closed, true) +
           format_double(*g.hi);
  }
  if (g.lo) return "x" + cmp_text(g.lo_closed, false) + format_double(*g.lo);
  if (g.hi) return "x" + cmp_text(g.hi_closed, true) + format_double(*g.hi);
  return "-1e308 < x";  // unreachable for parsed guards
}

std::string print(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          return format_double(n.value);
        } else if constexpr (std::is_same_v<T, Variable>) {
          return "x";
        } else if constexpr (std::is_same_v<T, Unary>) {
          return "(-" + print(*n.operand) + ")";
        } else if constexpr (std::is_same_v<T, Binary>) {
          return "(" + print(*n.lhs) + " " + op_symbol(n.op) + " " + print(*n.rhs) + ")";
        } else if constexpr (std::is_same_v<T, Call>) {
          return std::string(func_name(n.fn)) + "(" + print(*n.arg) + ")";
        } else {
          std::string out = "piece { ";
          for (std::size_t i = 0; i < n.pieces.size(); ++i) {
            if (i > 0) out += " ; ";
            out += print(n.pieces[i].guard) + " : " + print(*n.pieces[i].body);
          }
          if (n.otherwise) out += std::string(n.pieces.empty() ? "" : " ; ") + "else : " + print(*n.otherwise);
          return out + " }";
        }
      },
      e.node);
}

}  // namespace stieltjes::expr
