#include <cmath>
#include <string>

#include "doctest.h"
#include "stieltjes/errors.hpp"
#include "stieltjes/expr/ast.hpp"
#include "stieltjes/expr/evaluate.hpp"
#include "stieltjes/expr/parser.hpp"
#include "stieltjes/expr/to_integrand.hpp"

using namespace stieltjes;
using namespace stieltjes::expr;

namespace {

double eval(const std::string& s, double x) { return evaluate(*parse(s), x); }

int error_column(const std::string& s) {
  try {
    parse(s);
  } catch (const SyntaxError& e) {
    return e.column();
  }
  return -1;
}

const char* kSign = "piece { x < 0 : -1 ; x == 0 : 0 ; else : 1 }";

}  // namespace

TEST_CASE("parse examples") {
  CHECK(eval("x^2 + 1", 2.0) == 5.0);
  CHECK(eval(kSign, -3.0) == -1.0);
  CHECK(eval(kSign, 0.0) == 0.0);
  CHECK(eval(kSign, 1e-300) == 1.0);
  CHECK(error_column("2*+") == 3);
}

TEST_CASE("precedence and associativity") {
  CHECK(eval("2 + 3 * 4", 0) == 14.0);
  CHECK(eval("2 ^ 3 ^ 2", 0) == 512.0);
  CHECK(eval("-x^2", 3.0) == -9.0);
  CHECK(eval("(-x)^2", 3.0) == 9.0);
  CHECK(eval("2^-1", 0) == 0.5);
  CHECK(eval("8 / 4 / 2", 0) == 1.0);
  CHECK(eval("8 - 4 - 2", 0) == 2.0);
  CHECK(eval("--x", 2.0) == 2.0);
  CHECK(eval("-2 * x", 3.0) == -6.0);
  CHECK(eval(" \n\t1.5e1+.5 ", 0) == 15.5);
  CHECK(eval("1e+2", 0) == 100.0);
}

TEST_CASE("functions") {
  CHECK(eval("sin(x)", 0.5) == std::sin(0.5));
  CHECK(eval("cos(x)", 0.5) == std::cos(0.5));
  CHECK(eval("exp(x)", 0.5) == std::exp(0.5));
  CHECK(eval("log(x)", 0.5) == std::log(0.5));
  CHECK(eval("abs(x)", -0.5) == 0.5);
  CHECK(eval("sign(x)", -0.5) == -1.0);
  CHECK(eval("sign(x)", 0.0) == 0.0);
  CHECK(eval("floor(x)", -0.5) == -1.0);
  CHECK(eval("sqrt(x)", 2.25) == 1.5);
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(eval("log(x)", 0.0), EvaluationError);
  CHECK_THROWS_AS(eval("sqrt(x)", -1.0), EvaluationError);
  CHECK_THROWS_AS(eval("1 / x", 0.0), EvaluationError);
  CHECK_THROWS_AS(eval("exp(x)", 1000.0), EvaluationError);
  CHECK_THROWS_AS(eval("x ^ 0.5", -1.0), EvaluationError);
}

TEST_CASE("syntax errors carry positions") {
  CHECK(error_column("") == 1);
  CHECK(error_column("(x + 1") == 7);
  CHECK(error_column("x + y") == 5);
  CHECK(error_column("tan(x)") == 1);
  CHECK(error_column("x 2") == 3);
  try {
    parse("x +\n  * 2");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse("piece { else : 1 ; x < 0 : 2 }"), SyntaxError);
  CHECK_THROWS_AS(parse("piece { x < x : 1 ; else : 2 }"), SyntaxError);
}

TEST_CASE("piecewise guards must be exclusive and covering") {
  CHECK_THROWS_AS(parse("piece { x < 1 : 1 ; x > 0 : 2 }"), SyntaxError);      // overlap
  CHECK_THROWS_AS(parse("piece { x < 0 : 1 ; x > 0 : 2 }"), SyntaxError);      // gap at 0
  CHECK_THROWS_AS(parse("piece { x <= 0 : 1 ; x == 0 : 2 ; else : 3 }"), SyntaxError);
  CHECK_THROWS_AS(parse("piece { x < 0 : 1 }"), SyntaxError);
  CHECK_NOTHROW(parse("piece { x < 0 : 1 ; x >= 0 : 2 }"));
  CHECK_NOTHROW(parse("piece { 0 <= x < 1 : x ; else : 0 }"));
  CHECK(eval("piece { -1 < x <= 1 : x ; else : 0 }", 1.0) == 1.0);
  CHECK(eval("piece { 0 > x : 5 ; else : 6 }", -1.0) == 5.0);
  CHECK(eval("piece { x <= 0 : 1 ; x > 0 : 2 ; }", 3.0) == 2.0);
  CHECK_THROWS_AS(make_piecewise({{GuardInterval{std::nullopt, false, 0.0, false}, make_number(1)}}, nullptr),
                  InvalidArgument);
}

TEST_CASE("printing is canonical and parses back") {
  const char* sources[] = {"x^2 + 1", "-x^2", "2^3^2", "sin(x) * -cos(x) / 3", kSign,
                           "piece { -1 < x <= 1 : x ; else : 0 }", "piece { 1 <= x : 1 ; else : 0 }", "1e-7 * x"};
  for (const char* s : sources) {
    auto e = parse(s);
    const std::string p = print(*e);
    auto back = parse(p);
    CHECK(equal(*e, *back));
    CHECK(print(*back) == p);
  }
  CHECK(print(*parse("x^2 + 1")) == "((x ^ 2) + 1)");
  CHECK(print(*parse(kSign)) == "piece { x < 0 : (-1) ; x == 0 : 0 ; else : 1 }");
}

TEST_CASE("one-sided jets") {
  auto e = parse(kSign);
  CHECK(one_sided(*e, 0.0, -1).value == -1.0);
  CHECK(one_sided(*e, 0.0, +1).value == 1.0);
  auto f = parse("floor(x)");
  CHECK(one_sided(*f, 1.0, -1).value == 0.0);
  CHECK(one_sided(*f, 1.0, +1).value == 1.0);
  auto g = parse("sign(x^2)");
  CHECK(one_sided(*g, 0.0, -1).value == 1.0);
  CHECK(one_sided(*g, 0.0, +1).value == 1.0);
  auto h = parse("x^3 - 2*x");
  auto j = one_sided(*h, 2.0, +1);
  CHECK(j.value == 4.0);
  CHECK(j.slope == 10.0);
}

TEST_CASE("to_integrand examples") {
  const Integrand s = to_integrand(parse(kSign), -1.0, 1.0);
  REQUIRE(s.discontinuities().size() == 1);
  const auto& d = s.discontinuities()[0];
  CHECK(d.location == 0.0);
  CHECK(*d.left_limit == -1.0);
  CHECK(*d.right_limit == 1.0);
  CHECK(d.value == 0.0);

  CHECK(to_integrand(parse("x^2"), -5.0, 5.0).discontinuities().empty());

  const Integrand fl = to_integrand(parse("floor(x)"), 0.0, 2.5);
  REQUIRE(fl.discontinuities().size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& di = fl.discontinuities()[i];
    const double x = static_cast<double>(i + 1);
    CHECK(di.location == x);
    CHECK(*di.left_limit == std::floor(x - 1e-9));
    CHECK(*di.right_limit == std::floor(x + 1e-9));
    CHECK(di.value == x);
  }
}

TEST_CASE("breakpoints of nested and non-affine arguments") {
  // sign(x^2 - 2) jumps at +/- sqrt(2); sign(x^2) touches 0 without jumping.
  auto cands = breakpoint_candidates(*parse("sign(x^2 - 2)"), -3.0, 3.0);
  REQUIRE(cands.size() >= 2);
  const Integrand f = to_integrand(parse("sign(x^2 - 2)"), -3.0, 3.0);
  REQUIRE(f.discontinuities().size() == 2);
  CHECK(std::fabs(f.discontinuities()[0].location + std::sqrt(2.0)) < 1e-12);
  CHECK(std::fabs(f.discontinuities()[1].location - std::sqrt(2.0)) < 1e-12);
  CHECK(to_integrand(parse("sign(x^2)"), -1.0, 1.0).discontinuities().size() == 1);  // value 0 at 0 differs
  CHECK(to_integrand(parse("abs(sign(x))"), -1.0, 1.0).discontinuities().size() == 1);
  CHECK(to_integrand(parse("floor(2*x + 0.5)"), 0.0, 1.0).discontinuities().size() == 2);
  // Guard ends that do not break continuity are not declared.
  CHECK(to_integrand(parse("piece { x < 0 : -x ; else : x }"), -1.0, 1.0).discontinuities().empty());
  // Endpoints are excluded.
  CHECK(to_integrand(parse("floor(x)"), 0.0, 2.0).discontinuities().size() == 1);
  CHECK_THROWS_AS(to_integrand(parse("x"), 1.0, 1.0), InvalidArgument);
}

TEST_CASE("to_integrand_at inspects only the given points") {
  const Integrand f = to_integrand_at(parse("floor(x)"), {0.5, 1.0, 3.0});
  REQUIRE(f.discontinuities().size() == 2);
  CHECK(f.discontinuities()[0].location == 1.0);
  CHECK(f.discontinuities()[1].location == 3.0);
}
