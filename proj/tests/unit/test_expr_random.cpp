#include <cmath>
#include <cstring>
#include <random>

#include "doctest.h"
#include "expr_gen.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/expr/ast.hpp"
#include "stieltjes/expr/evaluate.hpp"
#include "stieltjes/expr/parser.hpp"

using namespace stieltjes;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<double> sample_points(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Every tenth point lands on a quarter grid, where breakpoints live.
    xs[i] = i % 10 == 0 ? std::round(u(rng) * 4.0) / 4.0 : u(rng);
  }
  return xs;
}

}  // namespace

TEST_CASE("evaluation agrees bit for bit with the reference on random expressions") {
  gen::Generator g(20240611);
  int value_points = 0;
  int fault_points = 0;
  for (int i = 0; i < 1000; ++i) {
    auto tree = g.expr(4);
    const std::string src = g.source(*tree);
    expr::ExprPtr e;
    REQUIRE_NOTHROW(e = expr::parse(src));
    for (double x : sample_points(g.rng(), 100)) {
      std::optional<double> ref;
      try {
        ref = gen::ref_eval(*tree, x);
      } catch (const gen::DomainFault&) {
      }
      if (ref) {
        double got = 0.0;
        REQUIRE_NOTHROW(got = expr::evaluate(*e, x));
        if (!same_bits(got, *ref)) {
          INFO("source: " << src << "  x = " << x);
          CHECK(got == *ref);
        }
        ++value_points;
      } else {
        CHECK_THROWS_AS(expr::evaluate(*e, x), EvaluationError);
        ++fault_points;
      }
    }
  }
  MESSAGE("points with values: " << value_points << ", domain faults: " << fault_points);
  CHECK(value_points > 50000);
}

TEST_CASE("parse . print . parse is a fixed point") {
  gen::Generator g(777);
  for (int i = 0; i < 1000; ++i) {
    auto tree = g.expr(5);
    const std::string src = g.source(*tree);
    auto first = expr::parse(src);
    const std::string printed = expr::print(*first);
    auto second = expr::parse(printed);
    INFO("source: " << src);
    CHECK(expr::equal(*first, *second));
    CHECK(expr::print(*second) == printed);
  }
}
