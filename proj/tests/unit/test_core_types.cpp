#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "stieltjes/distribution.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/extended_real.hpp"
#include "stieltjes/integrand.hpp"
#include "stieltjes/partition.hpp"

using namespace stieltjes;

TEST_CASE("extended reals reject nan and infinities as finite values") {
  CHECK(ExtendedReal::finite(2.5).value() == 2.5);
  CHECK_THROWS_AS(ExtendedReal::finite(std::nan("")), InvalidArgument);
  CHECK_THROWS_AS(ExtendedReal::finite(HUGE_VAL), InvalidArgument);
  CHECK_THROWS_AS(ExtendedReal::pos_infinity().value(), PreconditionError);
  CHECK(ExtendedReal::pos_infinity().to_string() == "+inf");
  CHECK(ExtendedReal::neg_infinity().to_string() == "-inf");
  CHECK(ExtendedReal::neg_infinity().to_double() < 0);
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("evaluate_df follows the plateau and value_at conventions") {
  const StepDF H = StepDF::heaviside();
  CHECK(evaluate_df(H, -0.5) == 0.0);
  CHECK(evaluate_df(H, 0.0) == 1.0);
  CHECK(evaluate_df(H, 7.0) == 1.0);

  const StepDF Q(Domain::whole_line(), 0.0, {{0.0, 1.0, 0.25}});
  CHECK(evaluate_df(Q, 0.0) == 0.25);
  CHECK_FALSE(Q.is_right_continuous());
  CHECK(Q.first_non_right_continuous()->location == 0.0);

  const StepDF B(Domain::interval(-1.0, 1.0), 0.0, {{0.0, 1.0, std::nullopt}});
  CHECK_THROWS_AS(evaluate_df(B, 1.5), DomainError);
}

TEST_CASE("one_sided_limits_df") {
  const StepDF H = StepDF::heaviside();
  CHECK(one_sided_limits_df(H, 0.0) == std::pair(0.0, 1.0));

  const StepDF level2(Domain::whole_line(), 2.0, {});
  CHECK(one_sided_limits_df(level2, 3.0) == std::pair(2.0, 2.0));

  // Segment x on ]0,1[, unit jump at 1, plateau 2 on ]1,2[.
  const Distribution M = fixtures::ramp_plus_jump();
  auto [l, r] = one_sided_limits_df(M, 1.0);
  CHECK(l == 1.0);
  CHECK(r == 2.0);
  CHECK(evaluate_df(M, 0.25) == 0.25);
  CHECK(evaluate_df(M, 1.5) == 2.0);
}

TEST_CASE("one_sided_limits_f prefers declarations and otherwise probes") {
  const Integrand sign([](double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }, 1.0, {{0.0, -1.0, 1.0, 0.0}});
  auto s = one_sided_limits_f(sign, 0.0);
  CHECK(s.left == -1.0);
  CHECK(s.right == 1.0);
  CHECK_FALSE(s.estimated);

  const Integrand sq([](double x) { return x * x; });
  auto q = one_sided_limits_f(sq, 2.0, 20, 1e-3);
  CHECK(q.estimated);
  CHECK(std::fabs(q.left - 4.0) < 1e-6);
  CHECK(std::fabs(q.right - 4.0) < 1e-6);

  const Integrand c([](double x) { return std::cos(x); });
  auto k = one_sided_limits_f(c, 0.3);
  CHECK(std::fabs(k.left - std::cos(0.3)) < 1e-6);
  CHECK(std::fabs(k.right - std::cos(0.3)) < 1e-6);

  const Integrand blowup([](double x) { return 1.0 / x; });
  CHECK_THROWS_AS(blowup(0.0), EvaluationError);
}

TEST_CASE("integrand declarations are validated") {
  auto id = [](double x) { return x; };
  CHECK_THROWS_AS(Integrand(id, std::nullopt, {{1.0, 0.0, 2.0, 5.0}}), InvalidArgument);
  const Integrand bounded(id, 1.0);
  CHECK_THROWS_AS(bounded(2.0), EvaluationError);
}

TEST_CASE("step df construction rejects malformed input") {
  const Domain R = Domain::whole_line();
  CHECK_THROWS_AS(StepDF(R, 0.0, {{0.0, 0.0, std::nullopt}}), InvalidArgument);
  CHECK_THROWS_AS(StepDF(R, 0.0, {{1.0, 1.0, std::nullopt}, {0.0, 1.0, std::nullopt}}), InvalidArgument);
  CHECK_THROWS_AS(StepDF(R, 0.0, {{0.0, -1.0, std::nullopt}}), InvalidArgument);
  CHECK_NOTHROW(StepDF(R, 0.0, {{0.0, -1.0, std::nullopt}}, true));
  CHECK_THROWS_AS(StepDF(R, 0.0, {{0.0, 1.0, 1.5}}), InvalidArgument);
  CHECK_THROWS_AS(StepDF(R, 0.0, {{0.0, -1.0, 0.5}}, true), InvalidArgument);
  CHECK_NOTHROW(StepDF(R, 0.0, {{0.0, -1.0, -0.5}}, true));
  CHECK_THROWS_AS(Domain::interval(1.0, 1.0), InvalidArgument);
  CHECK_NOTHROW(StepDF(R, 0.0, {}));
}

TEST_CASE("plateau levels are running sums over a thousand jumps") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> m(0.001, 2.0);
  std::vector<JumpSpec> js;
  std::vector<double> expected{0.5};
  for (int h = 0; h < 1000; ++h) {
    double mass = m(rng);
    js.push_back({static_cast<double>(h), mass, std::nullopt});
    expected.push_back(expected.back() + mass);
  }
  const StepDF F(Domain::whole_line(), 0.5, js);
  auto levels = F.plateau_levels();
  REQUIRE(levels.size() == expected.size());
  for (std::size_t k = 0; k < levels.size(); ++k) CHECK(levels[k] == expected[k]);
  for (int h = 0; h < 1000; h += 97) CHECK(F.evaluate(h + 0.5) == expected[static_cast<std::size_t>(h) + 1]);
}

TEST_CASE("non-signed step dfs are monotone and bracket their jump values") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ref = oracle::random_step(rng, -3.0, 3.0, 10, false, true);
    const StepDF F = fixtures::to_library(ref, Domain::whole_line(), false);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int k = 0; k < 100; ++k) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      CHECK(F.right_limit(b) - F.right_limit(a) >= 0.0);
      CHECK(F.evaluate(a) == ref.eval(a));
      CHECK(F.left_limit(a) == F.evaluate(a));
      CHECK(F.right_limit(a) == F.evaluate(a));
    }
    for (const JumpPoint& j : F.jumps()) {
      CHECK(F.left_limit(j.location) <= j.value_at);
      CHECK(j.value_at <= F.right_limit(j.location));
    }
  }
}

TEST_CASE("generated tails are walked for probes and windows") {
  const StepDF G = fixtures::geometric();
  CHECK(G.evaluate(0.5) == 0.0);
  CHECK(G.evaluate(2.5) == 0.75);
  CHECK(G.left_limit(3.0) == 0.75);
  CHECK(G.right_limit(3.0) == 0.875);
  auto js = G.jumps_in(0.5, 4.0);
  REQUIRE(js.size() == 4);
  CHECK(js[3].location == 4.0);
  CHECK(js[3].mass == 0.0625);
  const StepDF W = G.window(0.5, 3.5);
  CHECK(W.jumps().size() == 3);
  CHECK(W.evaluate(3.5) == 0.875);
  CHECK_THROWS_AS(fixtures::accumulating().jumps_in(0.0, 2.0), AccumulationError);
}

TEST_CASE("partitions keep tags in closed cells") {
  const Partition p({0.0, 0.5, 1.0}, {0.0, 1.0});
  CHECK(p.mesh() == 0.5);
  CHECK(p.cells() == 2);
  CHECK_THROWS_AS(Partition({0.0, 0.5, 1.0}, {0.6, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(Partition({0.0, 0.0, 1.0}, {0.0, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(Partition({0.0}, {}), InvalidArgument);
}

TEST_CASE("mixed dfs check segment consistency") {
  // Jump says F(1+0) = 3 while the next segment starts at 1.
  CHECK_THROWS_AS(MixedDF(Domain::interval(0.0, 2.0), 0.0, {{1.0, 2.0, std::nullopt}},
                          {SegmentFn([](double x) { return x; }), SegmentFn([](double x) { return x; })}),
                  InvalidArgument);
  const MixedDF ok(Domain::interval(0.0, 2.0), 0.0, {{1.0, 1.0, std::nullopt}},
                   {SegmentFn([](double x) { return x; }), SegmentFn([](double x) { return x + 1; })});
  CHECK(ok.evaluate(1.5) == 2.5);
  CHECK(ok.left_limit(1.0) == 1.0);
  CHECK(ok.right_limit(1.0) == 2.0);
  const MixedDF down(Domain::interval(0.0, 1.0), 0.0, {}, {SegmentFn([](double x) { return -x; })}, true);
  CHECK_FALSE(down.segments_non_decreasing());
  const MixedDF from = MixedDF::from_step(StepDF::heaviside());
  CHECK(from.evaluate(0.0) == 1.0);
  CHECK(from.gap_count() == 2);
}
