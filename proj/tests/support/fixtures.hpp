#pragma once

// Library objects for the distribution functions used across the suites.

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "stieltjes/mixed_df.hpp"
#include "stieltjes/step_df.hpp"

namespace fixtures {

using namespace stieltjes;

/// Atoms (h, 2^-h) for h = 1, 2, ...; all of them generated, none materialized.
inline StepDF geometric() {
  JumpTail tail;
  tail.jump = [](std::size_t k) -> std::optional<TailJump> {
    const double h = static_cast<double>(k + 1);
    return TailJump{h, std::ldexp(1.0, -static_cast<int>(k + 1))};
  };
  tail.remaining_mass_bound = [](std::size_t k) { return std::ldexp(1.0, -static_cast<int>(k)); };
  return StepDF(Domain::whole_line(), 0.0, {}, false, tail);
}

/// Unit atoms at every integer, in both directions.
inline StepDF integer_lattice(double mass = 1.0) {
  JumpTail right;
  right.jump = [mass](std::size_t k) -> std::optional<TailJump> {
    return TailJump{static_cast<double>(k + 1), mass};
  };
  JumpTail left;
  left.jump = [mass](std::size_t k) -> std::optional<TailJump> {
    return TailJump{-static_cast<double>(k + 1), mass};
  };
  return StepDF(Domain::whole_line(), 0.0, {{0.0, mass, std::nullopt}}, false, right, left);
}

/// Locations 1 - 2^-h accumulating at 1.
inline StepDF accumulating() {
  JumpTail tail;
  tail.jump = [](std::size_t k) -> std::optional<TailJump> {
    const int h = static_cast<int>(k + 1);
    return TailJump{1.0 - std::ldexp(1.0, -h), std::ldexp(1.0, -h)};
  };
  tail.remaining_mass_bound = [](std::size_t k) { return std::ldexp(1.0, -static_cast<int>(k)); };
  return StepDF(Domain::whole_line(), 0.0, {}, false, tail);
}

/// F = x on ]0, 1[, a unit jump at 1 (F(1) = 2), constant 2 on ]1, 2[.
inline MixedDF ramp_plus_jump() {
  return MixedDF(Domain::interval(0.0, 2.0), 0.0, {{1.0, 1.0, std::nullopt}},
                 {SegmentFn([](double x) { return x; }), std::nullopt});
}

inline StepDF to_library(const oracle::RefStep& r, Domain d, bool signed_masses) {
  std::vector<JumpSpec> js;
  for (const auto& j : r.jumps) js.push_back({j.x, j.mass, j.q});
  return StepDF(d, r.base, js, signed_masses);
}

}  // namespace fixtures
