#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "stieltjes/mixed_df.hpp"
#include "stieltjes/step_df.hpp"

namespace stieltjes {

/// The integrator F: a pure step function or one with continuous pieces.
using Distribution = std::variant<StepDF, MixedDF>;

/// F(x); the jump value exactly at a jump location.
double evaluate_df(const Distribution& F, double x);
double evaluate_df(const StepDF& F, double x);
double evaluate_df(const MixedDF& F, double x);

/// (F(x-0), F(x+0)).
std::pair<double, double> one_sided_limits_df(const Distribution& F, double x);

const Domain& domain_of(const Distribution& F);
bool is_signed(const Distribution& F);
double base_level_of(const Distribution& F);

/// All jumps located in [a, b], ascending.
std::vector<JumpPoint> jumps_in(const Distribution& F, double a, double b);

/// F at each point of an ascending sequence.
std::vector<double> evaluate_sorted(const Distribution& F, std::span<const double> xs);

}  // namespace stieltjes
