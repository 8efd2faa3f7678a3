#include "stieltjes/distribution.hpp"

#include <cmath>

#include "stieltjes/errors.hpp"
#include "stieltjes/extended_real.hpp"

namespace stieltjes {

Domain Domain::interval(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw InvalidArgument("interval bounds must be finite");
  if (!(lo < hi)) {
    throw InvalidArgument("interval needs lo < hi, got [" + format_double(lo) + ", " + format_double(hi) + "]");
  }
  Domain d;
  d.whole_line_ = false;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

void Domain::require(double x) const {
  if (std::isnan(x) || !contains(x)) {
    throw DomainError("x = " + format_double(x) + " lies outside [" + format_double(lo_) + ", " +
                      format_double(hi_) + "]");
  }
}

double evaluate_df(const StepDF& F, double x) { return F.evaluate(x); }
double evaluate_df(const MixedDF& F, double x) { return F.evaluate(x); }

double evaluate_df(const Distribution& F, double x) {
  return std::visit([x](const auto& df) { return df.evaluate(x); }, F);
}

std::pair<double, double> one_sided_limits_df(const Distribution& F, double x) {
  const Probe p = std::visit([x](const auto& df) { return df.probe(x); }, F);
  return {p.left, p.right};
}

const Domain& domain_of(const Distribution& F) {
  return std::visit([](const auto& df) -> const Domain& { return df.domain(); }, F);
}

bool is_signed(const Distribution& F) {
  return std::visit([](const auto& df) { return df.is_signed(); }, F);
}

double base_level_of(const Distribution& F) {
  return std::visit([](const auto& df) { return df.base_level(); }, F);
}

std::vector<JumpPoint> jumps_in(const Distribution& F, double a, double b) {
  if (const auto* step = std::get_if<StepDF>(&F)) return step->jumps_in(a, b);
  std::vector<JumpPoint> out;
  for (const JumpPoint& j : std::get<MixedDF>(F).jumps()) {
    if (j.location >= a && j.location <= b) out.push_back(j);
  }
  return out;
}

std::vector<double> evaluate_sorted(const Distribution& F, std::span<const double> xs) {
  return std::visit([xs](const auto& df) { return df.evaluate_sorted(xs); }, F);
}

}  // namespace stieltjes
