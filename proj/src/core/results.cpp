#include "stieltjes/results.hpp"

namespace stieltjes {

std::string_view to_string(ConvergenceTrace::Verdict v) noexcept {
  switch (v) {
    case ConvergenceTrace::Verdict::converged:
      return "converged";
    case ConvergenceTrace::Verdict::not_converged:
      return "not_converged";
    case ConvergenceTrace::Verdict::diverged_witnessed:
      return "diverged_witnessed";
  }
  return "unknown";
}

std::string_view to_string(WitnessCase c) noexcept {
  return c == WitnessCase::on_grid ? "jump_on_grid" : "jump_inside_cell";
}

bool WitnessReport::all_reproduced() const noexcept {
  for (const WitnessEntry& e : entries) {
    if (!e.reproduced) return false;
  }
  return true;
}

IntegralResult IntegralResult::finite(double v, Diagnostics d) {
  IntegralResult r;
  r.status = Status::finite;
  r.value = ExtendedReal::finite(v);
  r.diagnostics = std::move(d);
  return r;
}

IntegralResult IntegralResult::pos_infinite(Diagnostics d) {
  IntegralResult r;
  r.status = Status::pos_infinite;
  r.value = ExtendedReal::pos_infinity();
  r.diagnostics = std::move(d);
  return r;
}

IntegralResult IntegralResult::neg_infinite(Diagnostics d) {
  IntegralResult r;
  r.status = Status::neg_infinite;
  r.value = ExtendedReal::neg_infinity();
  r.diagnostics = std::move(d);
  return r;
}

IntegralResult IntegralResult::undefined(Diagnostics d) {
  IntegralResult r;
  r.status = Status::undefined_indeterminate;
  r.diagnostics = std::move(d);
  return r;
}

IntegralResult IntegralResult::rs_divergent(WitnessReport w, Diagnostics d) {
  IntegralResult r;
  r.status = Status::rs_divergent;
  r.witness = std::make_shared<const WitnessReport>(std::move(w));
  r.diagnostics = std::move(d);
  return r;
}

double IntegralResult::finite_value() const {
  if (status != Status::finite) throw PreconditionError("integral is not finite: " + std::string(to_string(status)));
  return value->value();
}

std::string_view to_string(IntegralResult::Status s) noexcept {
  switch (s) {
    case IntegralResult::Status::finite:
      return "finite";
    case IntegralResult::Status::pos_infinite:
      return "pos_infinite";
    case IntegralResult::Status::neg_infinite:
      return "neg_infinite";
    case IntegralResult::Status::undefined_indeterminate:
      return "undefined_indeterminate";
    case IntegralResult::Status::rs_divergent:
      return "rs_divergent";
  }
  return "unknown";
}

NotIntegrableError::NotIntegrableError(WitnessReport w)
    : Error("f and F share a discontinuity at x = " + format_double(w.jump_location) +
            "; Riemann-Stieltjes sums have several limits"),
      witness_(std::make_shared<const WitnessReport>(std::move(w))) {}

}  // namespace stieltjes
