#include "stieltjes/improper.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>

#include "stieltjes/errors.hpp"

namespace stieltjes {

namespace {

bool has_jump_at(const Distribution& F, double x) {
  if (const auto* s = std::get_if<StepDF>(&F)) return s->probe(x).is_jump;
  return std::get<MixedDF>(F).probe(x).is_jump;
}

// Moves a window end outward (dir = -1 for the left end) until it clears the jumps.
double nudge(const Distribution& F, double end, int dir, const ImproperOptions& o) {
  if (!has_jump_at(F, end)) return end;
  for (int k = 1; k <= o.nudge_budget; ++k) {
    double moved = end + dir * k * o.nudge_offset;
    if (!has_jump_at(F, moved)) return moved;
  }
  throw PreconditionError("window end " + format_double(end) + " still sits on a jump after " +
                          std::to_string(o.nudge_budget) + " nudges");
}

}  // namespace

bool locally_finite(const Distribution& F, double a, double b, std::size_t budget) {
  if (!(a <= b)) throw DomainError("locally_finite needs a <= b");
  const auto* s = std::get_if<StepDF>(&F);
  if (s == nullptr || !s->has_tails()) return true;
  try {
    (void)s->jumps_in(a, b, budget);
  } catch (const AccumulationError&) {
    return false;
  }
  return true;
}

std::vector<double> default_window_schedule() {
  std::vector<double> out;
  for (int k = 0; k <= 20; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

IntegralResult improper_rs(const Integrand& f, const Distribution& F, double tol,
                           std::span<const double> window_schedule) {
  ImproperOptions o;
  o.window_schedule.assign(window_schedule.begin(), window_schedule.end());
  return improper_rs(f, F, tol, o);
}

IntegralResult improper_rs(const Integrand& f, const Distribution& F, double tol, const ImproperOptions& o) {
  if (!domain_of(F).is_whole_line()) {
    throw PreconditionError("improper integral needs F on the whole line");
  }
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  const std::vector<double>& sched = o.window_schedule;
  if (sched.empty()) throw InvalidArgument("window schedule is empty");
  for (std::size_t i = 0; i < sched.size(); ++i) {
    if (!std::isfinite(sched[i]) || !(sched[i] > 0.0) || (i > 0 && !(sched[i] > sched[i - 1]))) {
      throw InvalidArgument("window schedule must be positive and strictly increasing");
    }
  }

  // Agreement only counts once the windows hold every materialized jump;
  // before that, equal values may just mean no atoms have been reached yet.
  const auto materialized = std::visit([](const auto& G) { return G.jumps(); }, F);
  std::optional<std::size_t> covering;

  IntegralResult::Diagnostics d;
  std::vector<double>& values = d.sequence;
  for (double T : sched) {
    const double lo = nudge(F, -T, -1, o);
    const double hi = nudge(F, T, +1, o);
    if (!locally_finite(F, lo, hi)) {
      throw PreconditionError("jumps accumulate inside [" + format_double(lo) + ", " + format_double(hi) + "]");
    }
    IntegralResult w;
    try {
      w = rs_integral_closed_form(f, F, lo, hi, o.quad_tol, o.quad_levels);
    } catch (const NotIntegrableError& e) {
      d.notes.push_back("window [" + format_double(lo) + ", " + format_double(hi) + "] is not integrable");
      d.terms = values.size() + 1;
      return IntegralResult::rs_divergent(e.witness(), std::move(d));
    }
    values.push_back(w.finite_value());
    d.terms = values.size();
    if (!covering && (materialized.empty() ||
                      (lo < materialized.front().location && materialized.back().location < hi))) {
      covering = values.size() - 1;
    }

    const std::size_t n = values.size();
    if (n < 3) continue;
    const double v0 = values[n - 3];
    const double v1 = values[n - 2];
    const double v2 = values[n - 1];
    auto [mn, mx] = std::minmax({v0, v1, v2});
    if (mx - mn <= tol && covering && *covering <= n - 3) return IntegralResult::finite(v2, std::move(d));
    if (v0 < v1 && v1 < v2 && v2 > o.divergence_threshold) {
      d.notes.push_back("window values grow past " + format_double(o.divergence_threshold));
      return IntegralResult::pos_infinite(std::move(d));
    }
    if (v0 > v1 && v1 > v2 && v2 < -o.divergence_threshold) {
      d.notes.push_back("window values fall past -" + format_double(o.divergence_threshold));
      return IntegralResult::neg_infinite(std::move(d));
    }
  }
  if (!covering) d.notes.push_back("the largest window does not reach every materialized jump");
  else d.notes.push_back("window values neither settle nor grow monotonically");
  return IntegralResult::undefined(std::move(d));
}

IntegralResult rs_integral_extended(const Integrand& f, const Distribution& F, double quad_tol, int quad_levels) {
  const Domain& dom = domain_of(F);
  if (!dom.is_bounded()) throw PreconditionError("extended integral needs an interval domain");
  const double lo = dom.lo();
  const double hi = dom.hi();
  IntegralResult r = rs_integral_closed_form(f, F, lo, hi, quad_tol, quad_levels);
  const double step = evaluate_df(F, lo) - base_level_of(F);
  if (step != 0.0) {
    r.value = ExtendedReal::finite(r.value->value() + step * f(lo));
    r.diagnostics.notes.push_back("includes the step F(lo) - F(lo-0) at the left end of the domain");
  }
  return r;
}

std::string_view to_string(ComparisonReport::Verdict v) noexcept {
  switch (v) {
    case ComparisonReport::Verdict::agree:
      return "agree";
    case ComparisonReport::Verdict::disagree:
      return "disagree";
    case ComparisonReport::Verdict::not_comparable:
      return "not_comparable";
  }
  return "unknown";
}

ComparisonReport compare_ls_rs(const Integrand& f, const Distribution& F, double tol, const LsOptions& ls_options,
                               const ImproperOptions& rs_options) {
  ComparisonReport rep;
  try {
    rep.ls = ls_integral(f, F, ls_options, rs_options.quad_tol);
  } catch (const Error& e) {
    rep.ls_error = e.what();
  }
  try {
    if (domain_of(F).is_whole_line()) rep.rs = improper_rs(f, F, tol, rs_options);
    else rep.rs = rs_integral_extended(f, F, rs_options.quad_tol, rs_options.quad_levels);
  } catch (const NotIntegrableError& e) {
    rep.rs = IntegralResult::rs_divergent(e.witness());
  } catch (const Error& e) {
    rep.rs_error = e.what();
  }

  if (!rep.ls || !rep.rs) {
    rep.verdict = ComparisonReport::Verdict::not_comparable;
  } else if (rep.ls->is_finite() && rep.rs->is_finite()) {
    const double diff = std::abs(rep.ls->finite_value() - rep.rs->finite_value());
    rep.max_abs_difference = diff;
    rep.verdict = diff <= tol ? ComparisonReport::Verdict::agree : ComparisonReport::Verdict::disagree;
  } else {
    rep.verdict = rep.ls->status == rep.rs->status ? ComparisonReport::Verdict::agree
                                                   : ComparisonReport::Verdict::disagree;
  }
  return rep;
}

}  // namespace stieltjes
