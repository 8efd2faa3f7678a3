#include "stieltjes/lebesgue_stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stieltjes/errors.hpp"
#include "stieltjes/kernels.hpp"
#include "stieltjes/riemann_stieltjes.hpp"

namespace stieltjes {

namespace {

template <class DF>
void require_measure_ready(const DF& F) {
  if (F.is_signed()) throw PreconditionError("Lebesgue-Stieltjes integration needs a non-decreasing F (signed mode)");
  if (auto bad = F.first_non_right_continuous()) {
    throw ConventionError("jump at x = " + format_double(bad->location) + " has F(x) = " +
                              format_double(bad->value_at) + ", not the right limit",
                          bad->location);
  }
}

struct TailOutcome {
  kernels::PartSums sums;
  std::size_t terms = 0;
  bool ended = false;
  bool certified = false;
  bool estimated = false;
  bool pos_diverges = false;
  bool neg_diverges = false;
  bool has_bound = false;

  bool settled() const noexcept { return ended || certified; }
};

// Walks one generated tail outward, summing mass * eval(location) in
// batches. `bound` is the declared sup |eval|; without it the largest |eval|
// over the latest batch stands in.
template <class Eval>
TailOutcome sum_tail(const JumpTail& tail, bool rightward, std::optional<double> previous, Eval&& eval,
                     std::optional<double> bound, const LsOptions& o) {
  const char* side = rightward ? "right" : "left";
  const std::size_t batch = std::max<std::size_t>(o.batch, 1);
  TailOutcome out;
  out.has_bound = static_cast<bool>(tail.remaining_mass_bound);
  std::vector<double> masses;
  std::vector<double> values;
  masses.reserve(batch);
  values.reserve(batch);
  std::vector<kernels::PartSums> history{kernels::PartSums{}};
  double frontier = 0.0;

  auto flush = [&] {
    kernels::PartSums s = kernels::split_parts(masses, values);
    out.sums.positive += s.positive;
    out.sums.negative += s.negative;
    masses.clear();
    values.clear();
    history.push_back(out.sums);
  };

  std::size_t k = 0;
  while (k < o.max_tail_terms) {
    std::optional<TailJump> tj = tail.jump(k);
    if (!tj) {
      out.ended = true;
      break;
    }
    if (!std::isfinite(tj->location) || !std::isfinite(tj->mass)) {
      throw InvalidArgument(std::string(side) + " tail jump " + std::to_string(k) + " is not finite");
    }
    if (!(tj->mass > 0.0)) {
      throw PreconditionError(std::string(side) + " tail jump at x = " + format_double(tj->location) +
                              " has non-positive mass");
    }
    if (previous && !(rightward ? tj->location > *previous : tj->location < *previous)) {
      throw AccumulationError(std::string(side) + " tail locations stop moving outward near " +
                              format_double(*previous));
    }
    previous = tj->location;
    double v = eval(tj->location);
    masses.push_back(tj->mass);
    values.push_back(v);
    frontier = std::max(frontier, std::abs(v));
    ++k;
    if (masses.size() == batch) {
      flush();
      if (tail.remaining_mass_bound) {
        double B = bound ? *bound : frontier;
        if (tail.remaining_mass_bound(k) * B < o.truncation_tol) {
          out.certified = true;
          out.estimated = !bound;
          break;
        }
      }
      frontier = 0.0;
    }
  }
  if (!masses.empty()) flush();
  out.terms = k;

  if (!out.settled()) {
    const kernels::PartSums& half = history[history.size() / 2];
    const kernels::PartSums& last = history.back();
    out.pos_diverges = last.positive - half.positive >= o.divergence_increment;
    out.neg_diverges = last.negative - half.negative >= o.divergence_increment;
  }
  return out;
}

std::optional<double> first_location(const StepDF& F) {
  if (F.jumps().empty()) return std::nullopt;
  return F.jumps().front().location;
}

std::optional<double> last_location(const StepDF& F) {
  if (F.jumps().empty()) return std::nullopt;
  return F.jumps().back().location;
}

}  // namespace

std::vector<Atom> DiscreteMeasure::atoms_in(double a, double b) const {
  std::vector<Atom> out;
  for (const JumpPoint& j : df_.jumps_in(a, b)) out.push_back({j.location, j.mass});
  return out;
}

double DiscreteMeasure::measure(double a, double b) const {
  if (!(a < b)) throw DomainError("measure of ]a, b] needs a < b");
  double total = 0.0;
  for (const JumpPoint& j : df_.jumps_in(a, b)) {
    if (j.location > a) total += j.mass;
  }
  return total;
}

DiscreteMeasure discrete_measure(const StepDF& F, double truncation_tol) {
  require_measure_ready(F);
  if (F.domain().is_whole_line() && !F.left_tail() && F.base_level() != 0.0) {
    throw PreconditionError("a whole-line distribution function must start from F(-inf) = 0, got base " +
                            format_double(F.base_level()));
  }
  DiscreteMeasure m(F);
  double total = 0.0;
  for (const JumpPoint& j : F.jumps()) {
    m.atoms_.push_back({j.location, j.mass});
    total += j.mass;
  }

  LsOptions o;
  o.truncation_tol = truncation_tol;
  auto one = [](double) { return 1.0; };
  bool diverges = false;
  bool uncertain = false;
  auto absorb = [&](const TailOutcome& t) {
    total += t.sums.positive;
    if (t.pos_diverges) diverges = true;
    else if (!t.settled()) uncertain = true;
  };
  if (F.right_tail()) absorb(sum_tail(*F.right_tail(), true, last_location(F), one, 1.0, o));
  if (F.left_tail()) absorb(sum_tail(*F.left_tail(), false, first_location(F), one, 1.0, o));

  if (diverges) m.total_ = ExtendedReal::pos_infinity();
  else if (!uncertain) m.total_ = ExtendedReal::finite(total);
  return m;
}

IntegralResult ls_integral_step(const Integrand& f, const StepDF& F, double truncation_tol) {
  LsOptions o;
  o.truncation_tol = truncation_tol;
  return ls_integral_step(f, F, o);
}

IntegralResult ls_integral_step(const Integrand& f, const StepDF& F, const LsOptions& o) {
  require_measure_ready(F);
  std::vector<double> locations;
  std::vector<double> masses;
  locations.reserve(F.jumps().size());
  masses.reserve(F.jumps().size());
  for (const JumpPoint& j : F.jumps()) {
    locations.push_back(j.location);
    masses.push_back(j.mass);
  }
  std::vector<double> values = f.evaluate_all(locations);
  kernels::PartSums sums = kernels::split_parts(masses, values);

  IntegralResult::Diagnostics d;
  d.terms = masses.size();
  bool pos_div = false;
  bool neg_div = false;
  std::vector<std::string> unsettled;

  auto eval = [&f](double x) { return f(x); };
  auto absorb = [&](const TailOutcome& t, const char* side) {
    sums.positive += t.sums.positive;
    sums.negative += t.sums.negative;
    d.terms += t.terms;
    d.estimated = d.estimated || t.estimated;
    if (t.certified) {
      d.notes.push_back(std::string(side) + " tail truncated after " + std::to_string(t.terms) +
                        (t.estimated ? " terms (integrand bound estimated from the last batch)" : " terms"));
    }
    pos_div = pos_div || t.pos_diverges;
    neg_div = neg_div || t.neg_diverges;
    if (!t.settled() && !t.pos_diverges && !t.neg_diverges) {
      unsettled.push_back(std::string(side) + " tail" +
                          (t.has_bound ? " did not meet the truncation tolerance" : " has no remaining-mass bound"));
    }
  };
  if (F.right_tail()) absorb(sum_tail(*F.right_tail(), true, last_location(F), eval, f.bound(), o), "right");
  if (F.left_tail()) absorb(sum_tail(*F.left_tail(), false, first_location(F), eval, f.bound(), o), "left");

  d.sequence = {sums.positive, sums.negative};
  if (pos_div && neg_div) {
    d.notes.push_back("integrals of f+ and f- both diverge");
    return IntegralResult::undefined(std::move(d));
  }
  if (pos_div || neg_div) {
    if (!unsettled.empty()) {
      d.notes.push_back("the other part looked convergent within the term budget");
      d.estimated = true;
    }
    return pos_div ? IntegralResult::pos_infinite(std::move(d)) : IntegralResult::neg_infinite(std::move(d));
  }
  if (!unsettled.empty()) {
    std::string msg = "cannot certify the atom sum after " + std::to_string(o.max_tail_terms) + " tail terms:";
    for (const std::string& u : unsettled) msg += " " + u + ";";
    throw CannotCertifyError(msg);
  }
  return IntegralResult::finite(sums.positive - sums.negative, std::move(d));
}

IntegralResult ls_integral_mixed(const Integrand& f, const MixedDF& F, double quad_tol, double truncation_tol) {
  (void)truncation_tol;  // finitely many atoms: nothing to truncate
  require_measure_ready(F);
  if (!F.segments_non_decreasing()) {
    throw PreconditionError("Lebesgue-Stieltjes integration needs non-decreasing segments");
  }
  std::vector<double> locations;
  std::vector<double> masses;
  for (const JumpPoint& j : F.jumps()) {
    locations.push_back(j.location);
    masses.push_back(j.mass);
  }
  std::vector<double> values = f.evaluate_all(locations);
  kernels::PartSums sums = kernels::split_parts(masses, values);

  IntegralResult::Diagnostics d;
  d.terms = masses.size();
  double continuous = 0.0;
  for (std::size_t g = 0; g < F.gap_count(); ++g) {
    Gap gap = F.gap(g);
    if (gap.is_plateau() || gap.is_empty()) continue;
    double part = 0.0;
    try {
      part = adaptive_rs_continuous(f, *gap.segment, gap.lo, gap.hi, quad_tol);
    } catch (const QuadratureError& e) {
      throw QuadratureError("gap ]" + format_double(gap.lo) + ", " + format_double(gap.hi) + "[: " + e.what());
    }
    continuous += part;
    ++d.terms;
  }
  // Finitely many atoms and bounded gaps: both parts are finite.
  d.sequence = {sums.positive, sums.negative, continuous};
  return IntegralResult::finite(sums.positive - sums.negative + continuous, std::move(d));
}

IntegralResult ls_integral(const Integrand& f, const Distribution& F, const LsOptions& options, double quad_tol) {
  if (const auto* s = std::get_if<StepDF>(&F)) return ls_integral_step(f, *s, options);
  return ls_integral_mixed(f, std::get<MixedDF>(F), quad_tol, options.truncation_tol);
}

}  // namespace stieltjes
