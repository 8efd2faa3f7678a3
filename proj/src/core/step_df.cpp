#include "stieltjes/step_df.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stieltjes/errors.hpp"
#include "stieltjes/extended_real.hpp"

namespace stieltjes {

namespace {

std::string at(double x) { return "jump at x = " + format_double(x); }

void check_finite(double v, const char* what, double loc) {
  if (!std::isfinite(v)) {
    throw InvalidArgument(std::string(what) + " is not finite (" + at(loc) + ")");
  }
}

}  // namespace

StepDF::StepDF(Domain domain, double base_level, std::vector<JumpSpec> jumps, bool signed_masses,
               std::optional<JumpTail> right_tail, std::optional<JumpTail> left_tail)
    : domain_(domain),
      base_(base_level),
      signed_(signed_masses),
      right_tail_(std::move(right_tail)),
      left_tail_(std::move(left_tail)) {
  if (!std::isfinite(base_level)) throw InvalidArgument("base level is not finite");
  if (right_tail_ && !right_tail_->jump) throw InvalidArgument("right tail has no generator");
  if (left_tail_ && !left_tail_->jump) throw InvalidArgument("left tail has no generator");

  jumps_.reserve(jumps.size());
  levels_.reserve(jumps.size() + 1);
  levels_.push_back(base_);
  double level = base_;
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    const JumpSpec& j = jumps[i];
    check_finite(j.location, "location", j.location);
    check_finite(j.mass, "mass", j.location);
    if (i > 0 && !(j.location > jumps[i - 1].location)) {
      throw InvalidArgument("jump locations must be strictly increasing (" + at(j.location) + ")");
    }
    if (!domain_.contains(j.location)) {
      throw InvalidArgument(at(j.location) + " lies outside the domain");
    }
    if (j.mass == 0.0) throw InvalidArgument("zero mass is not a discontinuity (" + at(j.location) + ")");
    if (!signed_ && j.mass < 0.0) {
      throw InvalidArgument("negative mass needs signed mode (" + at(j.location) + ")");
    }
    const double left = level;
    level = level + j.mass;
    const double right = level;
    double value = right;
    if (j.value_at) {
      value = *j.value_at;
      check_finite(value, "value_at", j.location);
      if (value < std::min(left, right) || value > std::max(left, right)) {
        std::ostringstream os;
        os << "value_at " << format_double(value) << " outside [" << format_double(std::min(left, right))
           << ", " << format_double(std::max(left, right)) << "] (" << at(j.location) << ")";
        throw InvalidArgument(os.str());
      }
    }
    jumps_.push_back({j.location, j.mass, value});
    levels_.push_back(level);
  }
}

StepDF StepDF::heaviside(double at_x, double mass) {
  return StepDF(Domain::whole_line(), 0.0, {{at_x, mass, std::nullopt}}, mass < 0.0);
}

bool StepDF::is_right_continuous() const noexcept { return !first_non_right_continuous().has_value(); }

std::optional<JumpPoint> StepDF::first_non_right_continuous() const {
  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    if (jumps_[i].value_at != levels_[i + 1]) return jumps_[i];
  }
  return std::nullopt;
}

Probe StepDF::probe_materialized(double x) const {
  auto it = std::lower_bound(jumps_.begin(), jumps_.end(), x,
                             [](const JumpPoint& j, double v) { return j.location < v; });
  const auto i = static_cast<std::size_t>(it - jumps_.begin());
  if (it != jumps_.end() && it->location == x) {
    return {levels_[i], it->value_at, levels_[i + 1], true};
  }
  return {levels_[i], levels_[i], levels_[i], false};
}

Probe StepDF::walk_right(double x, std::size_t budget) const {
  double level = levels_.back();
  if (!right_tail_) return {level, level, level, false};
  double prev = jumps_.empty() ? -std::numeric_limits<double>::infinity() : jumps_.back().location;
  for (std::size_t k = 0;; ++k) {
    if (k >= budget) throw CannotCertifyError("right tail walk exceeded the enumeration budget");
    auto tj = right_tail_->jump(k);
    if (!tj) break;
    if (!(tj->location > prev)) {
      throw AccumulationError("right tail locations stop increasing near " + format_double(prev));
    }
    if (tj->location > x) break;
    if (tj->location == x) return {level, level + tj->mass, level + tj->mass, true};
    level += tj->mass;
    prev = tj->location;
  }
  return {level, level, level, false};
}

Probe StepDF::walk_left(double x, std::size_t budget) const {
  double level = base_;
  if (!left_tail_) return {level, level, level, false};
  double prev = jumps_.empty() ? std::numeric_limits<double>::infinity() : jumps_.front().location;
  for (std::size_t k = 0;; ++k) {
    if (k >= budget) throw CannotCertifyError("left tail walk exceeded the enumeration budget");
    auto tj = left_tail_->jump(k);
    if (!tj) break;
    if (!(tj->location < prev)) {
      throw AccumulationError("left tail locations stop decreasing near " + format_double(prev));
    }
    if (tj->location < x) break;
    if (tj->location == x) return {level - tj->mass, level, level, true};
    level -= tj->mass;
    prev = tj->location;
  }
  return {level, level, level, false};
}

Probe StepDF::probe(double x, std::size_t budget) const {
  domain_.require(x);
  if (!jumps_.empty()) {
    if (x < jumps_.front().location) return walk_left(x, budget);
    if (x > jumps_.back().location) return walk_right(x, budget);
    return probe_materialized(x);
  }
  if (left_tail_) {
    auto first = left_tail_->jump(0);
    if (first && x <= first->location) return walk_left(x, budget);
  }
  return walk_right(x, budget);
}

std::vector<StepDF::Located> StepDF::collect(double a, double b, std::size_t budget) const {
  std::vector<Located> out;
  if (a > b) return out;

  if (left_tail_) {
    std::vector<Located> left;
    double level = base_;
    double prev = jumps_.empty() ? std::numeric_limits<double>::infinity() : jumps_.front().location;
    for (std::size_t k = 0;; ++k) {
      if (k >= budget) throw CannotCertifyError("left tail walk exceeded the enumeration budget");
      auto tj = left_tail_->jump(k);
      if (!tj) break;
      if (!(tj->location < prev)) {
        throw AccumulationError("left tail locations stop decreasing near " + format_double(prev));
      }
      if (tj->location < a) break;
      if (tj->location <= b) left.push_back({{tj->location, tj->mass, level}, level});
      level -= tj->mass;
      prev = tj->location;
    }
    out.assign(left.rbegin(), left.rend());
  }

  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    const JumpPoint& j = jumps_[i];
    if (j.location >= a && j.location <= b) out.push_back({j, levels_[i + 1]});
  }

  if (right_tail_) {
    double level = levels_.back();
    double prev = jumps_.empty() ? -std::numeric_limits<double>::infinity() : jumps_.back().location;
    for (std::size_t k = 0;; ++k) {
      if (k >= budget) throw CannotCertifyError("right tail walk exceeded the enumeration budget");
      auto tj = right_tail_->jump(k);
      if (!tj) break;
      if (!(tj->location > prev)) {
        throw AccumulationError("right tail locations stop increasing near " + format_double(prev));
      }
      if (tj->location > b) break;
      level += tj->mass;
      if (tj->location >= a) out.push_back({{tj->location, tj->mass, level}, level});
      prev = tj->location;
    }
  }
  return out;
}

std::vector<JumpPoint> StepDF::jumps_in(double a, double b, std::size_t budget) const {
  std::vector<JumpPoint> out;
  for (const Located& l : collect(a, b, budget)) out.push_back(l.jump);
  return out;
}

StepDF StepDF::window(double a, double b, std::size_t budget) const {
  if (!(a < b)) throw DomainError("window needs a < b");
  domain_.require(a);
  domain_.require(b);
  const std::vector<Located> inside = collect(a, b, budget);
  const double base = probe(a, budget).left;
  std::vector<JumpSpec> specs;
  specs.reserve(inside.size());
  // Window levels are re-accumulated from F(a-0) and can differ from the
  // original levels in the last bit, so non-right-continuous values are
  // clamped into the window's admissible interval.
  double level = base;
  for (const Located& l : inside) {
    JumpSpec s{l.jump.location, l.jump.mass, std::nullopt};
    if (l.jump.value_at != l.right_level) {
      const double lo = std::min(level, level + s.mass);
      const double hi = std::max(level, level + s.mass);
      s.value_at = std::clamp(l.jump.value_at, lo, hi);
    }
    level += s.mass;
    specs.push_back(s);
  }
  return StepDF(Domain::interval(a, b), base, std::move(specs), signed_);
}

std::vector<double> StepDF::evaluate_sorted(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  if (has_tails()) {
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = evaluate(xs[i]);
    return out;
  }
  if (!xs.empty()) {
    domain_.require(xs.front());
    domain_.require(xs.back());
  }
  std::size_t k = 0;  // jumps strictly left of the current point
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    while (k < jumps_.size() && jumps_[k].location < x) ++k;
    if (k < jumps_.size() && jumps_[k].location == x) {
      out[i] = jumps_[k].value_at;
    } else {
      out[i] = levels_[k];
    }
  }
  return out;
}

}  // namespace stieltjes
