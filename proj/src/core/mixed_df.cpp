#include "stieltjes/mixed_df.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stieltjes/errors.hpp"
#include "stieltjes/extended_real.hpp"

namespace stieltjes {

namespace {

constexpr double kMassConsistencyTol = 1e-9;

std::string at(double x) { return "jump at x = " + format_double(x); }

double eval_segment(const SegmentFn& fn, double x) {
  const double v = fn(x);
  if (!std::isfinite(v)) {
    throw EvaluationError("segment is not finite at x = " + format_double(x));
  }
  return v;
}

}  // namespace

MixedDF::MixedDF(Domain domain, double base_level, std::vector<JumpSpec> jumps,
                 std::vector<std::optional<SegmentFn>> segments, bool signed_masses)
    : domain_(domain), base_(base_level), signed_(signed_masses) {
  if (!std::isfinite(base_level)) throw InvalidArgument("base level is not finite");
  const std::size_t p = jumps.size();
  if (!segments.empty() && segments.size() != p + 1) {
    std::ostringstream os;
    os << "expected " << p + 1 << " gap segments, got " << segments.size();
    throw InvalidArgument(os.str());
  }
  segments.resize(p + 1);

  for (std::size_t i = 0; i < p; ++i) {
    const JumpSpec& j = jumps[i];
    if (!std::isfinite(j.location) || !std::isfinite(j.mass)) {
      throw InvalidArgument("non-finite jump data (" + at(j.location) + ")");
    }
    if (i > 0 && !(j.location > jumps[i - 1].location)) {
      throw InvalidArgument("jump locations must be strictly increasing (" + at(j.location) + ")");
    }
    if (!domain_.contains(j.location)) throw InvalidArgument(at(j.location) + " lies outside the domain");
    if (j.mass == 0.0) throw InvalidArgument("zero mass is not a discontinuity (" + at(j.location) + ")");
    if (!signed_ && j.mass < 0.0) {
      throw InvalidArgument("negative mass needs signed mode (" + at(j.location) + ")");
    }
  }

  gaps_.reserve(p + 1);
  for (std::size_t g = 0; g <= p; ++g) {
    const double lo = g == 0 ? domain_.lo() : jumps[g - 1].location;
    const double hi = g == p ? domain_.hi() : jumps[g].location;
    GapData gap{lo, hi, std::move(segments[g]), 0.0, 0.0};
    if (gap.segment) {
      if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidArgument("segments are only allowed on bounded gaps");
      }
      if (!(lo < hi)) throw InvalidArgument("segment given for an empty gap at x = " + format_double(lo));
    }
    gaps_.push_back(std::move(gap));
  }

  // Walk left to right carrying F(x-0) across each jump.
  GapData& first = gaps_.front();
  if (first.segment) {
    base_ = eval_segment(*first.segment, first.lo);
    first.left_end = base_;
    first.right_end = eval_segment(*first.segment, first.hi);
  } else {
    first.left_end = first.right_end = base_;
  }
  jumps_.reserve(p);
  for (std::size_t i = 0; i < p; ++i) {
    const double left = gaps_[i].right_end;
    const double right = left + jumps[i].mass;
    GapData& next = gaps_[i + 1];
    if (next.segment) {
      next.left_end = eval_segment(*next.segment, next.lo);
      next.right_end = eval_segment(*next.segment, next.hi);
      const double scale = std::max({1.0, std::abs(left), std::abs(next.left_end)});
      if (std::abs(next.left_end - right) > kMassConsistencyTol * scale) {
        std::ostringstream os;
        os << "segment after " << at(jumps[i].location) << " starts at " << format_double(next.left_end)
           << " but F(x-0) + mass = " << format_double(right);
        throw InvalidArgument(os.str());
      }
    } else {
      next.left_end = next.right_end = right;
    }
    const double r = next.left_end;
    double value = r;
    if (jumps[i].value_at) {
      value = *jumps[i].value_at;
      if (!std::isfinite(value) || value < std::min(left, r) || value > std::max(left, r)) {
        throw InvalidArgument("value_at " + format_double(value) + " outside its admissible interval (" +
                              at(jumps[i].location) + ")");
      }
    }
    jumps_.push_back({jumps[i].location, jumps[i].mass, value});
  }
}

MixedDF MixedDF::from_step(const StepDF& step) {
  if (step.has_tails()) throw PreconditionError("step function with generated tails has no finite mixed form");
  std::vector<JumpSpec> specs;
  for (const JumpPoint& j : step.jumps()) {
    specs.push_back({j.location, j.mass, j.value_at});
  }
  return MixedDF(step.domain(), step.base_level(), std::move(specs), {}, step.is_signed());
}

Gap MixedDF::gap(std::size_t g) const {
  const GapData& d = gaps_.at(g);
  return {d.lo, d.hi, d.segment ? &*d.segment : nullptr, d.left_end, d.right_end};
}

double MixedDF::gap_value(const GapData& g, double x) const {
  if (!g.segment) return g.left_end;
  return eval_segment(*g.segment, x);
}

Probe MixedDF::probe(double x) const {
  domain_.require(x);
  auto it = std::lower_bound(jumps_.begin(), jumps_.end(), x,
                             [](const JumpPoint& j, double v) { return j.location < v; });
  const auto i = static_cast<std::size_t>(it - jumps_.begin());
  if (it != jumps_.end() && it->location == x) {
    return {gaps_[i].right_end, it->value_at, gaps_[i + 1].left_end, true};
  }
  const double v = gap_value(gaps_[i], x);
  return {v, v, v, false};
}

bool MixedDF::is_right_continuous() const noexcept { return !first_non_right_continuous().has_value(); }

std::optional<JumpPoint> MixedDF::first_non_right_continuous() const {
  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    if (jumps_[i].value_at != gaps_[i + 1].left_end) return jumps_[i];
  }
  return std::nullopt;
}

bool MixedDF::segments_non_decreasing(std::size_t samples) const {
  for (const GapData& g : gaps_) {
    if (!g.segment) continue;
    double prev = g.left_end;
    for (std::size_t k = 1; k <= samples; ++k) {
      const double x = k == samples ? g.hi : g.lo + (g.hi - g.lo) * static_cast<double>(k) / samples;
      const double v = eval_segment(*g.segment, x);
      if (v < prev) return false;
      prev = v;
    }
  }
  return true;
}

std::vector<double> MixedDF::evaluate_sorted(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  if (!xs.empty()) {
    domain_.require(xs.front());
    domain_.require(xs.back());
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    while (k < jumps_.size() && jumps_[k].location < x) ++k;
    if (k < jumps_.size() && jumps_[k].location == x) {
      out[i] = jumps_[k].value_at;
    } else {
      out[i] = gap_value(gaps_[k], x);
    }
  }
  return out;
}

}  // namespace stieltjes
