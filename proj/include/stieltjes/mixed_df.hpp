#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stieltjes/domain.hpp"
#include "stieltjes/step_df.hpp"

namespace stieltjes {

using SegmentFn = std::function<double(double)>;

/// One open gap between consecutive breakpoints of a MixedDF. `lo`/`hi`
/// are infinite for the outer gaps of a whole-line function.
struct Gap {
  double lo = 0.0;
  double hi = 0.0;
  /// Continuous on [lo, hi]; absent for a constant plateau.
  const SegmentFn* segment = nullptr;
  /// F(lo+0) and F(hi-0).
  double left_end = 0.0;
  double right_end = 0.0;

  bool is_plateau() const noexcept { return segment == nullptr; }
  bool is_empty() const noexcept { return !(lo < hi); }
};

/// Finite set of jumps with a continuous (or constant) piece of F on each gap.
///
/// Gaps are indexed 0..p for p jumps. A segment must be continuous on the
/// closure of its gap and is only allowed on bounded gaps. Plateau levels are
/// carried forward from the left: the level after jump k is F(x_k-0) + m_k.
/// Where a segment starts after a jump, its left end must equal
/// F(x_k-0) + m_k to within a relative 1e-9.
class MixedDF {
 public:
  /// `segments` is empty (all plateaus) or holds one entry per gap.
  MixedDF(Domain domain, double base_level, std::vector<JumpSpec> jumps,
          std::vector<std::optional<SegmentFn>> segments, bool signed_masses = false);

  /// The same step function seen as a mixed one with constant segments.
  /// Throws PreconditionError for step functions with generated tails.
  static MixedDF from_step(const StepDF& step);

  const Domain& domain() const noexcept { return domain_; }
  /// Level of gap 0; for a gap-0 segment this is the segment's value at lo.
  double base_level() const noexcept { return base_; }
  bool is_signed() const noexcept { return signed_; }

  std::span<const JumpPoint> jumps() const noexcept { return jumps_; }
  std::size_t gap_count() const noexcept { return gaps_.size(); }
  Gap gap(std::size_t g) const;

  Probe probe(double x) const;
  double evaluate(double x) const { return probe(x).value; }
  double left_limit(double x) const { return probe(x).left; }
  double right_limit(double x) const { return probe(x).right; }

  bool is_right_continuous() const noexcept;
  std::optional<JumpPoint> first_non_right_continuous() const;

  /// Checks every segment for monotone non-decrease on `samples` + 1
  /// equally spaced points of its gap.
  bool segments_non_decreasing(std::size_t samples = 256) const;

  std::vector<double> evaluate_sorted(std::span<const double> xs) const;

 private:
  struct GapData {
    double lo;
    double hi;
    std::optional<SegmentFn> segment;
    double left_end;
    double right_end;
  };
  double gap_value(const GapData& g, double x) const;

  Domain domain_;
  double base_;
  bool signed_;
  std::vector<JumpPoint> jumps_;
  std::vector<GapData> gaps_;
};

}  // namespace stieltjes
