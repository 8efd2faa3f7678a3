#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stieltjes/domain.hpp"

namespace stieltjes {

/// Maximum number of generated jumps any single walk over a tail may visit.
inline constexpr std::size_t kDefaultEnumerationBudget = 10'000'000;

/// Construction input for one jump. Without `value_at` the jump follows the
/// right-continuous convention, F(x) = F(x+0).
struct JumpSpec {
  double location = 0.0;
  double mass = 0.0;
  std::optional<double> value_at;
};

/// A resolved discontinuity of a distribution function.
struct JumpPoint {
  double location = 0.0;
  /// F(x+0) - F(x-0); never zero.
  double mass = 0.0;
  /// F(x) itself, somewhere between the two one-sided limits.
  double value_at = 0.0;

  friend bool operator==(const JumpPoint&, const JumpPoint&) = default;
};

struct TailJump {
  double location = 0.0;
  double mass = 0.0;
};

/// Generated continuation of a jump family past the materialized window.
/// Generated jumps are always right-continuous.
struct JumpTail {
  /// The k-th jump beyond the window, moving outward (increasing locations
  /// for a right tail, decreasing for a left tail); nullopt ends the family.
  std::function<std::optional<TailJump>(std::size_t k)> jump;
  /// Upper bound on the sum of |mass| over jumps k, k+1, ...; empty when
  /// the caller cannot bound the tail.
  std::function<double(std::size_t k)> remaining_mass_bound;
};

/// F(x-0), F(x), F(x+0) at a single point.
struct Probe {
  double left = 0.0;
  double value = 0.0;
  double right = 0.0;
  bool is_jump = false;
};

/// Step distribution function: constant between consecutive jumps.
///
/// `base_level` is the plateau immediately left of the first materialized
/// jump. Without a left tail that is F(-inf) on the whole line, or F(lo-0)
/// on an interval domain (a jump located exactly at lo then encodes
/// F(lo) != F(lo+0)). Plateau levels are the running sums
/// base + m_1 + ... + m_k accumulated left to right.
class StepDF {
 public:
  StepDF(Domain domain, double base_level, std::vector<JumpSpec> jumps, bool signed_masses = false,
         std::optional<JumpTail> right_tail = std::nullopt,
         std::optional<JumpTail> left_tail = std::nullopt);

  /// Unit step at `at`, right-continuous, base 0, on the whole line.
  static StepDF heaviside(double at = 0.0, double mass = 1.0);

  const Domain& domain() const noexcept { return domain_; }
  double base_level() const noexcept { return base_; }
  bool is_signed() const noexcept { return signed_; }

  /// Materialized jumps, strictly increasing in location.
  std::span<const JumpPoint> jumps() const noexcept { return jumps_; }
  /// levels[k] is the plateau right of the k-th materialized jump (k >= 1)
  /// and levels[0] == base_level.
  std::span<const double> plateau_levels() const noexcept { return levels_; }

  const std::optional<JumpTail>& right_tail() const noexcept { return right_tail_; }
  const std::optional<JumpTail>& left_tail() const noexcept { return left_tail_; }
  bool has_tails() const noexcept { return right_tail_.has_value() || left_tail_.has_value(); }

  Probe probe(double x, std::size_t budget = kDefaultEnumerationBudget) const;
  double evaluate(double x) const { return probe(x).value; }
  double left_limit(double x) const { return probe(x).left; }
  double right_limit(double x) const { return probe(x).right; }

  /// True when every materialized jump has value_at equal to its right limit.
  bool is_right_continuous() const noexcept;
  /// First materialized jump violating right-continuity, if any.
  std::optional<JumpPoint> first_non_right_continuous() const;

  /// Every jump (materialized or generated) located in [a, b], ascending.
  /// Throws AccumulationError when generated locations stop increasing and
  /// CannotCertifyError when the budget runs out.
  std::vector<JumpPoint> jumps_in(double a, double b,
                                  std::size_t budget = kDefaultEnumerationBudget) const;

  /// Finite step function on [a, b] agreeing with this one on [a, b]. Its
  /// base level is F(a-0), so a jump at a keeps its mass and value.
  StepDF window(double a, double b, std::size_t budget = kDefaultEnumerationBudget) const;

  /// F at each point of an ascending sequence; one merge pass for finite
  /// functions.
  std::vector<double> evaluate_sorted(std::span<const double> xs) const;

 private:
  struct Located {
    JumpPoint jump;
    double right_level;  // F(x+0) in this function's own accumulation
  };
  std::vector<Located> collect(double a, double b, std::size_t budget) const;

  Probe probe_materialized(double x) const;
  Probe walk_right(double x, std::size_t budget) const;
  Probe walk_left(double x, std::size_t budget) const;

  Domain domain_;
  double base_;
  bool signed_;
  std::vector<JumpPoint> jumps_;
  std::vector<double> levels_;
  std::optional<JumpTail> right_tail_;
  std::optional<JumpTail> left_tail_;
};

}  // namespace stieltjes
