#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace stieltjes {

/// A declared discontinuity of the integrand, with optional one-sided limits.
struct Discontinuity {
  double location = 0.0;
  std::optional<double> left_limit;
  std::optional<double> right_limit;
  double value = 0.0;

  /// True when both limits are declared and coincide with the value, i.e.
  /// the declaration does not actually describe a jump.
  bool describes_continuity() const noexcept {
    return left_limit && right_limit && *left_limit == value && *right_limit == value;
  }
};

/// The integrand f: a real function with an optional bound |f| <= M and a
/// list of declared discontinuities. Anything not declared is treated as a
/// continuity point; numeric probing never upgrades a point to continuous.
class Integrand {
 public:
  using Fn = std::function<double(double)>;

  /// Throws InvalidArgument when a declared value disagrees with fn or a
  /// declared limit is not finite.
  explicit Integrand(Fn fn, std::optional<double> bound = std::nullopt,
                     std::vector<Discontinuity> discontinuities = {});

  /// Throws EvaluationError for non-finite values or |f(x)| > bound.
  double operator()(double x) const;

  const std::optional<double>& bound() const noexcept { return bound_; }
  std::span<const Discontinuity> discontinuities() const noexcept { return discontinuities_; }

  /// The declaration at exactly x, if any.
  const Discontinuity* discontinuity_at(double x) const noexcept;
  /// No declaration at x, or one whose limits equal the value.
  bool declared_continuous_at(double x) const noexcept;

  /// Evaluate at each point.
  std::vector<double> evaluate_all(std::span<const double> xs) const;

 private:
  Fn fn_;
  std::optional<double> bound_;
  std::vector<Discontinuity> discontinuities_;
};

struct OneSidedLimits {
  double left = 0.0;
  double right = 0.0;
  /// Set when at least one side came from numeric probing.
  bool estimated = false;
};

inline constexpr std::size_t kDefaultProbeSteps = 20;
inline constexpr double kDefaultProbeStep0 = 1e-3;

/// f(x-0), f(x+0). Declared limits win; otherwise f is sampled at
/// x -/+ step0 * 2^-k for k < fallback_steps and the last sample is reported.
OneSidedLimits one_sided_limits_f(const Integrand& f, double x,
                                  std::size_t fallback_steps = kDefaultProbeSteps,
                                  double step0 = kDefaultProbeStep0);

}  // namespace stieltjes
