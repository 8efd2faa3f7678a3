#pragma once

#include <iosfwd>
#include <string>

namespace stieltjes {

/// A point of the extended real line. Finite values are never NaN or
/// infinite; the two infinities are separate states.
class ExtendedReal {
 public:
  enum class Kind { finite, pos_infinity, neg_infinity };

  /// Throws InvalidArgument for NaN or infinite input.
  static ExtendedReal finite(double value);
  static ExtendedReal pos_infinity() noexcept { return ExtendedReal(Kind::pos_infinity, 0.0); }
  static ExtendedReal neg_infinity() noexcept { return ExtendedReal(Kind::neg_infinity, 0.0); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }

  /// Finite value, or +/-HUGE_VAL for the infinities.
  double to_double() const noexcept;
  /// Throws PreconditionError when not finite.
  double value() const;

  std::string to_string() const;

  friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

 private:
  ExtendedReal(Kind k, double v) noexcept : kind_(k), value_(v) {}

  Kind kind_;
  double value_;
};

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace stieltjes
