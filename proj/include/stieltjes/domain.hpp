#pragma once

#include <limits>

namespace stieltjes {

/// Either the whole real line or a closed interval [lo, hi] with lo < hi.
class Domain {
 public:
  static Domain whole_line() noexcept { return Domain(); }
  /// Throws InvalidArgument unless lo < hi and both are finite.
  static Domain interval(double lo, double hi);

  bool is_whole_line() const noexcept { return whole_line_; }
  bool is_bounded() const noexcept { return !whole_line_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }
  bool contains(double a, double b) const noexcept { return contains(a) && contains(b); }

  /// Throws DomainError when x lies outside.
  void require(double x) const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  Domain() noexcept = default;

  bool whole_line_ = true;
  double lo_ = -std::numeric_limits<double>::infinity();
  double hi_ = std::numeric_limits<double>::infinity();
};

}  // namespace stieltjes
