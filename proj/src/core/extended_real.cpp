#include "stieltjes/extended_real.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

#include "stieltjes/errors.hpp"

namespace stieltjes {

ExtendedReal ExtendedReal::finite(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("finite extended real built from a non-finite double");
  return ExtendedReal(Kind::finite, value);
}

double ExtendedReal::to_double() const noexcept {
  switch (kind_) {
    case Kind::pos_infinity:
      return HUGE_VAL;
    case Kind::neg_infinity:
      return -HUGE_VAL;
    case Kind::finite:
      break;
  }
  return value_;
}

double ExtendedReal::value() const {
  if (kind_ != Kind::finite) throw PreconditionError("extended real is infinite");
  return value_;
}

std::string ExtendedReal::to_string() const {
  switch (kind_) {
    case Kind::pos_infinity:
      return "+inf";
    case Kind::neg_infinity:
      return "-inf";
    case Kind::finite:
      break;
  }
  return format_double(value_);
}

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) { return os << x.to_string(); }

std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

}  // namespace stieltjes
