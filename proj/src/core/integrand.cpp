#include "stieltjes/integrand.hpp"

#include <algorithm>
#include <cmath>

#include "stieltjes/errors.hpp"
#include "stieltjes/extended_real.hpp"

namespace stieltjes {

Integrand::Integrand(Fn fn, std::optional<double> bound, std::vector<Discontinuity> discontinuities)
    : fn_(std::move(fn)), bound_(bound), discontinuities_(std::move(discontinuities)) {
  if (!fn_) throw InvalidArgument("integrand has no function");
  if (bound_ && !(std::isfinite(*bound_) && *bound_ >= 0.0)) {
    throw InvalidArgument("integrand bound must be finite and non-negative");
  }
  std::sort(discontinuities_.begin(), discontinuities_.end(),
            [](const Discontinuity& a, const Discontinuity& b) { return a.location < b.location; });
  for (const Discontinuity& d : discontinuities_) {
    const std::string where = " at x = " + format_double(d.location);
    if ((d.left_limit && !std::isfinite(*d.left_limit)) || (d.right_limit && !std::isfinite(*d.right_limit))) {
      throw InvalidArgument("declared one-sided limit is not finite" + where);
    }
    const double v = fn_(d.location);
    if (v != d.value) {
      throw InvalidArgument("declared value " + format_double(d.value) + " differs from f" + where + " = " +
                            format_double(v));
    }
  }
}

double Integrand::operator()(double x) const {
  const double v = fn_(x);
  if (!std::isfinite(v)) throw EvaluationError("integrand is not finite at x = " + format_double(x));
  if (bound_ && std::abs(v) > *bound_) {
    throw EvaluationError("integrand exceeds its bound " + format_double(*bound_) + " at x = " + format_double(x));
  }
  return v;
}

const Discontinuity* Integrand::discontinuity_at(double x) const noexcept {
  auto it = std::lower_bound(discontinuities_.begin(), discontinuities_.end(), x,
                             [](const Discontinuity& d, double v) { return d.location < v; });
  if (it != discontinuities_.end() && it->location == x) return &*it;
  return nullptr;
}

bool Integrand::declared_continuous_at(double x) const noexcept {
  const Discontinuity* d = discontinuity_at(x);
  return d == nullptr || d->describes_continuity();
}

std::vector<double> Integrand::evaluate_all(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (*this)(xs[i]);
  return out;
}

OneSidedLimits one_sided_limits_f(const Integrand& f, double x, std::size_t fallback_steps, double step0) {
  if (fallback_steps == 0 || !(step0 > 0.0)) {
    throw InvalidArgument("probing needs at least one step and a positive step0");
  }
  OneSidedLimits out;
  const Discontinuity* d = f.discontinuity_at(x);
  auto probe = [&](double sign) {
    double last = 0.0;
    for (std::size_t k = 0; k < fallback_steps; ++k) {
      last = f(x + sign * std::ldexp(step0, -static_cast<int>(k)));
    }
    return last;
  };
  if (d != nullptr && d->left_limit) {
    out.left = *d->left_limit;
  } else {
    out.left = probe(-1.0);
    out.estimated = true;
  }
  if (d != nullptr && d->right_limit) {
    out.right = *d->right_limit;
  } else {
    out.right = probe(1.0);
    out.estimated = true;
  }
  return out;
}

}  // namespace stieltjes
