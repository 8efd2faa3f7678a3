#include "stieltjes/expr/to_integrand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "stieltjes/errors.hpp"
#include "stieltjes/expr/evaluate.hpp"

namespace stieltjes::expr {

namespace {

constexpr std::size_t kScanSamples = 2048;
constexpr std::size_t kMaxBreakpoints = 1'000'000;
constexpr double kJumpRelTol = 1e-12;

struct Candidate {
  double x;
  bool approximate;
};

struct Affine {
  double slope;
  double intercept;
};

std::optional<Affine> affine(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::optional<Affine> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          return Affine{0.0, n.value};
        } else if constexpr (std::is_same_v<T, Variable>) {
          return Affine{1.0, 0.0};
        } else if constexpr (std::is_same_v<T, Unary>) {
          auto a = affine(*n.operand);
          if (!a) return std::nullopt;
          return Affine{-a->slope, -a->intercept};
        } else if constexpr (std::is_same_v<T, Binary>) {
          auto a = affine(*n.lhs);
          auto b = affine(*n.rhs);
          if (!a || !b) return std::nullopt;
          switch (n.op) {
            case BinaryOp::add:
              return Affine{a->slope + b->slope, a->intercept + b->intercept};
            case BinaryOp::sub:
              return Affine{a->slope - b->slope, a->intercept - b->intercept};
            case BinaryOp::mul:
              if (a->slope == 0.0) return Affine{a->intercept * b->slope, a->intercept * b->intercept};
              if (b->slope == 0.0) return Affine{b->intercept * a->slope, b->intercept * a->intercept};
              return std::nullopt;
            case BinaryOp::div:
              if (b->slope != 0.0 || b->intercept == 0.0) return std::nullopt;
              return Affine{a->slope / b->intercept, a->intercept / b->intercept};
            case BinaryOp::pow:
              return std::nullopt;
          }
          return std::nullopt;
        } else {
          return std::nullopt;
        }
      },
      e.node);
}

std::optional<double> try_eval(const Expr& e, double x) {
  try {
    return evaluate(e, x);
  } catch (const EvaluationError&) {
    return std::nullopt;
  }
}

// Narrows [l, r] to adjacent doubles around the point where pred flips from
// pred(l) to !pred(l); returns the first point with the new state.
template <class Pred>
double bisect(double l, double r, Pred pred) {
  const bool left_state = pred(l);
  for (int it = 0; it < 200; ++it) {
    double m = l + 0.5 * (r - l);
    if (!(m > l && m < r)) break;
    if (pred(m) == left_state) l = m;
    else r = m;
  }
  return r;
}

void push(std::vector<Candidate>& out, double x, bool approximate, double lo, double hi) {
  if (x > lo && x < hi) out.push_back({x, approximate});
  if (out.size() > kMaxBreakpoints) throw InvalidArgument("expression has too many breakpoints in the range");
}

void scan_sign(const Expr& arg, double lo, double hi, std::vector<Candidate>& out) {
  std::vector<double> t(kScanSamples + 1);
  std::vector<std::optional<double>> g(kScanSamples + 1);
  for (std::size_t i = 0; i <= kScanSamples; ++i) {
    t[i] = i == kScanSamples ? hi : lo + (hi - lo) * (static_cast<double>(i) / kScanSamples);
    g[i] = try_eval(arg, t[i]);
    if (g[i] && *g[i] == 0.0) push(out, t[i], false, lo, hi);
  }
  for (std::size_t i = 0; i < kScanSamples; ++i) {
    if (!g[i] || !g[i + 1]) continue;
    if ((*g[i] < 0.0 && *g[i + 1] > 0.0) || (*g[i] > 0.0 && *g[i + 1] < 0.0)) {
      double c = bisect(t[i], t[i + 1], [&](double s) {
        auto v = try_eval(arg, s);
        return v && *v > 0.0;
      });
      push(out, c, true, lo, hi);
    }
  }
}

void scan_floor(const Expr& arg, double lo, double hi, std::vector<Candidate>& out) {
  std::vector<double> t(kScanSamples + 1);
  std::vector<std::optional<double>> g(kScanSamples + 1);
  for (std::size_t i = 0; i <= kScanSamples; ++i) {
    t[i] = i == kScanSamples ? hi : lo + (hi - lo) * (static_cast<double>(i) / kScanSamples);
    g[i] = try_eval(arg, t[i]);
  }
  for (std::size_t i = 0; i < kScanSamples; ++i) {
    if (!g[i] || !g[i + 1]) continue;
    double f0 = std::floor(*g[i]);
    double f1 = std::floor(*g[i + 1]);
    if (f0 == f1) continue;
    double kmin = std::min(f0, f1) + 1.0;
    double kmax = std::max(f0, f1);
    for (double k = kmin; k <= kmax && k - kmin < 64.0; k += 1.0) {
      double c = bisect(t[i], t[i + 1], [&](double s) {
        auto v = try_eval(arg, s);
        return v && *v >= k;
      });
      push(out, c, true, lo, hi);
    }
  }
}

void collect(const Expr& e, double lo, double hi, std::vector<Candidate>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Unary>) {
          collect(*n.operand, lo, hi, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect(*n.lhs, lo, hi, out);
          collect(*n.rhs, lo, hi, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          collect(*n.arg, lo, hi, out);
          if (n.fn != Func::sign && n.fn != Func::floor) return;
          if (auto a = affine(*n.arg)) {
            if (a->slope == 0.0) return;
            auto at = [&](double level) {
              double c = (level - a->intercept) / a->slope;
              auto v = try_eval(*n.arg, c);
              push(out, c, !v || *v != level, lo, hi);
            };
            if (n.fn == Func::sign) {
              at(0.0);
            } else {
              double g0 = a->slope * lo + a->intercept;
              double g1 = a->slope * hi + a->intercept;
              for (double k = std::ceil(std::min(g0, g1)); k <= std::max(g0, g1); k += 1.0) at(k);
            }
          } else if (n.fn == Func::sign) {
            scan_sign(*n.arg, lo, hi, out);
          } else {
            scan_floor(*n.arg, lo, hi, out);
          }
        } else if constexpr (std::is_same_v<T, Piecewise>) {
          for (const Piece& p : n.pieces) {
            if (p.guard.lo) push(out, *p.guard.lo, false, lo, hi);
            if (p.guard.hi) push(out, *p.guard.hi, false, lo, hi);
            collect(*p.body, lo, hi, out);
          }
          if (n.otherwise) collect(*n.otherwise, lo, hi, out);
        }
      },
      e.node);
}

bool differs(double limit, double value) {
  return std::fabs(limit - value) > kJumpRelTol * std::max(1.0, std::fabs(value));
}

std::optional<Discontinuity> inspect(const Expr& e, double c, bool approximate) {
  double v = 0.0;
  double l = 0.0;
  double r = 0.0;
  try {
    v = evaluate(e, c);
    l = one_sided(e, c, -1).value;
    r = one_sided(e, c, +1).value;
  } catch (const EvaluationError&) {
    return std::nullopt;
  }
  if (differs(l, v) || differs(r, v)) return Discontinuity{c, l, r, v};
  if (!approximate) return std::nullopt;
  // The candidate only brackets the crossing; look at the neighbouring doubles.
  auto ln = try_eval(e, std::nextafter(c, -std::numeric_limits<double>::infinity()));
  auto rn = try_eval(e, std::nextafter(c, std::numeric_limits<double>::infinity()));
  if (!ln || !rn) return std::nullopt;
  if (differs(*ln, v) || differs(*rn, v)) return Discontinuity{c, *ln, *rn, v};
  return std::nullopt;
}

Integrand build(ExprPtr e, std::vector<Discontinuity> found, std::optional<double> bound) {
  const Expr* raw = e.get();
  return Integrand([keep = std::move(e), raw](double x) { return evaluate(*raw, x); }, bound, std::move(found));
}

}  // namespace

std::vector<double> breakpoint_candidates(const Expr& e, double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidArgument("breakpoint range must be finite with lo < hi");
  }
  std::vector<Candidate> c;
  collect(e, lo, hi, c);
  std::vector<double> out;
  for (const Candidate& k : c) out.push_back(k.x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Integrand to_integrand(ExprPtr e, double lo, double hi, std::optional<double> bound) {
  if (!e) throw InvalidArgument("expression is missing");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidArgument("integrand range must be finite with lo < hi");
  }
  std::vector<Candidate> c;
  collect(*e, lo, hi, c);
  std::sort(c.begin(), c.end(), [](const Candidate& a, const Candidate& b) {
    return a.x < b.x || (a.x == b.x && !a.approximate && b.approximate);
  });
  std::vector<Discontinuity> found;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0 && c[i].x == c[i - 1].x) continue;
    if (auto d = inspect(*e, c[i].x, c[i].approximate)) found.push_back(*d);
  }
  return build(std::move(e), std::move(found), bound);
}

Integrand to_integrand_at(ExprPtr e, const std::vector<double>& points, std::optional<double> bound) {
  if (!e) throw InvalidArgument("expression is missing");
  std::vector<double> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Discontinuity> found;
  for (double x : sorted) {
    if (auto d = inspect(*e, x, false)) found.push_back(*d);
  }
  return build(std::move(e), std::move(found), bound);
}

}  // namespace stieltjes::expr
