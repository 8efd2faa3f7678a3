#include "stieltjes/riemann_stieltjes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "stieltjes/errors.hpp"
#include "stieltjes/kernels.hpp"
#include "detail/rs_internal.hpp"

namespace stieltjes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_interval(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("interval end points must be finite");
  if (!(a < b)) throw DomainError("interval needs a < b, got [" + format_double(a) + ", " + format_double(b) + "]");
}

// Tag strictly left (dir = -1) or right (dir = +1) of x, at most `room` away.
double beside(double x, double room, double width, int dir) {
  double delta = std::min(0.5 * room, std::ldexp(width, -20));
  double c = x + dir * delta;
  if (c == x) c = std::nextafter(x, dir < 0 ? -kInf : kInf);
  return c;
}

template <class DF>
double increment_sum(const Integrand& f, const DF& F, std::span<const double> grid, std::span<const double> tags) {
  std::vector<double> levels = F.evaluate_sorted(grid);
  std::vector<double> values = f.evaluate_all(tags);
  return kernels::increment_dot(values, levels);
}

std::vector<double> locations_of(std::span<const JumpPoint> jumps, double a, double b) {
  std::vector<double> out;
  for (const JumpPoint& j : jumps) {
    if (j.location >= a && j.location <= b) out.push_back(j.location);
  }
  return out;
}

// Every closed cell holds at most one jump: a grid point lies strictly between
// each pair of neighbouring jumps. Refinements are nested, so this persists.
bool jumps_separated(const std::vector<double>& grid, const std::vector<double>& jumps) {
  for (std::size_t i = 0; i + 1 < jumps.size(); ++i) {
    auto it = std::upper_bound(grid.begin(), grid.end(), jumps[i]);
    if (it == grid.end() || *it >= jumps[i + 1]) return false;
  }
  return true;
}

// Rows before index `first` still have two jumps of F in one cell and do not
// count towards stabilization.
void settle_verdict(ConvergenceTrace& t, double tol, std::size_t first = 0) {
  if (t.rows.empty()) return;
  t.limit = t.rows.back().sum;
  if (t.rows.size() < first + 3) {
    t.achieved_tol = kInf;
    t.verdict = ConvergenceTrace::Verdict::not_converged;
    return;
  }
  auto last = t.rows.end() - 3;
  auto [lo, hi] = std::minmax({last[0].sum, last[1].sum, last[2].sum});
  t.achieved_tol = hi - lo;
  t.verdict = t.achieved_tol <= tol ? ConvergenceTrace::Verdict::converged : ConvergenceTrace::Verdict::not_converged;
}

template <class DF>
ConvergenceTrace converge_impl(const Integrand& f, const DF& F, double a, double b, const TagPolicy& policy,
                               double tol, int n_max, const ConvergeOptions& o, const std::vector<double>& jumps) {
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  std::mt19937_64 rng(policy.seed);
  detail::Refiner refiner(a, b, o.strategy, policy.seed);
  ConvergenceTrace t;
  std::optional<std::size_t> separated;
  for (int n = 1; n <= n_max; ++n) {
    const std::vector<double>& grid = refiner.next();
    std::vector<double> tags = make_tags(grid, policy.kind, jumps, rng);
    double s = increment_sum(f, F, grid, tags);
    t.rows.push_back({n, tags.size(), kernels::max_gap(grid), s});
    if (!separated && jumps_separated(grid, jumps)) separated = t.rows.size() - 1;
    settle_verdict(t, tol, separated.value_or(t.rows.size()));
    if (o.stop_early && t.converged()) break;
  }
  return t;
}

}  // namespace

namespace detail {

Refiner::Refiner(double a, double b, RefinementStrategy s, std::uint64_t seed)
    : a_(a), b_(b), strategy_(s), rng_(seed) {
  require_interval(a, b);
  grid_ = {a, b};
}

const std::vector<double>& Refiner::next() {
  ++level_;
  if (level_ > 62) throw InvalidArgument("refinement level too deep");
  std::vector<double> g;
  g.reserve(2 * grid_.size() - 1);
  if (strategy_ == RefinementStrategy::uniform_dyadic) {
    const double cells = std::ldexp(1.0, level_);
    const std::size_t count = std::size_t{1} << level_;
    for (std::size_t j = 0; j < count; ++j) g.push_back(a_ + (b_ - a_) * (static_cast<double>(j) / cells));
    g.push_back(b_);
  } else {
    const double eps = std::ldexp(1.0, -(level_ + 1));
    std::uniform_real_distribution<double> u(0.5 - eps, 0.5 + eps);
    for (std::size_t j = 0; j + 1 < grid_.size(); ++j) {
      double lo = grid_[j];
      double hi = grid_[j + 1];
      double mid = lo + u(rng_) * (hi - lo);
      g.push_back(lo);
      if (mid > lo && mid < hi) g.push_back(mid);
    }
    g.push_back(b_);
  }
  validate_grid(g);
  grid_ = std::move(g);
  return grid_;
}

}  // namespace detail

std::string_view to_string(TagKind k) noexcept {
  switch (k) {
    case TagKind::left:
      return "left";
    case TagKind::right:
      return "right";
    case TagKind::midpoint:
      return "midpoint";
    case TagKind::random_uniform:
      return "random_uniform";
    case TagKind::at_jump:
      return "at_jump";
    case TagKind::left_of_jump:
      return "left_of_jump";
    case TagKind::right_of_jump:
      return "right_of_jump";
  }
  return "unknown";
}

std::optional<TagKind> parse_tag_kind(std::string_view s) {
  std::string norm;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '-' || c == ' ') {
      norm += '_';
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      if (i > 0 && std::islower(static_cast<unsigned char>(s[i - 1]))) norm += '_';
      norm += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      norm += c;
    }
  }
  if (norm == "random") return TagKind::random_uniform;
  for (TagKind k : kAllTagKinds) {
    if (norm == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<double> make_tags(std::span<const double> grid, TagKind kind, std::span<const double> jumps,
                              std::mt19937_64& rng) {
  validate_grid(grid);
  const std::size_t cells = grid.size() - 1;
  std::vector<double> tags(cells);
  switch (kind) {
    case TagKind::left:
      std::copy(grid.begin(), grid.end() - 1, tags.begin());
      return tags;
    case TagKind::right:
      std::copy(grid.begin() + 1, grid.end(), tags.begin());
      return tags;
    case TagKind::random_uniform: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (std::size_t j = 0; j < cells; ++j) {
        tags[j] = std::min(grid[j] + u(rng) * (grid[j + 1] - grid[j]), grid[j + 1]);
      }
      return tags;
    }
    default:
      break;
  }
  kernels::midpoints(grid, tags);
  if (kind == TagKind::midpoint) return tags;

  std::size_t p = 0;  // first jump >= current cell's left end
  for (std::size_t j = 0; j < cells; ++j) {
    const double lo = grid[j];
    const double hi = grid[j + 1];
    const double w = hi - lo;
    while (p < jumps.size() && jumps[p] < lo) ++p;
    if (p == jumps.size() || jumps[p] > hi) continue;
    const bool at_lo = jumps[p] == lo;
    std::size_t q = p + (at_lo ? 1 : 0);
    std::optional<double> inside;
    if (q < jumps.size() && jumps[q] < hi) inside = jumps[q];
    std::size_t r = q;
    while (r < jumps.size() && jumps[r] < hi) ++r;
    const bool at_hi = r < jumps.size() && jumps[r] == hi;

    double& c = tags[j];
    switch (kind) {
      case TagKind::at_jump:
        c = inside ? *inside : (at_lo ? lo : hi);
        break;
      case TagKind::left_of_jump:
        if (inside) c = beside(*inside, *inside - lo, w, -1);
        else if (at_hi) c = beside(hi, w, w, -1);
        else c = lo;
        break;
      case TagKind::right_of_jump:
        if (inside) c = beside(*inside, hi - *inside, w, +1);
        else if (at_lo) c = beside(lo, w, w, +1);
        else c = hi;
        break;
      default:
        break;
    }
  }
  return tags;
}

double rs_sum(const Integrand& f, const StepDF& F, const Partition& p) {
  F.domain().require(p.a());
  F.domain().require(p.b());
  if (F.has_tails()) return increment_sum(f, F.window(p.a(), p.b()), p.grid(), p.tags());
  return increment_sum(f, F, p.grid(), p.tags());
}

double rs_sum(const Integrand& f, const MixedDF& F, const Partition& p) {
  F.domain().require(p.a());
  F.domain().require(p.b());
  return increment_sum(f, F, p.grid(), p.tags());
}

double rs_sum(const Integrand& f, const Distribution& F, const Partition& p) {
  return std::visit([&](const auto& df) { return rs_sum(f, df, p); }, F);
}

std::vector<std::vector<double>> refinement_sequence(double a, double b, RefinementStrategy strategy, int n_max,
                                                     std::uint64_t seed) {
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  detail::Refiner refiner(a, b, strategy, seed);
  std::vector<std::vector<double>> out;
  for (int n = 1; n <= n_max; ++n) out.push_back(refiner.next());
  return out;
}

IntegralResult rs_integral_step_closed_form(const Integrand& f, const StepDF& F, double a, double b) {
  require_interval(a, b);
  F.domain().require(a);
  F.domain().require(b);
  StepDF W = F.window(a, b);
  const Probe pa = W.probe(a);
  const Probe pb = W.probe(b);

  for (const JumpPoint& j : W.jumps()) {
    if (j.location > a && j.location < b && !f.declared_continuous_at(j.location)) {
      throw NotIntegrableError(divergence_witness(f, W, j.location, a, b, 1e-9));
    }
  }

  IntegralResult::Diagnostics d;
  double total = (pa.right - pa.value) * f(a);
  for (const JumpPoint& j : W.jumps()) {
    if (j.location > a && j.location < b) {
      total += j.mass * f(j.location);
      ++d.terms;
    }
  }
  total += (pb.value - pb.left) * f(b);
  return IntegralResult::finite(total, std::move(d));
}

IntegralResult rs_integral_mixed_closed_form(const Integrand& f, const MixedDF& F, double a, double b,
                                             double quad_tol, int quad_levels) {
  require_interval(a, b);
  F.domain().require(a);
  F.domain().require(b);
  const Probe pa = F.probe(a);
  const Probe pb = F.probe(b);

  for (const JumpPoint& j : F.jumps()) {
    if (j.location > a && j.location < b && !f.declared_continuous_at(j.location)) {
      const Probe p = F.probe(j.location);
      throw NotIntegrableError(detail::witness_from_levels(f, j.location, p.left, j.mass, p.value, a, b, 1e-9,
                                                           kDefaultWitnessLevels));
    }
  }

  IntegralResult::Diagnostics d;
  double total = (pa.right - pa.value) * f(a);
  for (const JumpPoint& j : F.jumps()) {
    if (j.location > a && j.location < b) {
      total += j.mass * f(j.location);
      ++d.terms;
    }
  }
  total += (pb.value - pb.left) * f(b);

  for (std::size_t g = 0; g < F.gap_count(); ++g) {
    Gap gap = F.gap(g);
    if (gap.is_plateau()) continue;
    double u = std::max(gap.lo, a);
    double v = std::min(gap.hi, b);
    if (!(u < v)) continue;
    try {
      total += adaptive_rs_continuous(f, *gap.segment, u, v, quad_tol, quad_levels);
    } catch (const QuadratureError& e) {
      throw QuadratureError("gap ]" + format_double(gap.lo) + ", " + format_double(gap.hi) + "[: " + e.what());
    }
    ++d.terms;
  }
  return IntegralResult::finite(total, std::move(d));
}

IntegralResult rs_integral_closed_form(const Integrand& f, const Distribution& F, double a, double b,
                                       double quad_tol, int quad_levels) {
  if (const auto* s = std::get_if<StepDF>(&F)) return rs_integral_step_closed_form(f, *s, a, b);
  return rs_integral_mixed_closed_form(f, std::get<MixedDF>(F), a, b, quad_tol, quad_levels);
}

ConvergenceTrace rs_converge(const Integrand& f, const StepDF& F, double a, double b, const TagPolicy& policy,
                             double tol, int n_max, const ConvergeOptions& options) {
  require_interval(a, b);
  F.domain().require(a);
  F.domain().require(b);
  StepDF W = F.window(a, b);
  return converge_impl(f, W, a, b, policy, tol, n_max, options, locations_of(W.jumps(), a, b));
}

ConvergenceTrace rs_converge(const Integrand& f, const Distribution& F, double a, double b, const TagPolicy& policy,
                             double tol, int n_max, const ConvergeOptions& options) {
  if (const auto* s = std::get_if<StepDF>(&F)) return rs_converge(f, *s, a, b, policy, tol, n_max, options);
  const MixedDF& M = std::get<MixedDF>(F);
  require_interval(a, b);
  M.domain().require(a);
  M.domain().require(b);
  return converge_impl(f, M, a, b, policy, tol, n_max, options, locations_of(M.jumps(), a, b));
}

double adaptive_rs_continuous(const Integrand& f, const std::function<double(double)>& F_segment, double u,
                              double v, double tol, int n_max) {
  if (!std::isfinite(u) || !std::isfinite(v) || u > v) throw DomainError("quadrature interval is invalid");
  if (u == v) return 0.0;
  if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");

  // Declared jumps of f split the range, so midpoint tags never land on one.
  std::vector<double> cuts{u};
  for (const Discontinuity& d : f.discontinuities()) {
    if (d.location > u && d.location < v) cuts.push_back(d.location);
  }
  cuts.push_back(v);

  double total = 0.0;
  for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
    const double lo = cuts[piece];
    const double hi = cuts[piece + 1];
    double previous = 0.0;
    bool done = false;
    std::ostringstream trace;
    for (int n = 0; n <= n_max && !done; ++n) {
      const std::size_t cells = std::size_t{1} << n;
      const double scale = std::ldexp(1.0, n);
      std::vector<double> grid(cells + 1);
      for (std::size_t j = 0; j < cells; ++j) grid[j] = lo + (hi - lo) * (static_cast<double>(j) / scale);
      grid[cells] = hi;
      std::vector<double> levels(grid.size());
      for (std::size_t j = 0; j < grid.size(); ++j) {
        levels[j] = F_segment(grid[j]);
        if (!std::isfinite(levels[j])) {
          throw EvaluationError("segment is not finite at x = " + format_double(grid[j]));
        }
      }
      std::vector<double> tags(cells);
      kernels::midpoints(grid, tags);
      double s = kernels::increment_dot(f.evaluate_all(tags), levels);
      trace << "\n  n=" << n << " sum=" << format_double(s);
      if (n >= kMinQuadLevel && std::abs(s - previous) < tol) {
        total += s;
        done = true;
      }
      previous = s;
    }
    if (!done) {
      throw QuadratureError("no convergence on [" + format_double(lo) + ", " + format_double(hi) + "] within " +
                            std::to_string(n_max) + " levels:" + trace.str());
    }
  }
  return total;
}

}  // namespace stieltjes
