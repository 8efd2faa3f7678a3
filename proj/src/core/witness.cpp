#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "detail/rs_internal.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/kernels.hpp"
#include "stieltjes/riemann_stieltjes.hpp"

namespace stieltjes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Position of the jump inside its cell for the inside-cell grids. Irrational,
// so refinement never lands a grid point on the jump.
const double kInsideFraction = std::sqrt(2.0) - 1.0;

enum class Side { at, left, right };

std::string_view side_name(Side s) {
  switch (s) {
    case Side::at:
      return "at-jump";
    case Side::left:
      return "left-of-jump";
    case Side::right:
      return "right-of-jump";
  }
  return "";
}

double tag_near(double x, double room, double width, Side s) {
  if (s == Side::at) return x;
  double delta = std::min(0.5 * room, std::ldexp(width, -20));
  int dir = s == Side::left ? -1 : 1;
  double c = x + dir * delta;
  if (c == x) c = std::nextafter(x, dir < 0 ? -kInf : kInf);
  return c;
}

std::vector<double> on_grid(double a, double x, double b, int n) {
  const std::size_t half = std::size_t{1} << (n - 1);
  const double scale = static_cast<double>(half);
  std::vector<double> g;
  g.reserve(2 * half + 1);
  for (std::size_t k = 0; k < half; ++k) g.push_back(a + (x - a) * (static_cast<double>(k) / scale));
  for (std::size_t k = 0; k < half; ++k) g.push_back(x + (b - x) * (static_cast<double>(k) / scale));
  g.push_back(b);
  return g;
}

std::vector<double> inside_cell(double a, double x, double b, int n) {
  const double w = std::ldexp(b - a, -n);
  std::vector<double> g{a};
  double k0 = std::ceil((a - x) / w + kInsideFraction) - 1.0;
  for (double k = k0;; k += 1.0) {
    double y = x + (k - kInsideFraction) * w;
    if (y >= b) break;
    if (y > a && y != x) g.push_back(y);
  }
  g.push_back(b);
  return g;
}

void add_distinct(std::vector<double>& set, double v) {
  if (std::find(set.begin(), set.end(), v) == set.end()) set.push_back(v);
}

struct Recipe {
  WitnessCase placement;
  Side first;   // left cell (on grid) or the jump cell (inside)
  Side second;  // right cell (on grid only)
};

}  // namespace

namespace detail {

WitnessReport witness_from_levels(const Integrand& f, double x, double L, double m, double Q, double a, double b,
                                  double tol, int n_max) {
  if (!(a < x && x < b)) throw InvalidArgument("witness needs a < x < b");
  if (n_max < 3) throw InvalidArgument("witness traces need at least 3 levels");
  const Discontinuity* decl = f.discontinuity_at(x);
  if (decl == nullptr || decl->describes_continuity()) {
    throw NoWitnessError("f is declared continuous at x = " + format_double(x) +
                         "; every tag recipe gives the same limit");
  }

  // Isolated jump: the rest of F adds the same amount to every recipe.
  const double R0 = L + m;
  const double Q0 = std::clamp(Q, std::min(L, R0), std::max(L, R0));
  const StepDF F(Domain::interval(a, b), L, {JumpSpec{x, m, Q0}}, true);
  const double R = F.plateau_levels()[1];

  const OneSidedLimits lim = one_sided_limits_f(f, x);
  const double fv = f(x);

  WitnessReport rep;
  rep.jump_location = x;
  rep.F_left = L;
  rep.F_value = Q0;
  rep.F_right = R;
  rep.f_left = lim.left;
  rep.f_value = fv;
  rep.f_right = lim.right;
  rep.f_limits_estimated = lim.estimated;
  rep.tol = tol;

  auto value_of = [&](Side s) { return s == Side::at ? fv : (s == Side::left ? lim.left : lim.right); };

  const Recipe recipes[] = {
      {WitnessCase::on_grid, Side::at, Side::at},        {WitnessCase::on_grid, Side::at, Side::right},
      {WitnessCase::on_grid, Side::left, Side::at},      {WitnessCase::on_grid, Side::left, Side::right},
      {WitnessCase::inside_cell, Side::at, Side::at},    {WitnessCase::inside_cell, Side::left, Side::at},
      {WitnessCase::inside_cell, Side::right, Side::at},
  };

  for (const Recipe& r : recipes) {
    WitnessEntry e;
    e.placement = r.placement;
    if (r.placement == WitnessCase::on_grid) {
      e.recipe = "left cell: " + std::string(side_name(r.first)) + ", right cell: " + std::string(side_name(r.second));
      e.predicted = (Q0 - L) * value_of(r.first) + (R - Q0) * value_of(r.second);
      add_distinct(rep.on_grid_limits, e.predicted);
    } else {
      e.recipe = "jump cell: " + std::string(side_name(r.first));
      e.predicted = (R - L) * value_of(r.first);
      add_distinct(rep.inside_cell_limits, e.predicted);
    }
    add_distinct(rep.limit_set, e.predicted);

    for (int n = 1; n <= n_max; ++n) {
      std::vector<double> grid = r.placement == WitnessCase::on_grid ? on_grid(a, x, b, n) : inside_cell(a, x, b, n);
      std::vector<double> tags(grid.size() - 1);
      kernels::midpoints(grid, tags);
      if (r.placement == WitnessCase::on_grid) {
        const std::size_t j = std::size_t{1} << (n - 1);  // grid[j] == x
        const double wl = grid[j] - grid[j - 1];
        const double wr = grid[j + 1] - grid[j];
        tags[j - 1] = tag_near(x, wl, wl, r.first);
        tags[j] = tag_near(x, wr, wr, r.second);
      } else {
        auto it = std::upper_bound(grid.begin(), grid.end(), x);
        const std::size_t j = static_cast<std::size_t>(it - grid.begin()) - 1;
        const double w = grid[j + 1] - grid[j];
        const double room = r.first == Side::left ? x - grid[j] : grid[j + 1] - x;
        tags[j] = tag_near(x, room, w, r.first);
      }
      std::vector<double> levels = F.evaluate_sorted(grid);
      double s = kernels::increment_dot(f.evaluate_all(tags), levels);
      e.trace.rows.push_back({n, tags.size(), kernels::max_gap(grid), s});
      e.trace.limit = s;
      if (e.trace.rows.size() >= 3) {
        auto last = e.trace.rows.end() - 3;
        auto [lo, hi] = std::minmax({last[0].sum, last[1].sum, last[2].sum});
        e.trace.achieved_tol = hi - lo;
        if (e.trace.achieved_tol <= tol) {
          e.trace.verdict = ConvergenceTrace::Verdict::converged;
          break;
        }
      } else {
        e.trace.achieved_tol = kInf;
      }
    }
    e.reproduced = e.trace.converged() && std::abs(e.trace.limit - e.predicted) <= tol;
    rep.entries.push_back(std::move(e));
  }

  std::sort(rep.on_grid_limits.begin(), rep.on_grid_limits.end());
  std::sort(rep.inside_cell_limits.begin(), rep.inside_cell_limits.end());
  std::sort(rep.limit_set.begin(), rep.limit_set.end());
  // Values closer than tol cannot be told apart by the traces.
  rep.degenerate = rep.limit_set.size() < 2 || rep.limit_set.back() - rep.limit_set.front() <= tol;

  std::vector<double> reached;
  for (const WitnessEntry& e : rep.entries) reached.push_back(e.trace.limit);
  std::sort(reached.begin(), reached.end());
  for (double v : reached) {
    if (rep.realized_set.empty() || v - rep.realized_set.back() > tol) rep.realized_set.push_back(v);
  }
  return rep;
}

}  // namespace detail

WitnessReport divergence_witness(const Integrand& f, const StepDF& F, double x, double a, double b, double tol,
                                 int n_max) {
  if (!(a < x && x < b)) throw InvalidArgument("jump " + format_double(x) + " must lie strictly inside ]a, b[");
  const Probe p = F.probe(x);
  if (!p.is_jump) throw InvalidArgument("F has no jump at x = " + format_double(x));
  return detail::witness_from_levels(f, x, p.left, p.right - p.left, p.value, a, b, tol, n_max);
}

WitnessReport divergence_witness(const Integrand& f, const Distribution& F, double x, double a, double b, double tol,
                                 int n_max) {
  if (const auto* s = std::get_if<StepDF>(&F)) return divergence_witness(f, *s, x, a, b, tol, n_max);
  if (!(a < x && x < b)) throw InvalidArgument("jump " + format_double(x) + " must lie strictly inside ]a, b[");
  const Probe p = std::get<MixedDF>(F).probe(x);
  if (!p.is_jump) throw InvalidArgument("F has no jump at x = " + format_double(x));
  return detail::witness_from_levels(f, x, p.left, p.right - p.left, p.value, a, b, tol, n_max);
}

}  // namespace stieltjes
