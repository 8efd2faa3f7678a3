#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "stieltjes/riemann_stieltjes.hpp"

using namespace stieltjes;

namespace {

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }
const Integrand sign_f(sgn, 1.0, {{0.0, -1.0, 1.0, 0.0}});

// The jump-on-grid and jump-inside-cell limit sets written out from the one-sided data.
struct Predicted {
  std::set<double> on_grid;
  std::set<double> inside;
};

Predicted enumerate(double Fl, double Fq, double Fr, double fl, double fv, double fr) {
  Predicted p;
  for (double A : {(Fq - Fl) * fv, (Fq - Fl) * fl}) {
    for (double B : {(Fr - Fq) * fv, (Fr - Fq) * fr}) p.on_grid.insert(A + B);
  }
  for (double v : {fv, fl, fr}) p.inside.insert((Fr - Fl) * v);
  return p;
}

std::set<double> as_set(const std::vector<double>& v) { return {v.begin(), v.end()}; }

void check_report(const WitnessReport& w, const Predicted& p, double tol) {
  CHECK(as_set(w.on_grid_limits) == p.on_grid);
  CHECK(as_set(w.inside_cell_limits) == p.inside);
  std::set<double> all = p.on_grid;
  all.insert(p.inside.begin(), p.inside.end());
  CHECK(as_set(w.limit_set) == all);
  CHECK(w.all_reproduced());
  for (const WitnessEntry& e : w.entries) {
    CHECK(e.trace.converged());
    CHECK(std::fabs(e.trace.limit - e.predicted) <= tol);
  }
  REQUIRE(w.realized_set.size() == all.size());
  CHECK(std::fabs((w.realized_set.back() - w.realized_set.front()) - (*all.rbegin() - *all.begin())) <= 2 * tol);
}

}  // namespace

TEST_CASE("sign against the Heaviside jump") {
  auto w = divergence_witness(sign_f, StepDF::heaviside(), 0.0, -1.0, 1.0, 1e-9);
  const auto p = enumerate(0.0, 1.0, 1.0, -1.0, 0.0, 1.0);
  CHECK(p.on_grid == std::set<double>{-1.0, 0.0});
  CHECK(p.inside == std::set<double>{-1.0, 0.0, 1.0});
  check_report(w, p, 1e-9);
  CHECK_FALSE(w.degenerate);
  CHECK(w.entries.size() == 7);
}

TEST_CASE("sign against a half jump") {
  const StepDF F(Domain::whole_line(), 0.0, {{0.0, 1.0, 0.5}});
  auto w = divergence_witness(sign_f, F, 0.0, -1.0, 1.0, 1e-9);
  const auto p = enumerate(0.0, 0.5, 1.0, -1.0, 0.0, 1.0);
  CHECK(p.on_grid == std::set<double>{-0.5, 0.0, 0.5});
  check_report(w, p, 1e-9);
}

TEST_CASE("asymmetric data and signed masses") {
  // f jumps from 2 to -1 with value 0.5; F drops by 3 with F(0) a third of the way.
  const Integrand f([](double x) { return x < 1 ? 2.0 + x - 1 : (x > 1 ? -1.0 + (x - 1) * (x - 1) : 0.5); }, 10.0,
                    {{1.0, 2.0, -1.0, 0.5}});
  const StepDF F(Domain::interval(0.0, 3.0), 1.0, {{1.0, -3.0, 0.0}}, true);
  auto w = divergence_witness(f, F, 1.0, 0.0, 3.0, 1e-9);
  check_report(w, enumerate(1.0, 0.0, -2.0, 2.0, 0.5, -1.0), 1e-9);
}

TEST_CASE("other jumps of F add the same amount to every recipe") {
  const StepDF F(Domain::whole_line(), 0.0, {{-0.5, 2.0, std::nullopt}, {0.0, 1.0, std::nullopt}});
  auto w = divergence_witness(sign_f, F, 0.0, -1.0, 1.0, 1e-9);
  check_report(w, enumerate(2.0, 3.0, 3.0, -1.0, 0.0, 1.0), 1e-9);
}

TEST_CASE("no witness for continuous integrands") {
  const Integrand c([](double x) { return std::cos(x); });
  CHECK_THROWS_AS(divergence_witness(c, StepDF::heaviside(), 0.0, -1.0, 1.0, 1e-9), NoWitnessError);
  const Integrand declared_but_continuous([](double x) { return x; }, std::nullopt, {{0.0, 0.0, 0.0, 0.0}});
  CHECK_THROWS_AS(divergence_witness(declared_but_continuous, StepDF::heaviside(), 0.0, -1.0, 1.0, 1e-9),
                  NoWitnessError);
}

TEST_CASE("witness needs a jump of F at the point") {
  CHECK_THROWS_AS(divergence_witness(sign_f, StepDF::heaviside(1.0), 0.0, -1.0, 2.0, 1e-9), InvalidArgument);
  CHECK_THROWS_AS(divergence_witness(sign_f, StepDF::heaviside(), 0.0, 0.0, 1.0, 1e-9), InvalidArgument);
}

TEST_CASE("estimated limits that collapse give a degenerate report") {
  // Declared without limits: they are probed, and the function is continuous.
  const Integrand f([](double x) { return x * x; }, std::nullopt, {{0.0, std::nullopt, std::nullopt, 0.0}});
  auto w = divergence_witness(f, StepDF::heaviside(), 0.0, -1.0, 1.0, 1e-9);
  CHECK(w.f_limits_estimated);
  CHECK(w.degenerate);
}
