#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "stieltjes/integrand.hpp"
#include "stieltjes/results.hpp"
#include "stieltjes/riemann_stieltjes.hpp"

namespace stieltjes::detail {

/// Produces the grids of a refinement sequence one level at a time.
class Refiner {
 public:
  Refiner(double a, double b, RefinementStrategy s, std::uint64_t seed);
  const std::vector<double>& next();

 private:
  double a_;
  double b_;
  RefinementStrategy strategy_;
  std::mt19937_64 rng_;
  std::vector<double> grid_;
  int level_ = 0;
};

/// Witness for a jump with left limit L, mass m and value Q at x.
WitnessReport witness_from_levels(const Integrand& f, double x, double L, double m, double Q, double a, double b,
                                  double tol, int n_max);

}  // namespace stieltjes::detail
