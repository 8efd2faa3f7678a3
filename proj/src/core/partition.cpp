#include "stieltjes/partition.hpp"

#include <cmath>
#include <string>

#include "stieltjes/errors.hpp"
#include "stieltjes/extended_real.hpp"
#include "stieltjes/kernels.hpp"

namespace stieltjes {

void validate_grid(std::span<const double> grid) {
  if (grid.size() < 2) throw InvalidArgument("a partition needs at least one cell");
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!std::isfinite(grid[j])) throw InvalidArgument("grid point " + std::to_string(j) + " is not finite");
    if (j > 0 && !(grid[j] > grid[j - 1])) {
      throw InvalidArgument("grid is not strictly increasing at index " + std::to_string(j));
    }
  }
}

Partition::Partition(std::vector<double> grid, std::vector<double> tags)
    : grid_(std::move(grid)), tags_(std::move(tags)) {
  validate_grid(grid_);
  if (tags_.size() + 1 != grid_.size()) {
    throw InvalidArgument("expected " + std::to_string(grid_.size() - 1) + " tags, got " +
                          std::to_string(tags_.size()));
  }
  for (std::size_t j = 0; j < tags_.size(); ++j) {
    if (!(tags_[j] >= grid_[j] && tags_[j] <= grid_[j + 1])) {
      throw InvalidArgument("tag " + format_double(tags_[j]) + " outside cell " + std::to_string(j));
    }
  }
}

double Partition::mesh() const { return kernels::max_gap(grid_); }

}  // namespace stieltjes
