#pragma once

#include <span>
#include <vector>

namespace stieltjes {

/// A tagged subdivision a = y_0 < y_1 < ... < y_l = b with one tag c_j in
/// each closed cell [y_j, y_{j+1}].
class Partition {
 public:
  /// Throws InvalidArgument unless the grid is strictly increasing with at
  /// least two points and every tag lies in its closed cell.
  Partition(std::vector<double> grid, std::vector<double> tags);

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> tags() const noexcept { return tags_; }
  std::size_t cells() const noexcept { return tags_.size(); }
  double a() const noexcept { return grid_.front(); }
  double b() const noexcept { return grid_.back(); }

  /// Largest cell width.
  double mesh() const;

 private:
  std::vector<double> grid_;
  std::vector<double> tags_;
};

/// Throws InvalidArgument unless the grid is strictly increasing, has at least
/// two points, and holds only finite values.
void validate_grid(std::span<const double> grid);

}  // namespace stieltjes
