#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stieltjes/errors.hpp"
#include "stieltjes/extended_real.hpp"

namespace stieltjes {

struct TraceRow {
  int n = 0;
  std::size_t cells = 0;
  double mesh = 0.0;
  double sum = 0.0;
};

/// Riemann-Stieltjes sums along a refinement sequence.
struct ConvergenceTrace {
  enum class Verdict { converged, not_converged, diverged_witnessed };

  std::vector<TraceRow> rows;
  Verdict verdict = Verdict::not_converged;
  /// Last sum of the trace.
  double limit = 0.0;
  /// max - min over the last three sums (infinite with fewer than three rows).
  double achieved_tol = 0.0;

  bool converged() const noexcept { return verdict == Verdict::converged; }
};

std::string_view to_string(ConvergenceTrace::Verdict v) noexcept;

/// Where the jump sits relative to the grids used to realize a limit:
/// on a grid point at every level, or strictly inside a cell.
enum class WitnessCase { on_grid, inside_cell };

std::string_view to_string(WitnessCase c) noexcept;

struct WitnessEntry {
  WitnessCase placement = WitnessCase::on_grid;
  /// Tag recipe, e.g. "left cell: left-of-jump, right cell: at-jump".
  std::string recipe;
  double predicted = 0.0;
  ConvergenceTrace trace;
  /// |trace.limit - predicted| <= tol.
  bool reproduced = false;
};

/// Limits of Riemann-Stieltjes sums around a jump shared by f and F, one per
/// tag recipe, with the traces that realize them.
struct WitnessReport {
  double jump_location = 0.0;
  double F_left = 0.0;
  double F_value = 0.0;
  double F_right = 0.0;
  double f_left = 0.0;
  double f_value = 0.0;
  double f_right = 0.0;
  bool f_limits_estimated = false;
  double tol = 0.0;

  std::vector<WitnessEntry> entries;
  /// Distinct predicted values, ascending.
  std::vector<double> on_grid_limits;
  std::vector<double> inside_cell_limits;
  std::vector<double> limit_set;
  /// Distinct values actually reached by the traces (within tol), ascending.
  std::vector<double> realized_set;
  /// Fewer than two distinct predicted values, or all of them within tol.
  bool degenerate = false;

  bool all_reproduced() const noexcept;
};

struct ResultDiagnostics {
  std::vector<std::string> notes;
  /// Atoms, windows, or levels consumed to reach the verdict.
  std::size_t terms = 0;
  /// A bound used for truncation was estimated rather than declared.
  bool estimated = false;
  /// Window or refinement values behind the verdict, when any.
  std::vector<double> sequence;
};

/// Extended-real value plus existence status of an integral.
struct IntegralResult {
  enum class Status { finite, pos_infinite, neg_infinite, undefined_indeterminate, rs_divergent };
  using Diagnostics = ResultDiagnostics;

  Status status = Status::undefined_indeterminate;
  std::optional<ExtendedReal> value;
  std::shared_ptr<const WitnessReport> witness;
  Diagnostics diagnostics;

  static IntegralResult finite(double v, Diagnostics d = {});
  static IntegralResult pos_infinite(Diagnostics d = {});
  static IntegralResult neg_infinite(Diagnostics d = {});
  static IntegralResult undefined(Diagnostics d = {});
  static IntegralResult rs_divergent(WitnessReport w, Diagnostics d = {});

  bool is_finite() const noexcept { return status == Status::finite; }
  /// The finite value; throws PreconditionError otherwise.
  double finite_value() const;
};

std::string_view to_string(IntegralResult::Status s) noexcept;

/// f and F share a jump inside the interval: the Riemann-Stieltjes integral
/// does not exist. Carries the witness that proves it.
class NotIntegrableError : public Error {
 public:
  explicit NotIntegrableError(WitnessReport w);
  const WitnessReport& witness() const noexcept { return *witness_; }
  std::shared_ptr<const WitnessReport> shared_witness() const noexcept { return witness_; }

 private:
  std::shared_ptr<const WitnessReport> witness_;
};

}  // namespace stieltjes
