#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stieltjes/distribution.hpp"
#include "stieltjes/errors.hpp"
#include "stieltjes/expr/ast.hpp"
#include "stieltjes/integrand.hpp"
#include "stieltjes/riemann_stieltjes.hpp"

namespace stieltjes::cli {

/// Invalid config document; `path()` names the offending field, e.g.
/// "distribution.jumps[2].mass".
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string path, const std::string& message);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Finest refinement level accepted from a config or the command line
/// (2^24 cells, a few hundred MB of working arrays).
inline constexpr int kMaxLevel = 24;

struct JumpConfig {
  double x = 0.0;
  double mass = 0.0;
  std::optional<double> value_at;
};

struct SegmentConfig {
  double from = 0.0;
  double to = 0.0;
  std::string expr;
};

/// Generated jump family. Expressions are in the index h = start, start + 1, ...
/// (written as x); `count` ends the family after that many jumps.
struct TailConfig {
  double start = 1.0;
  std::string location;
  std::string mass;
  std::optional<std::string> remaining_mass_bound;
  std::optional<std::uint64_t> count;
};

struct OptionsConfig {
  double tol = 1e-9;
  int n_max = 16;
  std::string policy = "midpoint";
  std::uint64_t seed = kDefaultSeed;
  double truncation_tol = 1e-12;
  double quad_tol = 1e-9;
  std::optional<double> integrand_bound;
};

struct Config {
  double base = 0.0;
  bool signed_masses = false;
  std::vector<JumpConfig> jumps;
  std::vector<SegmentConfig> segments;
  std::optional<TailConfig> right_tail;
  std::optional<TailConfig> left_tail;
  std::string integrand;
  /// Empty means the real line.
  std::optional<std::pair<double, double>> interval;
  OptionsConfig options;
};

Config parse_config(const nlohmann::json& doc);
Config load_config(const std::string& path);

/// Every field spelled out, expressions in canonical printed form.
nlohmann::json normalized(const Config& c);

/// The integrator, integrand and settings a config describes.
struct Problem {
  Distribution F;
  Integrand f;
  expr::ExprPtr integrand_expr;
  std::optional<std::pair<double, double>> interval;
  OptionsConfig options;
  TagPolicy policy;
};

Problem build_problem(const Config& c);

}  // namespace stieltjes::cli
