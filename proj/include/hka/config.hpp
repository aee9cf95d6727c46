#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hka/mc.hpp"
#include "hka/model.hpp"

namespace hka {

/// Raised on any malformed or invalid configuration input. `key` names the
/// offending key (or flag) and `reason` says what is wrong with it; the CLI
/// renders this as "error: <key>: <reason>" and exits with status 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, std::string reason)
      : std::runtime_error("error: " + key + ": " + reason),
        key_(std::move(key)),
        reason_(std::move(reason)) {}

  const std::string& key() const { return key_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string key_;
  std::string reason_;
};

/// Parsed scenario file. The file format is flat "section.key = value"
/// lines with '#' comments:
///
///   model.beta = 0.1
///   model.dim = 1
///   model.x0 = 0.01            # comma-separated, one entry per dimension
///   model.lambda.family = scaled-exp   # scaled-exp | power | affine
///   model.lambda.c = 0.1               # scaled-exp: c * e^t
///   grid.min = 1
///   grid.max = 10
///   grid.count = 10
///   curve.x_values = 0.01, 10, 20, 30  # optional start-point sweep
///   curve.beta_values = 0.1, 0.2       # optional beta sweep
///   spread.h = 0.0001                  # optional; default 1e-4*max(1,T)
///   mc.paths = 100000
///   mc.steps = 1000
///   mc.seed = 42
///   mc.antithetic = false
///   output.path = out.csv
///   output.format = csv             # optional; csv is the only format
///
/// power uses model.lambda.c and model.lambda.p (c * t^p); affine uses
/// model.lambda.a and model.lambda.b (a + b * t). Unknown or duplicate keys
/// are rejected.
struct ScenarioConfig {
  double beta = 0.0;
  int dim = 1;
  Eigen::VectorXd x0;
  std::optional<TimeChange> lambda;
  double horizon = 10.0;

  double grid_min = 1.0;
  double grid_max = 10.0;
  int grid_count = 10;

  std::vector<double> x_values;     // yield-curve sweep; empty = single x0
  std::vector<double> beta_values;  // spread-curve sweep; empty = single beta
  std::optional<double> spread_h;

  McConfig mc;
  std::string output_path;
  std::string output_format = "csv";

  /// Model parameters for the configured (beta, x0).
  QuadraticModelParams model_params() const;
  /// Model parameters with x0 replaced by (x, 0, ..., 0).
  QuadraticModelParams model_params_with_x(double x) const;
  /// Model parameters with beta replaced.
  QuadraticModelParams model_params_with_beta(double beta_value) const;

  /// The configured maturity grid (grid_count points from grid_min to
  /// grid_max inclusive).
  std::vector<double> maturity_grid() const;
};

ScenarioConfig parse_scenario_config(const std::string& path);
ScenarioConfig parse_scenario_config_text(const std::string& text);

}  // namespace hka
