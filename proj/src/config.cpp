#include "hka/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace hka {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class KeyValueFile {
 public:
  explicit KeyValueFile(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos)
        line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(line_no),
                          "expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty())
        throw ConfigError("line " + std::to_string(line_no), "empty key");
      if (!entries_.emplace(key, value).second)
        throw ConfigError(key, "duplicate key");
    }
  }

  std::optional<std::string> take(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    std::string value = it->second;
    entries_.erase(it);
    return value;
  }

  std::string require(const std::string& key) {
    auto v = take(key);
    if (!v) throw ConfigError(key, "required key is missing");
    return *v;
  }

  void reject_leftovers() const {
    if (!entries_.empty())
      throw ConfigError(entries_.begin()->first, "unknown key");
  }

 private:
  std::map<std::string, std::string> entries_;
};

double to_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || !std::isfinite(v))
    throw ConfigError(key, "expected a finite number, got '" + value + "'");
  return v;
}

std::int64_t to_int(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0')
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  return v;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError(key, "expected true or false, got '" + value + "'");
}

std::vector<double> to_double_list(const std::string& key,
                                   const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError(key, "empty list entry");
    out.push_back(to_double(key, item));
  }
  if (out.empty()) throw ConfigError(key, "expected at least one number");
  return out;
}

TimeChange parse_lambda(KeyValueFile& kv) {
  const std::string family = kv.require("model.lambda.family");
  try {
    if (family == "scaled-exp")
      return TimeChange::scaled_exponential(
          to_double("model.lambda.c", kv.require("model.lambda.c")));
    if (family == "power")
      return TimeChange::power_law(
          to_double("model.lambda.c", kv.require("model.lambda.c")),
          to_double("model.lambda.p", kv.require("model.lambda.p")));
    if (family == "affine")
      return TimeChange::affine(
          to_double("model.lambda.a", kv.require("model.lambda.a")),
          to_double("model.lambda.b", kv.require("model.lambda.b")));
  } catch (const std::domain_error& e) {
    throw ConfigError("model.lambda", e.what());
  }
  throw ConfigError("model.lambda.family",
                    "unknown family '" + family +
                        "' (expected scaled-exp, power, or affine)");
}

}  // namespace

QuadraticModelParams ScenarioConfig::model_params() const {
  return QuadraticModelParams(beta, dim, x0, *lambda, horizon);
}

QuadraticModelParams ScenarioConfig::model_params_with_x(double x) const {
  Eigen::VectorXd start = Eigen::VectorXd::Zero(dim);
  start[0] = x;
  return QuadraticModelParams(beta, dim, std::move(start), *lambda, horizon);
}

QuadraticModelParams ScenarioConfig::model_params_with_beta(
    double beta_value) const {
  return QuadraticModelParams(beta_value, dim, x0, *lambda, horizon);
}

std::vector<double> ScenarioConfig::maturity_grid() const {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(grid_count));
  if (grid_count == 1) {
    grid.push_back(grid_min);
    return grid;
  }
  const double step = (grid_max - grid_min) / (grid_count - 1);
  for (int i = 0; i < grid_count; ++i)
    grid.push_back(grid_min + step * static_cast<double>(i));
  return grid;
}

ScenarioConfig parse_scenario_config_text(const std::string& text) {
  KeyValueFile kv(text);
  ScenarioConfig cfg;

  cfg.beta = to_double("model.beta", kv.require("model.beta"));
  if (cfg.beta < 0.0) throw ConfigError("model.beta", "must be >= 0");

  const std::int64_t dim = to_int("model.dim", kv.require("model.dim"));
  if (dim < 1 || dim > 1024) throw ConfigError("model.dim", "must be in [1, 1024]");
  cfg.dim = static_cast<int>(dim);

  const auto x0_values = to_double_list("model.x0", kv.require("model.x0"));
  if (static_cast<int>(x0_values.size()) != cfg.dim)
    throw ConfigError("model.x0",
                      "expected " + std::to_string(cfg.dim) +
                          " comma-separated entries (one per dimension)");
  cfg.x0 = Eigen::Map<const Eigen::VectorXd>(
      x0_values.data(), static_cast<Eigen::Index>(x0_values.size()));

  cfg.lambda = parse_lambda(kv);

  if (auto v = kv.take("grid.min")) cfg.grid_min = to_double("grid.min", *v);
  if (auto v = kv.take("grid.max")) cfg.grid_max = to_double("grid.max", *v);
  if (auto v = kv.take("grid.count")) {
    const std::int64_t count = to_int("grid.count", *v);
    if (count < 1) throw ConfigError("grid.count", "must be >= 1");
    if (count > 1000000) throw ConfigError("grid.count", "too large");
    cfg.grid_count = static_cast<int>(count);
  }
  if (cfg.grid_min <= 0.0) throw ConfigError("grid.min", "must be > 0");
  if (cfg.grid_count > 1 && cfg.grid_max <= cfg.grid_min)
    throw ConfigError("grid.max", "must exceed grid.min");

  if (auto v = kv.take("model.horizon")) {
    cfg.horizon = to_double("model.horizon", *v);
    if (cfg.horizon <= 0.0) throw ConfigError("model.horizon", "must be > 0");
  } else {
    cfg.horizon = std::max(10.0, cfg.grid_max);
  }

  if (auto v = kv.take("curve.x_values"))
    cfg.x_values = to_double_list("curve.x_values", *v);
  if (auto v = kv.take("curve.beta_values")) {
    cfg.beta_values = to_double_list("curve.beta_values", *v);
    for (double b : cfg.beta_values)
      if (b < 0.0) throw ConfigError("curve.beta_values", "must be >= 0");
  }
  if (auto v = kv.take("spread.h")) {
    const double h = to_double("spread.h", *v);
    if (h <= 0.0) throw ConfigError("spread.h", "must be > 0");
    cfg.spread_h = h;
  }

  if (auto v = kv.take("mc.paths")) {
    const std::int64_t paths = to_int("mc.paths", *v);
    if (paths < 2) throw ConfigError("mc.paths", "must be >= 2");
    cfg.mc.n_paths = paths;
  }
  if (auto v = kv.take("mc.steps")) {
    const std::int64_t steps = to_int("mc.steps", *v);
    if (steps < 2) throw ConfigError("mc.steps", "must be >= 2");
    cfg.mc.n_steps = steps;
  }
  if (auto v = kv.take("mc.seed")) {
    const std::int64_t seed = to_int("mc.seed", *v);
    if (seed < 0) throw ConfigError("mc.seed", "must be >= 0");
    cfg.mc.seed = static_cast<std::uint64_t>(seed);
  }
  if (auto v = kv.take("mc.antithetic"))
    cfg.mc.antithetic = to_bool("mc.antithetic", *v);
  if (cfg.mc.antithetic && cfg.mc.n_paths % 2 != 0)
    throw ConfigError("mc.paths", "must be even when mc.antithetic = true");

  if (auto v = kv.take("output.path")) cfg.output_path = *v;
  if (auto v = kv.take("output.format")) {
    if (*v != "csv")
      throw ConfigError("output.format", "only csv is supported");
    cfg.output_format = *v;
  }

  kv.reject_leftovers();

  // Surface model-level violations (e.g. a decreasing lambda) as config
  // errors so the CLI maps them to exit status 2.
  try {
    cfg.model_params();
  } catch (const std::domain_error& e) {
    throw ConfigError("model", e.what());
  }
  return cfg;
}

ScenarioConfig parse_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_config_text(buf.str());
}

}  // namespace hka
