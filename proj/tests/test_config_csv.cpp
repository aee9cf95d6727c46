#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hka/config.hpp"
#include "hka/csv.hpp"
#include "hka/curves.hpp"

using namespace hka;

namespace {

const std::string kBaseConfig = R"(
# scenario
model.beta = 0.1
model.dim = 1
model.x0 = 0.01
model.lambda.family = scaled-exp
model.lambda.c = 0.1
)";

void check_error_key(const std::string& text, const std::string& key) {
  try {
    parse_scenario_config_text(text);
    FAIL("expected ConfigError for key " << key);
  } catch (const ConfigError& e) {
    CHECK(e.key() == key);
  }
}

}  // namespace

TEST_CASE("format_double: shortest round-trip representations") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(0.30000000000000004) == "0.30000000000000004");
  CHECK(parse_double(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(parse_double(format_double(1e-300)) == 1e-300);
}

TEST_CASE("curves_to_csv: label-major, maturity-minor, stable bytes") {
  Curve a{"x=1", {{1.0, 0.5}, {2.0, 0.25}}, CurveKind::Yield};
  Curve b{"x=2", {{1.0, 0.75}, {2.0, 0.5}}, CurveKind::Yield};
  CHECK(curves_to_csv({a, b}) ==
        "maturity,value,label\n"
        "1,0.5,x=1\n"
        "2,0.25,x=1\n"
        "1,0.75,x=2\n"
        "2,0.5,x=2\n");
}

TEST_CASE("config: defaults and required keys") {
  const auto cfg = parse_scenario_config_text(kBaseConfig);
  CHECK(cfg.beta == 0.1);
  CHECK(cfg.dim == 1);
  CHECK(cfg.x0[0] == 0.01);
  CHECK(cfg.lambda->family() == TimeChange::Family::ScaledExponential);
  CHECK(cfg.grid_min == 1.0);
  CHECK(cfg.grid_max == 10.0);
  CHECK(cfg.grid_count == 10);
  CHECK(cfg.mc.n_paths == 100000);
  CHECK(cfg.mc.n_steps == 1000);
  CHECK(cfg.mc.seed == 42);
  CHECK_FALSE(cfg.mc.antithetic);
  CHECK(cfg.output_path.empty());
  CHECK_FALSE(cfg.spread_h.has_value());
  CHECK(cfg.horizon == 10.0);

  const auto grid = cfg.maturity_grid();
  REQUIRE(grid.size() == 10);
  CHECK(grid.front() == 1.0);
  CHECK(grid.back() == 10.0);
}

TEST_CASE("config: full round trip of optional keys") {
  const auto cfg = parse_scenario_config_text(R"(
model.beta = 0.5
model.dim = 2
model.x0 = 0.6, 0.8
model.lambda.family = power
model.lambda.c = 1
model.lambda.p = 0.5
grid.min = 0.5
grid.max = 8
grid.count = 16
curve.x_values = 0.01, 10, 20, 30
curve.beta_values = 0.1, 0.2
spread.h = 0.0001
mc.paths = 5000
mc.steps = 100
mc.seed = 7
mc.antithetic = true
output.path = out.csv
output.format = csv
)");
  CHECK(cfg.dim == 2);
  CHECK(cfg.x0[1] == 0.8);
  CHECK(cfg.x_values == std::vector<double>{0.01, 10.0, 20.0, 30.0});
  CHECK(cfg.beta_values == std::vector<double>{0.1, 0.2});
  CHECK(cfg.spread_h == 0.0001);
  CHECK(cfg.mc.antithetic);
  CHECK(cfg.output_path == "out.csv");
  CHECK(cfg.model_params_with_x(20.0).x0_norm_sq() == 400.0);
  CHECK(cfg.model_params_with_beta(0.2).beta() == 0.2);
}

TEST_CASE("config: diagnostics name the offending key") {
  check_error_key(kBaseConfig + "unknown.key = 1\n", "unknown.key");
  check_error_key(kBaseConfig + "model.beta = 0.2\n", "model.beta");
  check_error_key(kBaseConfig + "grid.count = 0\n", "grid.count");
  check_error_key(kBaseConfig + "mc.paths = 1\n", "mc.paths");
  check_error_key(kBaseConfig + "mc.antithetic = maybe\n", "mc.antithetic");
  check_error_key(kBaseConfig + "mc.paths = 11\nmc.antithetic = true\n",
                  "mc.paths");
  check_error_key(kBaseConfig + "spread.h = 0\n", "spread.h");
  check_error_key(kBaseConfig + "output.format = json\n", "output.format");
  check_error_key("model.beta = -1\nmodel.dim = 1\nmodel.x0 = 0\n"
                  "model.lambda.family = affine\nmodel.lambda.a = 0\n"
                  "model.lambda.b = 1\n",
                  "model.beta");
  check_error_key("model.beta = nope\nmodel.dim = 1\nmodel.x0 = 0\n"
                  "model.lambda.family = affine\nmodel.lambda.a = 0\n"
                  "model.lambda.b = 1\n",
                  "model.beta");

  check_error_key(R"(
model.beta = 0.1
model.dim = 2
model.x0 = 0.01
model.lambda.family = scaled-exp
model.lambda.c = 0.1
)",
                  "model.x0");

  check_error_key(R"(
model.beta = 0.1
model.dim = 1
model.x0 = 0.01
model.lambda.family = quadratic
)",
                  "model.lambda.family");

  check_error_key(R"(
model.beta = 0.1
model.dim = 1
model.x0 = 0.01
model.lambda.family = power
model.lambda.c = 1
model.lambda.p = -0.5
)",
                  "model.lambda");

  check_error_key("model.dim = 1\nmodel.x0 = 0\nmodel.lambda.family = "
                  "affine\nmodel.lambda.a = 0\nmodel.lambda.b = 1\n",
                  "model.beta");
}

TEST_CASE("config: grammar errors") {
  check_error_key(kBaseConfig + "not a key value line\n", "line 8");
  const auto cfg = parse_scenario_config_text(
      kBaseConfig + "grid.count = 1   # trailing comment\n");
  CHECK(cfg.grid_count == 1);
  CHECK(cfg.maturity_grid() == std::vector<double>{1.0});
}

TEST_CASE("config: missing file") {
  CHECK_THROWS_AS(parse_scenario_config("/nonexistent/path.cfg"), ConfigError);
}
