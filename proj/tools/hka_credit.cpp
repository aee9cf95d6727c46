#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hka/config.hpp"
#include "hka/csv.hpp"
#include "hka/curves.hpp"
#include "hka/pricing.hpp"
#include "hka/validation.hpp"

namespace {

// Exit statuses: 0 ok, 1 validation failure, 2 config error, 3 domain error.
constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kConfigError = 2;
constexpr int kDomainError = 3;

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_path;
};

hka::ScenarioConfig load_config(const CommonArgs& args) {
  hka::ScenarioConfig cfg = hka::parse_scenario_config(args.config_path);
  if (args.seed) cfg.mc.seed = *args.seed;
  if (!args.out_path.empty()) cfg.output_path = args.out_path;
  return cfg;
}

void write_output(const hka::ScenarioConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw hka::ConfigError("output.path", "cannot open for writing");
  out << text;
}

std::string curve_label_x(const hka::ScenarioConfig& cfg) {
  if (cfg.dim == 1) return "x=" + hka::format_double(cfg.x0[0]);
  return "x=" + hka::format_double(std::sqrt(cfg.x0.squaredNorm()));
}

int run_price(const hka::ScenarioConfig& cfg, double t, double T,
              bool survived) {
  const auto params = cfg.model_params();
  const auto defaultable = hka::price_defaultable(t, T, survived, params);
  const auto default_free = hka::price_default_free(t, T, params);
  const double h =
      cfg.spread_h ? *cfg.spread_h : hka::default_spread_step(T);
  const auto spread = hka::credit_spread(t, T, params, h);
  std::cout << "P_d=" << hka::format_double(defaultable.price)
            << " P_f=" << hka::format_double(default_free.price)
            << " spread=" << hka::format_double(spread.spread) << "\n";
  return kOk;
}

int run_yield_curve(const hka::ScenarioConfig& cfg) {
  const auto maturities = cfg.maturity_grid();
  std::vector<hka::Curve> curves;
  if (cfg.x_values.empty()) {
    curves.push_back(
        hka::yield_curve(maturities, cfg.model_params(), curve_label_x(cfg)));
  } else {
    for (double x : cfg.x_values)
      curves.push_back(hka::yield_curve(maturities,
                                        cfg.model_params_with_x(x),
                                        "x=" + hka::format_double(x)));
  }
  write_output(cfg, hka::curves_to_csv(curves));
  return kOk;
}

int run_spread_curve(const hka::ScenarioConfig& cfg) {
  const auto maturities = cfg.maturity_grid();
  const double h =
      cfg.spread_h ? *cfg.spread_h : hka::default_spread_step(cfg.grid_min);
  std::vector<hka::Curve> curves;
  if (cfg.beta_values.empty()) {
    curves.push_back(hka::spread_curve(maturities, cfg.model_params(), h,
                                       "beta=" + hka::format_double(cfg.beta)));
  } else {
    for (double beta : cfg.beta_values)
      curves.push_back(hka::spread_curve(maturities,
                                         cfg.model_params_with_beta(beta), h,
                                         "beta=" + hka::format_double(beta)));
  }
  write_output(cfg, hka::curves_to_csv(curves));
  return kOk;
}

int run_validate(const hka::ScenarioConfig& cfg, bool flipped_sign) {
  const auto report = hka::run_validation(cfg.mc, flipped_sign);
  write_output(cfg, hka::render_validation_report(report));
  return report.passed ? kOk : kValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Defaultable bond pricing under the killed heat-kernel quadratic "
      "Gaussian model"};
  app.require_subcommand(1);

  CommonArgs common;
  double t = 0.0;
  double maturity = 0.0;
  bool survived = true;
  bool flipped_sign = false;

  const auto add_common = [&common](CLI::App* cmd) {
    cmd->add_option("--config", common.config_path, "scenario config file")
        ->required();
    cmd->add_option("--seed", common.seed, "override mc.seed");
    cmd->add_option("--out", common.out_path, "override output.path");
  };

  CLI::App* price = app.add_subcommand(
      "price", "defaultable / default-free prices and spread at (t, T)");
  add_common(price);
  price->add_option("--t", t, "valuation time (default 0)");
  price->add_option("--T", maturity, "maturity")->required();
  price->add_option("--survived", survived,
                    "no-default indicator at t (default true)");

  CLI::App* yield = app.add_subcommand(
      "yield-curve", "default-free yield curves over the maturity grid");
  add_common(yield);

  CLI::App* spread = app.add_subcommand(
      "spread-curve", "credit spread curves over the maturity grid");
  add_common(spread);

  CLI::App* validate = app.add_subcommand(
      "validate", "Monte Carlo vs closed-form validation table");
  add_common(validate);
  validate
      ->add_flag("--flipped-sign", flipped_sign,
                 "use the flipped-sign closed form (expected to fail)")
      ->group("");  // debug flag, hidden from help

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: args: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    const hka::ScenarioConfig cfg = load_config(common);
    if (price->parsed()) return run_price(cfg, t, maturity, survived);
    if (yield->parsed()) return run_yield_curve(cfg);
    if (spread->parsed()) return run_spread_curve(cfg);
    return run_validate(cfg, flipped_sign);
  } catch (const hka::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kDomainError;
  }
}
