#include "hka/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hka {

namespace {

void check_valuation(double t, double T, const char* who) {
  if (!std::isfinite(t) || t < 0.0)
    throw std::domain_error(std::string(who) + ": t must be finite and >= 0");
  if (!std::isfinite(T) || T <= t)
    throw std::domain_error(std::string(who) + ": maturity must exceed t");
}

}  // namespace

double log_price_default_free(double t, double T,
                              const QuadraticModelParams& params) {
  check_valuation(t, T, "price_default_free");
  const auto& lambda = params.time_change();
  const double t_arg = lambda(T) + T - t;
  return log_propagator_qhat(t_arg, T - t, params) -
         log_propagator_q(lambda(t), params);
}

double log_price_defaultable(double t, double T,
                             const QuadraticModelParams& params) {
  check_valuation(t, T, "price_defaultable");
  const auto& lambda = params.time_change();
  return log_propagator_q(lambda(T) + T - t, params) -
         log_propagator_q(lambda(t), params);
}

BondQuote price_default_free(double t, double T,
                             const QuadraticModelParams& params) {
  return BondQuote{t, T, std::exp(log_price_default_free(t, T, params)), true};
}

BondQuote price_defaultable(double t, double T, bool survived,
                            const QuadraticModelParams& params) {
  check_valuation(t, T, "price_defaultable");
  if (!survived) return BondQuote{t, T, 0.0, false};
  return BondQuote{t, T, std::exp(log_price_defaultable(t, T, params)), true};
}

double yield_default_free(double T, const QuadraticModelParams& params) {
  if (!std::isfinite(T) || T <= 0.0)
    throw std::domain_error("yield_default_free: T must be > 0");
  return -log_price_default_free(0.0, T, params) / T;
}

double default_spread_step(double T) { return 1e-4 * std::max(1.0, T); }

SpreadPoint credit_spread(double t, double T,
                          const QuadraticModelParams& params, double h) {
  check_valuation(t, T, "credit_spread");
  if (!std::isfinite(h) || h <= 0.0)
    throw std::domain_error("credit_spread: h must be finite and > 0");
  if (T - h <= t)
    throw std::domain_error(
        "credit_spread: stencil leaves the valid region (T - h <= t)");

  const auto& lambda = params.time_change();
  const auto g = [&](double maturity) {
    return log_qhat_over_q(lambda(maturity) + maturity - t, maturity - t,
                           params);
  };
  const auto central = [&](double step) {
    return (g(T + step) - g(T - step)) / (2.0 * step);
  };
  const double coarse = central(h);
  const double fine = central(0.5 * h);
  return SpreadPoint{T, (4.0 * fine - coarse) / 3.0};
}

SpreadPoint credit_spread(double t, double T,
                          const QuadraticModelParams& params) {
  return credit_spread(t, T, params, default_spread_step(T));
}

}  // namespace hka
