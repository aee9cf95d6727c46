#pragma once

#include "hka/model.hpp"

namespace hka {

/// A bond price at valuation time t for maturity T. For defaultable quotes
/// `survived` records the no-default indicator at t; the price is 0 once
/// the issuer has defaulted.
struct BondQuote {
  double t;
  double maturity;
  double price;
  bool survived;
};

/// Instantaneous credit spread at maturity T.
struct SpreadPoint {
  double maturity;
  double spread;
};

/// Log-price of the default-free bond,
///   log q-hat(lambda_T + T - t, T - t, x) - log q(lambda_t, x).
/// The state observed at t enters through params.x0 (at t = 0 that is the
/// model start point). Log form stays finite where the price itself would
/// underflow. Throws std::domain_error unless 0 <= t < T.
double log_price_default_free(double t, double T,
                              const QuadraticModelParams& params);

/// Log-price of the defaultable bond conditional on survival,
///   log q(lambda_T + T - t, x) - log q(lambda_t, x).
double log_price_defaultable(double t, double T,
                             const QuadraticModelParams& params);

BondQuote price_default_free(double t, double T,
                             const QuadraticModelParams& params);
BondQuote price_defaultable(double t, double T, bool survived,
                            const QuadraticModelParams& params);

/// Continuously compounded yield of the default-free bond at time 0:
/// -log P_f(0, T) / T.
double yield_default_free(double T, const QuadraticModelParams& params);

/// Step used by credit_spread when none is supplied: 1e-4 * max(1, T).
double default_spread_step(double T);

/// Credit spread -d/dT log(P_d / P_f), computed as the central finite
/// difference in T of g(T) = log[q-hat(lambda_T + T - t, T - t, x) /
/// q(lambda_T + T - t, x)] with one Richardson extrapolation step
/// (steps h and h/2 combined). Requires 0 <= t < T - h.
SpreadPoint credit_spread(double t, double T,
                          const QuadraticModelParams& params, double h);
SpreadPoint credit_spread(double t, double T,
                          const QuadraticModelParams& params);

}  // namespace hka
