#pragma once

#include <Eigen/Dense>

#include "hka/time_change.hpp"

namespace hka {

/// One evaluation of a Feynman-Kac propagator (q, q-hat, or the joint
/// Laplace functional). `log_value` is always finite for admissible
/// arguments; `value = exp(log_value)` and lies in (0, 1] except where
/// the exponent is so large that the exponential underflows.
struct PropagatorValue {
  double value;
  double log_value;
};

/// Parameters of the quadratic Gaussian model: a d-dimensional Wiener
/// process started at x0, killed at rate V(x) = beta^2 |x|^2 / 2, with a
/// deterministic time change driving the propagator's time argument.
///
/// Construction validates beta >= 0, dim >= 1, x0 of length dim with
/// finite entries, and samples the time change on a dense grid over
/// [0, horizon] to confirm it is finite, non-negative and non-decreasing.
class QuadraticModelParams {
 public:
  QuadraticModelParams(double beta, int dim, Eigen::VectorXd x0,
                       TimeChange time_change, double horizon = 10.0);

  double beta() const { return beta_; }
  int dim() const { return dim_; }
  const Eigen::VectorXd& x0() const { return x0_; }
  const TimeChange& time_change() const { return time_change_; }
  double horizon() const { return horizon_; }

  /// |x0|^2; the closed forms depend on the start point only through it.
  double x0_norm_sq() const { return x0_norm_sq_; }

  /// Copy of *this with the state vector replaced (used to price at t > 0
  /// conditional on an observed state).
  QuadraticModelParams with_state(Eigen::VectorXd state) const;

 private:
  double beta_;
  int dim_;
  Eigen::VectorXd x0_;
  TimeChange time_change_;
  double horizon_;
  double x0_norm_sq_;
};

/// Killing rate V(x) = beta^2 |x|^2 / 2.
double potential(const Eigen::Ref<const Eigen::VectorXd>& x, double beta);
double potential_from_norm_sq(double x_norm_sq, double beta);

/// log E[exp(-alpha |X_t|^2 - (beta^2/2) Int_0^t |X_s|^2 ds)] for a
/// d-dimensional Wiener process X started at x with |x|^2 = x_norm_sq.
///
/// For beta > 0, with u = beta t and A = cosh u + (2 alpha / beta) sinh u:
///
///   log = -(d/2) log A - (x_norm_sq / 2) (beta sinh u + 2 alpha cosh u) / A
///
/// For beta = 0:
///
///   log = -(d/2) log(2 alpha t + 1) - alpha x_norm_sq / (2 alpha t + 1)
///
/// Both branches recover exp(-alpha x_norm_sq) as t -> 0 and agree with
/// each other as beta -> 0. Hyperbolic terms are evaluated through
/// exponent-shifted forms, so the result stays finite for beta*t up to
/// several hundred.
double log_laplace_quadratic(double alpha, double beta, double t,
                             double x_norm_sq, int dim);
PropagatorValue laplace_quadratic(double alpha, double beta, double t,
                                  double x_norm_sq, int dim);

/// Variant of log_laplace_quadratic with the sign of the 2*alpha*cosh term
/// in the exponent numerator flipped (beta sinh u - 2 alpha cosh u). This
/// variant fails both the t -> 0 and the beta -> 0 limit and exists solely
/// so the validation suite can demonstrate that Monte Carlo rejects it.
double log_laplace_quadratic_flipped(double alpha, double beta, double t,
                                     double x_norm_sq, int dim);

/// Propagator q(t, x) = E[exp(-Int_0^t V(X_s) ds)]
///                    = (cosh beta t)^{-d/2} exp(-(beta |x|^2 / 2) tanh beta t).
/// Delegates to log_laplace_quadratic with alpha = 0. Identically 1 when
/// beta = 0; strictly decreasing in t when beta > 0.
double log_propagator_q(double t, const QuadraticModelParams& params);
PropagatorValue propagator_q(double t, const QuadraticModelParams& params);

/// Windowed propagator q-hat(t, s, x) = E[exp(-Int_s^t V(X_u) du)], 0 <= s <= t:
///
///   (cosh u + beta s sinh u)^{-d/2}
///     * exp(-(beta |x|^2 / 2) tanh u / (1 + beta s tanh u)),  u = beta (t - s).
///
/// q-hat(t, 0, x) = q(t, x) and q-hat(t, t, x) = 1 exactly.
double log_propagator_qhat(double t, double s,
                           const QuadraticModelParams& params);
PropagatorValue propagator_qhat(double t, double s,
                                const QuadraticModelParams& params);

/// log(q-hat(t, s, x) / q(t, x)), evaluated without forming the two logs
/// separately. The ratio is >= 1 and its log is the quantity differentiated
/// by the credit spread; the direct form avoids the cancellation that a
/// difference of log-propagators suffers when the ratio is close to 1.
double log_qhat_over_q(double t, double s, const QuadraticModelParams& params);

namespace detail {
/// log cosh u for u >= 0, stable for large u; exactly 0 at u = 0.
double log_cosh(double u);
/// log sinh u for u > 0, stable for large u.
double log_sinh(double u);
}  // namespace detail

}  // namespace hka
