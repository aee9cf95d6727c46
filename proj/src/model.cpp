#include "hka/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace hka {

namespace {

constexpr int kTimeChangeGridPoints = 10001;

void require_domain(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

}  // namespace

QuadraticModelParams::QuadraticModelParams(double beta, int dim,
                                           Eigen::VectorXd x0,
                                           TimeChange time_change,
                                           double horizon)
    : beta_(beta),
      dim_(dim),
      x0_(std::move(x0)),
      time_change_(std::move(time_change)),
      horizon_(horizon) {
  require_domain(std::isfinite(beta_) && beta_ >= 0.0,
                 "QuadraticModelParams: beta must be finite and >= 0");
  require_domain(dim_ >= 1, "QuadraticModelParams: dim must be >= 1");
  require_domain(x0_.size() == dim_,
                 "QuadraticModelParams: x0 must have length dim");
  require_domain(x0_.allFinite(),
                 "QuadraticModelParams: x0 entries must be finite");
  require_domain(std::isfinite(horizon_) && horizon_ > 0.0,
                 "QuadraticModelParams: horizon must be finite and > 0");

  // Monotonicity and non-negativity of the time change are checked
  // numerically on a dense grid rather than symbolically, so new families
  // only need an evaluation rule.
  double prev = time_change_(0.0);
  require_domain(std::isfinite(prev) && prev >= 0.0,
                 "QuadraticModelParams: time change must be finite and >= 0 "
                 "on [0, horizon]");
  const double dt = horizon_ / (kTimeChangeGridPoints - 1);
  for (int i = 1; i < kTimeChangeGridPoints; ++i) {
    const double cur = time_change_(i * dt);
    require_domain(std::isfinite(cur) && cur >= 0.0,
                   "QuadraticModelParams: time change must be finite and >= 0 "
                   "on [0, horizon]");
    require_domain(cur >= prev,
                   "QuadraticModelParams: time change must be non-decreasing "
                   "on [0, horizon]");
    prev = cur;
  }

  x0_norm_sq_ = x0_.squaredNorm();
}

QuadraticModelParams QuadraticModelParams::with_state(
    Eigen::VectorXd state) const {
  QuadraticModelParams copy(*this);
  require_domain(state.size() == dim_,
                 "QuadraticModelParams: state must have length dim");
  require_domain(state.allFinite(),
                 "QuadraticModelParams: state entries must be finite");
  copy.x0_ = std::move(state);
  copy.x0_norm_sq_ = copy.x0_.squaredNorm();
  return copy;
}

double potential(const Eigen::Ref<const Eigen::VectorXd>& x, double beta) {
  require_domain(std::isfinite(beta) && beta >= 0.0,
                 "potential: beta must be finite and >= 0");
  require_domain(x.allFinite(), "potential: x entries must be finite");
  return potential_from_norm_sq(x.squaredNorm(), beta);
}

double potential_from_norm_sq(double x_norm_sq, double beta) {
  return 0.5 * beta * beta * x_norm_sq;
}

namespace detail {

double log_cosh(double u) {
  if (u == 0.0) return 0.0;
  // cosh u = e^u (1 + e^{-2u}) / 2
  return u + std::log1p(std::exp(-2.0 * u)) - std::numbers::ln2;
}

double log_sinh(double u) {
  // sinh u = e^u (1 - e^{-2u}) / 2
  return u + std::log(-0.5 * std::expm1(-2.0 * u));
}

}  // namespace detail

namespace {

void check_laplace_args(double alpha, double beta, double t, double x_norm_sq,
                        int dim) {
  require_domain(std::isfinite(alpha) && alpha >= 0.0,
                 "laplace_quadratic: alpha must be finite and >= 0");
  require_domain(std::isfinite(beta) && beta >= 0.0,
                 "laplace_quadratic: beta must be finite and >= 0");
  require_domain(std::isfinite(t) && t >= 0.0,
                 "laplace_quadratic: t must be finite and >= 0");
  require_domain(std::isfinite(x_norm_sq) && x_norm_sq >= 0.0,
                 "laplace_quadratic: x_norm_sq must be finite and >= 0");
  require_domain(dim >= 1, "laplace_quadratic: dim must be >= 1");
}

// Shared core of the corrected and flipped variants. The exponent is
// -(x^2/2) (beta sinh u + sign 2 alpha cosh u) / A with A = cosh u +
// (2 alpha / beta) sinh u, evaluated through w = e^{-2u}:
//   A          = e^u/2 [(1 + w) + (2 alpha / beta)(1 - w)]
//   ratioform  = [beta (1 - w) + sign 2 alpha (1 + w)] / (2 e^{-u} A)
double log_laplace_impl(double alpha, double beta, double t, double x_norm_sq,
                        int dim, double sign) {
  if (beta == 0.0) {
    const double denom = 2.0 * alpha * t + 1.0;
    return -0.5 * dim * std::log(denom) - alpha * x_norm_sq / denom;
  }
  const double u = beta * t;
  const double one_minus = -std::expm1(-2.0 * u);  // 1 - e^{-2u}
  const double one_plus = 1.0 + std::exp(-2.0 * u);
  const double a_shifted = one_plus + (2.0 * alpha / beta) * one_minus;
  const double log_a = u + std::log(0.5 * a_shifted);
  const double ratio =
      (beta * one_minus + sign * 2.0 * alpha * one_plus) / a_shifted;
  return -0.5 * dim * log_a - 0.5 * x_norm_sq * ratio;
}

}  // namespace

double log_laplace_quadratic(double alpha, double beta, double t,
                             double x_norm_sq, int dim) {
  check_laplace_args(alpha, beta, t, x_norm_sq, dim);
  return log_laplace_impl(alpha, beta, t, x_norm_sq, dim, +1.0);
}

double log_laplace_quadratic_flipped(double alpha, double beta, double t,
                                     double x_norm_sq, int dim) {
  check_laplace_args(alpha, beta, t, x_norm_sq, dim);
  return log_laplace_impl(alpha, beta, t, x_norm_sq, dim, -1.0);
}

PropagatorValue laplace_quadratic(double alpha, double beta, double t,
                                  double x_norm_sq, int dim) {
  const double lv = log_laplace_quadratic(alpha, beta, t, x_norm_sq, dim);
  return PropagatorValue{std::exp(lv), lv};
}

double log_propagator_q(double t, const QuadraticModelParams& params) {
  return log_laplace_quadratic(0.0, params.beta(), t, params.x0_norm_sq(),
                               params.dim());
}

PropagatorValue propagator_q(double t, const QuadraticModelParams& params) {
  const double lv = log_propagator_q(t, params);
  return PropagatorValue{std::exp(lv), lv};
}

double log_propagator_qhat(double t, double s,
                           const QuadraticModelParams& params) {
  require_domain(std::isfinite(t) && std::isfinite(s),
                 "propagator_qhat: arguments must be finite");
  require_domain(s >= 0.0, "propagator_qhat: s must be >= 0");
  require_domain(s <= t, "propagator_qhat: s must be <= t");

  const double beta = params.beta();
  if (beta == 0.0 || s == t) return 0.0;

  const double u = beta * (t - s);
  const double tanh_u = std::tanh(u);
  const double coupling = beta * s * tanh_u;  // beta s sinh u / cosh u
  return -0.5 * params.dim() * (detail::log_cosh(u) + std::log1p(coupling)) -
         0.5 * beta * params.x0_norm_sq() * tanh_u / (1.0 + coupling);
}

PropagatorValue propagator_qhat(double t, double s,
                                const QuadraticModelParams& params) {
  const double lv = log_propagator_qhat(t, s, params);
  return PropagatorValue{std::exp(lv), lv};
}

double log_qhat_over_q(double t, double s, const QuadraticModelParams& params) {
  require_domain(std::isfinite(t) && std::isfinite(s),
                 "log_qhat_over_q: arguments must be finite");
  require_domain(s >= 0.0, "log_qhat_over_q: s must be >= 0");
  require_domain(s <= t, "log_qhat_over_q: s must be <= t");

  const double beta = params.beta();
  if (beta == 0.0 || s == 0.0) return 0.0;

  const double u = beta * (t - s);  // window [s, t]
  const double v = beta * s;        // head [0, s] dropped by q-hat
  const double tanh_u = std::tanh(u);
  const double tanh_v = std::tanh(v);
  const double coupling = beta * s * tanh_u;

  // log cosh(beta t) - log cosh(u) = log cosh(v) + log1p(tanh u tanh v)
  const double prefactor_part =
      0.5 * params.dim() *
      (detail::log_cosh(v) + std::log1p(tanh_u * tanh_v) -
       std::log1p(coupling));

  // tanh(beta t) - tanh u / (1 + coupling), grouped so that both summands
  // of the numerator carry the same sign: the gap equals
  // [sinh v / (cosh u cosh(beta t)) + coupling tanh(beta t)] / (1 + coupling).
  const double sech_product = std::exp(
      detail::log_sinh(v) - detail::log_cosh(u) - detail::log_cosh(u + v));
  const double tanh_gap =
      (sech_product + coupling * std::tanh(u + v)) / (1.0 + coupling);
  const double exponent_part = 0.5 * beta * params.x0_norm_sq() * tanh_gap;

  return prefactor_part + exponent_part;
}

}  // namespace hka
