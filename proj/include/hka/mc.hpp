#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hka/model.hpp"

namespace hka {

/// Monte Carlo run parameters. `n_steps` is the total number of grid
/// intervals over the simulated horizon. Identical configs and inputs
/// reproduce bit-identical estimates regardless of the worker count:
/// every path draws from its own substream keyed by (seed, path index),
/// and the reduction over per-path payoffs is always sequential.
struct McConfig {
  std::int64_t n_paths = 100000;
  std::int64_t n_steps = 1000;
  std::uint64_t seed = 42;
  bool antithetic = false;
};

struct McEstimate {
  double mean = 0.0;
  /// Sample standard error over per-path (or per-antithetic-pair) payoffs.
  double std_error = 0.0;
  /// Number of i.i.d. samples behind the estimate (pairs when antithetic).
  std::int64_t n_effective = 0;
};

/// One simulated path bundle: uniform time grid, state path, trapezoid
/// cumulative of the hazard V(X), and the Cox default time (first
/// grid-interpolated crossing of an independent unit-exponential threshold,
/// or +infinity if the threshold is never crossed on the grid).
struct DefaultScenario {
  std::vector<double> grid;
  std::vector<Eigen::VectorXd> state_path;
  std::vector<double> integrated_hazard;
  double default_time = 0.0;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kScenarioMemoryBudget =
    std::size_t{1} << 30;  // 1 GiB

/// Worker count used by the estimators: HKA_THREADS when set (>= 1),
/// otherwise the available hardware parallelism. Estimates do not depend
/// on it.
int worker_count();

/// Materializes full scenarios. Exact Brownian increments (no Euler error);
/// the only discretization is the trapezoid rule applied to V(X). Throws
/// ResourceError when the path storage would exceed `memory_budget_bytes`;
/// the mc_* estimators below never materialize paths and have no such limit.
std::vector<DefaultScenario> simulate_paths(
    double horizon, const QuadraticModelParams& params, const McConfig& cfg,
    std::size_t memory_budget_bytes = kScenarioMemoryBudget);

/// Brute-force estimate of q(t, x) = E[exp(-Int_0^t V(X_s) ds)].
McEstimate mc_q(double t, const QuadraticModelParams& params,
                const McConfig& cfg);

/// Brute-force estimate of q-hat(t, s, x) = E[exp(-Int_s^t V(X_u) du)].
/// With s = 0 this runs the exact same paths and payoffs as mc_q.
McEstimate mc_qhat(double t, double s, const QuadraticModelParams& params,
                   const McConfig& cfg);

/// Brute-force estimate of
/// E[exp(-alpha |X_t|^2 - (beta^2/2) Int_0^t |X_s|^2 ds)].
/// `alpha` and `beta` are taken from the arguments; params supplies the
/// start point and dimension.
McEstimate mc_laplace(double alpha, double beta, double t,
                      const QuadraticModelParams& params, const McConfig& cfg);

/// Estimates E[q(s, X_t) exp(-Int_0^t V)] with the closed-form q inside the
/// expectation; the propagation property says this equals q(t + s, x).
McEstimate mc_propagation_check(double s, double t,
                                const QuadraticModelParams& params,
                                const McConfig& cfg);

/// Estimates E[1_{tau > T} q(lambda_T, X_T)] / q(lambda_0, x0) with Cox
/// default times, the Monte Carlo counterpart of the closed-form
/// defaultable bond price at valuation time 0.
McEstimate mc_price_defaultable(double T, const QuadraticModelParams& params,
                                const McConfig& cfg);

/// Per-path gap between the trapezoid hazard integral at cfg.n_steps and at
/// cfg.n_steps/2 (the same Brownian path subsampled), mapped through the
/// q payoff. Its mean isolates the quadrature bias of halving the step
/// count without the sampling noise of two independent runs. Requires even
/// cfg.n_steps.
McEstimate mc_q_refinement_delta(double t, const QuadraticModelParams& params,
                                 const McConfig& cfg);

}  // namespace hka
