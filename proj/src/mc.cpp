#include "hka/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

namespace hka {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  // splitmix64 finalizer
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index));
}

void check_config(const McConfig& cfg) {
  if (cfg.n_paths < 2)
    throw std::domain_error("McConfig: n_paths must be >= 2");
  if (cfg.n_steps < 2)
    throw std::domain_error("McConfig: n_steps must be >= 2");
  if (cfg.antithetic && cfg.n_paths % 2 != 0)
    throw std::domain_error("McConfig: antithetic runs need even n_paths");
}

void check_horizon(double horizon, const char* what) {
  if (!std::isfinite(horizon) || horizon <= 0.0)
    throw std::domain_error(what);
}

// Contiguous index ranges per worker. Each fn(i) may only write state owned
// by sample i, which keeps the result independent of the partitioning.
template <typename Fn>
void parallel_samples(std::int64_t n, Fn&& fn) {
  const int workers =
      static_cast<int>(std::min<std::int64_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::int64_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Sequential two-pass mean / standard error; the fixed summation order is
// part of the determinism contract.
McEstimate reduce_payoffs(const std::vector<double>& payoffs) {
  const auto n = static_cast<std::int64_t>(payoffs.size());
  double sum = 0.0;
  for (double p : payoffs) sum += p;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double p : payoffs) {
    const double d = p - mean;
    ss += d * d;
  }
  const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  return McEstimate{mean, std::sqrt(var / static_cast<double>(n)), n};
}

struct PathStats {
  double integral = 0.0;       // trapezoid of |X|^2 over [0, horizon]
  double integral_head = 0.0;  // interpolated cumulative at head_time
  double final_norm_sq = 0.0;
  double integral_coarse = 0.0;  // trapezoid over every second node
};

// Walks a Brownian path (and, when antithetic, its mirror with all
// increments negated) on a uniform grid and accumulates the trapezoid
// integral of |X|^2. head_time in (0, horizon] marks a point whose
// cumulative integral is recorded by linear interpolation between nodes.
void walk_pair(std::mt19937_64& engine, const Eigen::VectorXd& x0,
               double horizon, std::int64_t n_steps, double head_time,
               bool antithetic, bool track_coarse, PathStats& a,
               PathStats& b) {
  const auto dim = x0.size();
  const double dt = horizon / static_cast<double>(n_steps);
  const double sqrt_dt = std::sqrt(dt);

  std::int64_t head_node = -1;
  double head_frac = 0.0;
  if (head_time > 0.0) {
    head_node = std::min<std::int64_t>(
        static_cast<std::int64_t>(head_time / dt), n_steps - 1);
    head_frac = head_time / dt - static_cast<double>(head_node);
  }

  Eigen::VectorXd xa = x0;
  Eigen::VectorXd xb = x0;
  double nsq_a = x0.squaredNorm();
  double nsq_b = nsq_a;
  double even_nsq_a = nsq_a;  // |X|^2 at the previous even node
  double even_nsq_b = nsq_b;
  double head_lo_a = 0.0;
  double head_lo_b = 0.0;

  std::normal_distribution<double> normal;
  for (std::int64_t k = 1; k <= n_steps; ++k) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double dw = sqrt_dt * normal(engine);
      xa[c] += dw;
      if (antithetic) xb[c] -= dw;
    }
    const double next_a = xa.squaredNorm();
    a.integral += 0.5 * dt * (nsq_a + next_a);
    nsq_a = next_a;
    double next_b = 0.0;
    if (antithetic) {
      next_b = xb.squaredNorm();
      b.integral += 0.5 * dt * (nsq_b + next_b);
      nsq_b = next_b;
    }
    if (track_coarse && k % 2 == 0) {
      a.integral_coarse += dt * (even_nsq_a + nsq_a);
      even_nsq_a = nsq_a;
      if (antithetic) {
        b.integral_coarse += dt * (even_nsq_b + nsq_b);
        even_nsq_b = nsq_b;
      }
    }
    if (k == head_node) {
      head_lo_a = a.integral;
      head_lo_b = b.integral;
    } else if (k == head_node + 1 && head_node >= 0) {
      a.integral_head = head_lo_a + head_frac * (a.integral - head_lo_a);
      b.integral_head = head_lo_b + head_frac * (b.integral - head_lo_b);
    }
  }
  a.final_norm_sq = nsq_a;
  b.final_norm_sq = antithetic ? nsq_b : nsq_a;
}

// Shared estimator driver: one substream per sample, payoffs written into
// per-sample slots, sequential reduction.
template <typename PayoffFn>
McEstimate run_estimator(const QuadraticModelParams& params,
                         const McConfig& cfg, double horizon, double head_time,
                         bool needs_threshold, bool track_coarse,
                         PayoffFn&& payoff) {
  check_config(cfg);
  const std::int64_t n_samples =
      cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;
  std::vector<double> payoffs(static_cast<std::size_t>(n_samples));
  parallel_samples(n_samples, [&](std::int64_t i) {
    std::mt19937_64 engine(
        substream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    double threshold_a = std::numeric_limits<double>::infinity();
    double threshold_b = std::numeric_limits<double>::infinity();
    if (needs_threshold) {
      std::exponential_distribution<double> unit_exp(1.0);
      threshold_a = unit_exp(engine);
      if (cfg.antithetic) threshold_b = unit_exp(engine);
    }
    PathStats a;
    PathStats b;
    walk_pair(engine, params.x0(), horizon, cfg.n_steps, head_time,
              cfg.antithetic, track_coarse, a, b);
    const double pa = payoff(a, threshold_a);
    payoffs[static_cast<std::size_t>(i)] =
        cfg.antithetic ? 0.5 * (pa + payoff(b, threshold_b)) : pa;
  });
  return reduce_payoffs(payoffs);
}

}  // namespace

int worker_count() {
  static const int cached = [] {
    if (const char* env = std::getenv("HKA_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v >= 1)
        return static_cast<int>(std::min(v, 256L));
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
  }();
  return cached;
}

McEstimate mc_qhat(double t, double s, const QuadraticModelParams& params,
                   const McConfig& cfg) {
  check_horizon(t, "mc_qhat: t must be finite and > 0");
  if (!std::isfinite(s) || s < 0.0 || s > t)
    throw std::domain_error("mc_qhat: s must satisfy 0 <= s <= t");
  if (s == t) {
    // empty integration window: every payoff is 1 with zero variance
    check_config(cfg);
    return McEstimate{1.0, 0.0,
                      cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths};
  }
  const double c = potential_from_norm_sq(1.0, params.beta());  // beta^2/2
  return run_estimator(params, cfg, t, s, false, false,
                       [c](const PathStats& st, double) {
                         return std::exp(-c * (st.integral - st.integral_head));
                       });
}

McEstimate mc_q(double t, const QuadraticModelParams& params,
                const McConfig& cfg) {
  return mc_qhat(t, 0.0, params, cfg);
}

McEstimate mc_laplace(double alpha, double beta, double t,
                      const QuadraticModelParams& params, const McConfig& cfg) {
  if (!std::isfinite(alpha) || alpha < 0.0)
    throw std::domain_error("mc_laplace: alpha must be finite and >= 0");
  if (!std::isfinite(beta) || beta < 0.0)
    throw std::domain_error("mc_laplace: beta must be finite and >= 0");
  check_horizon(t, "mc_laplace: t must be finite and > 0");
  const double c = potential_from_norm_sq(1.0, beta);
  return run_estimator(
      params, cfg, t, 0.0, false, false,
      [alpha, c](const PathStats& st, double) {
        return std::exp(-alpha * st.final_norm_sq - c * st.integral);
      });
}

McEstimate mc_propagation_check(double s, double t,
                                const QuadraticModelParams& params,
                                const McConfig& cfg) {
  check_horizon(s, "mc_propagation_check: s must be finite and > 0");
  check_horizon(t, "mc_propagation_check: t must be finite and > 0");
  const double beta = params.beta();
  const int dim = params.dim();
  const double c = potential_from_norm_sq(1.0, beta);
  return run_estimator(
      params, cfg, t, 0.0, false, false,
      [s, beta, dim, c](const PathStats& st, double) {
        const double log_q_inner =
            log_laplace_quadratic(0.0, beta, s, st.final_norm_sq, dim);
        return std::exp(log_q_inner - c * st.integral);
      });
}

McEstimate mc_price_defaultable(double T, const QuadraticModelParams& params,
                                const McConfig& cfg) {
  check_horizon(T, "mc_price_defaultable: T must be finite and > 0");
  const double beta = params.beta();
  const int dim = params.dim();
  const double c = potential_from_norm_sq(1.0, beta);
  const double lambda_T = params.time_change()(T);
  const double log_q0 = log_propagator_q(params.time_change()(0.0), params);
  return run_estimator(
      params, cfg, T, 0.0, true, false,
      [beta, dim, c, lambda_T, log_q0](const PathStats& st, double threshold) {
        if (c * st.integral >= threshold) return 0.0;  // defaulted by T
        return std::exp(
            log_laplace_quadratic(0.0, beta, lambda_T, st.final_norm_sq, dim) -
            log_q0);
      });
}

McEstimate mc_q_refinement_delta(double t, const QuadraticModelParams& params,
                                 const McConfig& cfg) {
  check_horizon(t, "mc_q_refinement_delta: t must be finite and > 0");
  if (cfg.n_steps % 2 != 0)
    throw std::domain_error("mc_q_refinement_delta: n_steps must be even");
  const double c = potential_from_norm_sq(1.0, params.beta());
  return run_estimator(params, cfg, t, 0.0, false, true,
                       [c](const PathStats& st, double) {
                         return std::exp(-c * st.integral) -
                                std::exp(-c * st.integral_coarse);
                       });
}

std::vector<DefaultScenario> simulate_paths(double horizon,
                                            const QuadraticModelParams& params,
                                            const McConfig& cfg,
                                            std::size_t memory_budget_bytes) {
  check_horizon(horizon, "simulate_paths: horizon must be finite and > 0");
  check_config(cfg);

  const auto n_paths = static_cast<std::size_t>(cfg.n_paths);
  const auto n_nodes = static_cast<std::size_t>(cfg.n_steps) + 1;
  const auto dim = static_cast<std::size_t>(params.dim());
  // grid + hazard + state doubles, plus per-node vector bookkeeping
  const std::size_t estimate =
      n_paths * n_nodes * (8 * (2 + dim) + sizeof(Eigen::VectorXd));
  if (estimate > memory_budget_bytes)
    throw ResourceError(
        "simulate_paths: n_paths*n_steps*dim exceeds the memory budget; use "
        "the streaming estimators instead");

  const double dt = horizon / static_cast<double>(cfg.n_steps);
  const double sqrt_dt = std::sqrt(dt);
  const double c = potential_from_norm_sq(1.0, params.beta());

  std::vector<double> grid(n_nodes);
  for (std::size_t k = 0; k < n_nodes; ++k)
    grid[k] = static_cast<double>(k) * dt;

  std::vector<DefaultScenario> scenarios(n_paths);
  const std::int64_t n_samples =
      cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;

  parallel_samples(n_samples, [&](std::int64_t sample) {
    std::mt19937_64 engine(
        substream_seed(cfg.seed, static_cast<std::uint64_t>(sample)));
    std::exponential_distribution<double> unit_exp(1.0);
    const double threshold_a = unit_exp(engine);
    const double threshold_b = cfg.antithetic ? unit_exp(engine) : 0.0;

    const int members = cfg.antithetic ? 2 : 1;
    std::vector<DefaultScenario*> outs(members);
    for (int m = 0; m < members; ++m) {
      auto& sc = scenarios[static_cast<std::size_t>(
          cfg.antithetic ? 2 * sample + m : sample)];
      sc.grid = grid;
      sc.state_path.assign(n_nodes, params.x0());
      sc.integrated_hazard.assign(n_nodes, 0.0);
      outs[m] = &sc;
    }

    std::normal_distribution<double> normal;
    for (std::size_t k = 1; k < n_nodes; ++k) {
      for (int m = 0; m < members; ++m)
        outs[m]->state_path[k] = outs[m]->state_path[k - 1];
      for (std::size_t cdim = 0; cdim < dim; ++cdim) {
        const double dw = sqrt_dt * normal(engine);
        outs[0]->state_path[k][static_cast<Eigen::Index>(cdim)] += dw;
        if (members == 2)
          outs[1]->state_path[k][static_cast<Eigen::Index>(cdim)] -= dw;
      }
      for (int m = 0; m < members; ++m) {
        auto& sc = *outs[m];
        const double v_prev = c * sc.state_path[k - 1].squaredNorm();
        const double v_cur = c * sc.state_path[k].squaredNorm();
        sc.integrated_hazard[k] =
            sc.integrated_hazard[k - 1] + 0.5 * dt * (v_prev + v_cur);
      }
    }

    const double thresholds[2] = {threshold_a, threshold_b};
    for (int m = 0; m < members; ++m) {
      auto& sc = *outs[m];
      sc.default_time = std::numeric_limits<double>::infinity();
      for (std::size_t k = 1; k < n_nodes; ++k) {
        if (sc.integrated_hazard[k] >= thresholds[m]) {
          const double gap =
              sc.integrated_hazard[k] - sc.integrated_hazard[k - 1];
          sc.default_time =
              gap > 0.0
                  ? grid[k - 1] + dt *
                                      (thresholds[m] -
                                       sc.integrated_hazard[k - 1]) /
                                      gap
                  : grid[k - 1];
          break;
        }
      }
    }
  });

  return scenarios;
}

}  // namespace hka
