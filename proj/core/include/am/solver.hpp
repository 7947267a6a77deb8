#pragma once

#include <limits>
#include <vector>

#include "am/duality.hpp"
#include "am/model.hpp"

namespace am {

enum class LambdaNorm { L1, L2 };

struct SolverOptions {
  double theta_step = 0.01;  // fixed step size for theta updates
  int max_iters = 5000;
  double tol = 1e-7;         // infinity-norm tolerance on theta change
  LambdaNorm lambda_norm = LambdaNorm::L1;
  double lambda_cap = 1e6;   // upper bound on lambda_i for the L2 duality
  double zero_eps = 1e-10;   // |theta_i| below this counts as zero

  void validate() const;
};

// Gradients of the expected loss under the future (imputation) distribution
// and the observed empirical distribution, both at the current theta.
struct GradientPair {
  Vector g_fut;
  Vector g_obs;
};

struct Solution {
  Vector theta;
  Vector lambda;
  int iterations = 0;
  bool converged = false;
  // Infinity norm of the stationarity residual of the penalized empirical
  // loss at exit (gradient units).
  double residual_g = std::numeric_limits<double>::infinity();
  // Value of the lambda objective at exit, in the configured norm.
  double residual_v = std::numeric_limits<double>::infinity();
};

// Closed-form lambda update for the weighted-L1 duality. With
// d_i = g_fut_i - g_obs_i: lambda_i = max(0, d_i * sign(theta_i)) away from
// zero, and |d_i| at theta_i = 0 (the subgradient sign is chosen so the
// residual cancels exactly). Unpenalized coordinates stay at 0.
Vector lambda_update_l1(const GradientPair& gp, const Vector& theta,
                        const std::vector<bool>& penalized,
                        const SolverOptions& opts);

// Closed-form lambda update for the weighted-L2 duality:
// lambda_i = clamp(d_i / (2 theta_i), 0, lambda_cap), 0 near theta_i = 0.
Vector lambda_update_l2(const GradientPair& gp, const Vector& theta,
                        const std::vector<bool>& penalized,
                        const SolverOptions& opts);

// Proximal (soft-threshold) step on the penalized empirical loss, then
// clipping to lower bounds.
Vector theta_step_l1(const Vector& theta, const Vector& g_obs,
                     const Vector& lambda, double step,
                     const Vector& lower_bounds);

// Plain gradient step on the smooth L2-penalized loss, then bound clipping.
Vector theta_step_l2(const Vector& theta, const Vector& g_obs,
                     const Vector& lambda, double step,
                     const Vector& lower_bounds);

// Alternating equilibrium solve: each sweep evaluates both gradients at the
// current theta, jumps lambda to its closed-form target, and takes one
// proximal/gradient step on theta. Stops once the theta change and the
// movement-implied stationarity residual are inside tolerance.
Solution solve_equilibrium(const ModelSpec& model, const Dataset& obs,
                           const Dataset& fut, DualityKind kind,
                           const SolverOptions& opts, const Vector& theta0);

}  // namespace am
