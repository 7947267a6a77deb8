#include "am/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace am {

namespace {

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

double soft_threshold(double z, double t) {
  return sign(z) * std::max(0.0, std::abs(z) - t);
}

void check_dims(const GradientPair& gp, const Vector& theta,
                const std::vector<bool>& penalized) {
  if (gp.g_fut.size() != theta.size() || gp.g_obs.size() != theta.size() ||
      penalized.size() != static_cast<std::size_t>(theta.size())) {
    throw std::invalid_argument("lambda update: dimension mismatch");
  }
}

// Value of the lambda objective at (theta, lambda): the norm of
// d - dpi/dtheta with the subgradient at theta = 0 chosen to cancel as much
// of d as lambda allows.
double lambda_objective(const Vector& d, const Vector& theta,
                        const Vector& lambda,
                        const std::vector<bool>& penalized, DualityKind kind,
                        const SolverOptions& opts) {
  double l1 = 0.0, l2 = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    double v = d[i];
    if (penalized[static_cast<std::size_t>(i)]) {
      if (kind == DualityKind::WeightedL1) {
        if (std::abs(theta[i]) > opts.zero_eps) {
          v -= lambda[i] * sign(theta[i]);
        } else {
          v = sign(v) * std::max(0.0, std::abs(v) - lambda[i]);
        }
      } else {
        v -= 2.0 * lambda[i] * theta[i];
      }
    }
    l1 += std::abs(v);
    l2 += v * v;
  }
  return opts.lambda_norm == LambdaNorm::L1 ? l1 : std::sqrt(l2);
}

}  // namespace

void SolverOptions::validate() const {
  if (!(theta_step > 0.0)) throw std::invalid_argument("theta_step must be > 0");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (!(tol > 0.0 && tol < 1.0)) {
    throw std::invalid_argument("tol must be in (0, 1)");
  }
  if (!(lambda_cap > 0.0)) throw std::invalid_argument("lambda_cap must be > 0");
  if (!(zero_eps > 0.0)) throw std::invalid_argument("zero_eps must be > 0");
}

Vector lambda_update_l1(const GradientPair& gp, const Vector& theta,
                        const std::vector<bool>& penalized,
                        const SolverOptions& opts) {
  check_dims(gp, theta, penalized);
  Vector lambda = Vector::Zero(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (!penalized[static_cast<std::size_t>(i)]) continue;
    const double d = gp.g_fut[i] - gp.g_obs[i];
    if (std::abs(theta[i]) > opts.zero_eps) {
      lambda[i] = std::max(0.0, d * sign(theta[i]));
    } else {
      lambda[i] = std::abs(d);
    }
  }
  return lambda;
}

Vector lambda_update_l2(const GradientPair& gp, const Vector& theta,
                        const std::vector<bool>& penalized,
                        const SolverOptions& opts) {
  check_dims(gp, theta, penalized);
  Vector lambda = Vector::Zero(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (!penalized[static_cast<std::size_t>(i)]) continue;
    if (std::abs(theta[i]) <= opts.zero_eps) continue;
    const double d = gp.g_fut[i] - gp.g_obs[i];
    lambda[i] = std::clamp(d / (2.0 * theta[i]), 0.0, opts.lambda_cap);
  }
  return lambda;
}

Vector theta_step_l1(const Vector& theta, const Vector& g_obs,
                     const Vector& lambda, double step,
                     const Vector& lower_bounds) {
  if (!(step > 0.0)) throw std::invalid_argument("theta_step_l1: step <= 0");
  Vector out(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double z = theta[i] - step * g_obs[i];
    out[i] = std::max(soft_threshold(z, step * lambda[i]), lower_bounds[i]);
  }
  return out;
}

Vector theta_step_l2(const Vector& theta, const Vector& g_obs,
                     const Vector& lambda, double step,
                     const Vector& lower_bounds) {
  if (!(step > 0.0)) throw std::invalid_argument("theta_step_l2: step <= 0");
  Vector out(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    out[i] = std::max(theta[i] - step * (g_obs[i] + 2.0 * lambda[i] * theta[i]),
                      lower_bounds[i]);
  }
  return out;
}

Solution solve_equilibrium(const ModelSpec& model, const Dataset& obs,
                           const Dataset& fut, DualityKind kind,
                           const SolverOptions& opts, const Vector& theta0) {
  opts.validate();
  const Eigen::Index p = model.dim();
  if (theta0.size() != p) {
    throw std::invalid_argument("solve_equilibrium: theta0 dimension mismatch");
  }
  const Vector bounds = model.lower_bounds();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (theta0[i] < bounds[i]) {
      throw std::invalid_argument("solve_equilibrium: theta0 below bound at " +
                                  std::to_string(i));
    }
  }
  const std::vector<bool> penalized = model.penalized_mask();
  const auto [sx_begin, sx_end] = model.simplex_block();

  auto renormalize = [&](Vector& t) {
    if (sx_end <= sx_begin) return;
    double s = t.segment(sx_begin, sx_end - sx_begin).sum();
    if (!(s > 0.0)) {
      throw std::runtime_error("solve_equilibrium: simplex block summed to 0");
    }
    t.segment(sx_begin, sx_end - sx_begin) /= s;
  };

  Solution sol;
  Vector theta = theta0;
  Vector lambda = Vector::Zero(p);
  Vector d(p);
  GradientPair gp;
  double step = opts.theta_step;
  double prev_g_value = std::numeric_limits<double>::infinity();
  int increase_streak = 0;

  for (int k = 0; k < opts.max_iters; ++k) {
    double loss_obs;
    try {
      loss_obs = empirical_loss_grad(model, theta, obs, gp.g_obs);
      empirical_loss_grad(model, theta, fut, gp.g_fut);
    } catch (const std::exception& e) {
      throw std::runtime_error("solve_equilibrium: iteration " +
                               std::to_string(k) + ": " + e.what());
    }
    d = gp.g_fut - gp.g_obs;

    lambda = kind == DualityKind::WeightedL1
                 ? lambda_update_l1(gp, theta, penalized, opts)
                 : lambda_update_l2(gp, theta, penalized, opts);

    // Divergence guard on the penalized empirical loss; a sustained increase
    // halves the step.
    double g_value = loss_obs;
    for (Eigen::Index i = 0; i < p; ++i) {
      if (!penalized[static_cast<std::size_t>(i)]) continue;
      g_value += kind == DualityKind::WeightedL1
                     ? lambda[i] * std::abs(theta[i])
                     : lambda[i] * theta[i] * theta[i];
    }
    if (!std::isfinite(g_value)) {
      throw std::runtime_error("solve_equilibrium: non-finite objective at iteration " +
                               std::to_string(k));
    }
    if (g_value > prev_g_value) {
      if (++increase_streak >= 10) {
        step *= 0.5;
        increase_streak = 0;
      }
    } else {
      increase_streak = 0;
    }
    prev_g_value = g_value;

    Vector trial = kind == DualityKind::WeightedL1
                       ? theta_step_l1(theta, gp.g_obs, lambda, step, bounds)
                       : theta_step_l2(theta, gp.g_obs, lambda, step, bounds);
    renormalize(trial);

    const double delta = (trial - theta).lpNorm<Eigen::Infinity>();
    const double residual = delta / step;
    if (delta <= opts.tol && residual <= 10.0 * opts.tol) {
      sol.converged = true;
      sol.residual_g = residual;
      sol.residual_v = lambda_objective(d, theta, lambda, penalized, kind, opts);
      break;
    }
    theta = trial;
    sol.iterations = k + 1;
  }

  if (!sol.converged) {
    // Stationarity diagnostics at the final iterate.
    empirical_loss_grad(model, theta, obs, gp.g_obs);
    empirical_loss_grad(model, theta, fut, gp.g_fut);
    d = gp.g_fut - gp.g_obs;
    lambda = kind == DualityKind::WeightedL1
                 ? lambda_update_l1(gp, theta, penalized, opts)
                 : lambda_update_l2(gp, theta, penalized, opts);
    Vector trial = kind == DualityKind::WeightedL1
                       ? theta_step_l1(theta, gp.g_obs, lambda, step, bounds)
                       : theta_step_l2(theta, gp.g_obs, lambda, step, bounds);
    renormalize(trial);
    sol.residual_g = (trial - theta).lpNorm<Eigen::Infinity>() / step;
    sol.residual_v = lambda_objective(d, theta, lambda, penalized, kind, opts);
  }

  sol.theta = std::move(theta);
  sol.lambda = std::move(lambda);
  return sol;
}

}  // namespace am
