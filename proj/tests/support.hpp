#pragma once

#include <cmath>
#include <vector>

#include "am/model.hpp"

namespace am::testsupport {

// Central finite differences of the per-observation loss, step
// 1e-5 * max(1, |theta_i|) per coordinate.
inline Vector fd_grad(const ModelSpec& model, const Vector& theta,
                      std::span<const double> x, double y) {
  Vector g(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double h = 1e-5 * std::max(1.0, std::abs(theta[i]));
    Vector up = theta, down = theta;
    up[i] += h;
    down[i] -= h;
    g[i] = (model.loss(up, x, y) - model.loss(down, x, y)) / (2.0 * h);
  }
  return g;
}

// Relative error with a unit floor in the denominator.
inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline double max_grad_rel_err(const ModelSpec& model, const Vector& theta,
                               std::span<const double> x, double y) {
  const Vector analytic = model.grad(theta, x, y);
  const Vector fd = fd_grad(model, theta, x, y);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    worst = std::max(worst, rel_err(analytic[i], fd[i]));
  }
  return worst;
}

// Deterministic sample with exact first two moments: mean `mean` and
// population variance sd^2 (equally spaced symmetric scores, rescaled).
inline Vector moments_fixture(int n, double mean, double sd) {
  Vector z(n);
  for (int i = 0; i < n; ++i) z[i] = static_cast<double>(i) - 0.5 * (n - 1);
  if (n > 1) {
    const double var = z.squaredNorm() / n;
    z *= sd / std::sqrt(var);
  }
  return z.array() + mean;
}

}  // namespace am::testsupport
