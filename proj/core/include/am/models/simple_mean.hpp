#pragma once

#include "am/model.hpp"

namespace am {

// Unit-variance Gaussian location model, p = 1:
// loss(theta, y) = (theta - y)^2 / 2 + log(2 pi) / 2.
class SimpleMeanModel final : public ModelSpec {
 public:
  Eigen::Index dim() const override { return 1; }

  double loss(const Vector& theta, std::span<const double> x,
              double y) const override;
  void add_grad(const Vector& theta, std::span<const double> x, double y,
                double w, Vector& acc) const override;
  double sample_predictive(const Vector& theta, std::span<const double> x,
                           double noise, Rng& rng) const override;
  Vector initial_theta(const Dataset& data) const override;
};

// Closed-form equilibrium estimate for the scalar model when the observed
// sample has mean boot_mean and the future sample has mean data_mean:
// boot_mean when |boot_mean| <= |data_mean| with matching signs, data_mean
// when |boot_mean| > |data_mean| with matching signs, 0 on a sign mismatch.
// sign(0) matches either sign.
double simple_closed_form(double boot_mean, double data_mean);

// Exact expectation of the bootstrap-step estimate over resamples of a sample
// with mean data_mean and unit variance:
//   (1 - Phi(-sqrt(n) |ybar|)) ybar
//     - |phi(-sqrt(n) |ybar|) - phi(0)| sign(ybar) / sqrt(n).
double exact_simple_expectation(double data_mean, int n);

// Standard normal density and distribution function.
double normal_pdf(double z);
double normal_cdf(double z);

}  // namespace am
