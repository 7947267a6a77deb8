#pragma once

#include <vector>

#include "am/model.hpp"

namespace am {

// Per-column affine map fitted on training covariates: standardized columns
// have mean 0 and variance 1 (population moments). Zero-variance columns are
// dropped and recorded.
class Standardizer {
 public:
  static Standardizer fit(const RowMatrix& x);

  Eigen::Index input_dim() const { return input_dim_; }
  Eigen::Index kept() const { return static_cast<Eigen::Index>(kept_.size()); }
  const std::vector<int>& kept_columns() const { return kept_; }
  const std::vector<int>& dropped_columns() const { return dropped_; }
  const Vector& means() const { return mean_; }
  const Vector& scales() const { return scale_; }

  // Standardize one raw covariate row into out (size kept()).
  void apply_row(std::span<const double> raw, double* out) const;
  RowMatrix apply(const RowMatrix& x) const;

 private:
  Eigen::Index input_dim_ = 0;
  std::vector<int> kept_;
  std::vector<int> dropped_;
  Vector mean_;   // per kept column
  Vector scale_;  // per kept column, > 0
};

// Gaussian linear model y = b0 + x'beta + eps on standardized covariates,
// unit noise variance inside the loss. theta = (intercept, beta_1..beta_q)
// with the intercept exempt from the duality penalty. The predictive sampler
// uses a plug-in residual scale estimated from the fitted data.
class LinearRegressionModel final : public ModelSpec {
 public:
  explicit LinearRegressionModel(const Dataset& train);

  Eigen::Index dim() const override { return 1 + standardizer_.kept(); }
  const Standardizer& standardizer() const { return standardizer_; }

  double loss(const Vector& theta, std::span<const double> x,
              double y) const override;
  void add_grad(const Vector& theta, std::span<const double> x, double y,
                double w, Vector& acc) const override;
  double sample_predictive(const Vector& theta, std::span<const double> x,
                           double noise, Rng& rng) const override;
  // sqrt of the mean squared residual on data, floored at 1e-8 variance.
  double predictive_noise(const Vector& theta,
                          const Dataset& data) const override;
  Vector initial_theta(const Dataset& data) const override;
  std::vector<bool> penalized_mask() const override;

  // Fitted value b0 + x'beta for a raw covariate row.
  double predict(const Vector& theta, std::span<const double> raw_x) const;

  // Coefficients on the raw covariate scale, (b0, beta_1..beta_k) with zeros
  // for dropped columns; predictions on raw inputs are unchanged.
  Vector destandardized(const Vector& theta) const;

 private:
  Standardizer standardizer_;
};

// Classification readout for 0/1-encoded responses; the boundary is
// inclusive: 1 iff pred >= 0.5.
inline int classify(double pred) { return pred >= 0.5 ? 1 : 0; }

// Two-sample t-statistic screening on binary labels (data.y() must be 0/1).
// Pooled-variance form; returns the top_k column indices by |t|, largest
// first, ties broken by lower index. Both classes need at least 2 samples.
std::vector<int> t_score_screen(const Dataset& data, int top_k);

}  // namespace am
