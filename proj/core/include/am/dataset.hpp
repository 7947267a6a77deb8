#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

namespace am {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
// Covariates are stored row-major so a single observation is contiguous.
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Immutable sample of (optional covariate row, response) pairs.
//
// The same type houses the observed sample, bootstrap resamples, and pooled
// imputation draws; nonnegative weights let a reweighted pool stand in for an
// ordinary sample. Weights default to 1 and must not all be zero.
class Dataset {
 public:
  // Covariate-free sample.
  explicit Dataset(Vector y);
  Dataset(Vector y, Vector weights);
  // Sample with covariates; x must have one row per response.
  Dataset(RowMatrix x, Vector y);
  Dataset(RowMatrix x, Vector y, Vector weights);

  Eigen::Index n() const { return y_.size(); }
  Eigen::Index num_covariates() const { return x_.cols(); }
  bool has_covariates() const { return x_.cols() > 0; }

  const Vector& y() const { return y_; }
  const RowMatrix& x() const { return x_; }
  const Vector& weights() const { return weights_; }
  double weight_sum() const { return weight_sum_; }

  // Covariate row as a view; empty span when the sample has no covariates.
  std::span<const double> xrow(Eigen::Index i) const {
    if (!has_covariates()) return {};
    return {x_.data() + i * x_.cols(), static_cast<std::size_t>(x_.cols())};
  }

  // Same observations with different weights.
  Dataset with_weights(Vector weights) const;

  // Column subset (keeps responses and weights).
  Dataset select_columns(const std::vector<int>& columns) const;

 private:
  void validate() const;

  RowMatrix x_;  // n x k, or 0 x 0 when covariate-free
  Vector y_;
  Vector weights_;
  double weight_sum_ = 0.0;
};

}  // namespace am
