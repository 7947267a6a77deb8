#include "am/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace am {

Dataset::Dataset(Vector y) : y_(std::move(y)) {
  weights_ = Vector::Ones(y_.size());
  weight_sum_ = static_cast<double>(y_.size());
  validate();
}

Dataset::Dataset(Vector y, Vector weights)
    : y_(std::move(y)), weights_(std::move(weights)) {
  weight_sum_ = weights_.sum();
  validate();
}

Dataset::Dataset(RowMatrix x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
  weights_ = Vector::Ones(y_.size());
  weight_sum_ = static_cast<double>(y_.size());
  validate();
}

Dataset::Dataset(RowMatrix x, Vector y, Vector weights)
    : x_(std::move(x)), y_(std::move(y)), weights_(std::move(weights)) {
  weight_sum_ = weights_.sum();
  validate();
}

void Dataset::validate() const {
  if (y_.size() < 1) throw std::invalid_argument("Dataset: empty sample");
  if (x_.size() > 0 && x_.rows() != y_.size()) {
    throw std::invalid_argument(
        "Dataset: covariate rows (" + std::to_string(x_.rows()) +
        ") do not match responses (" + std::to_string(y_.size()) + ")");
  }
  if (weights_.size() != y_.size()) {
    throw std::invalid_argument("Dataset: weight length mismatch");
  }
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw std::invalid_argument("Dataset: negative or non-finite weight at " +
                                  std::to_string(i));
    }
  }
  if (!(weight_sum_ > 0.0)) {
    throw std::invalid_argument("Dataset: weights sum to zero");
  }
}

Dataset Dataset::with_weights(Vector weights) const {
  if (has_covariates()) return Dataset(x_, y_, std::move(weights));
  return Dataset(y_, std::move(weights));
}

Dataset Dataset::select_columns(const std::vector<int>& columns) const {
  RowMatrix sub(n(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] < 0 || columns[j] >= num_covariates()) {
      throw std::invalid_argument("Dataset: column index out of range");
    }
    sub.col(static_cast<Eigen::Index>(j)) = x_.col(columns[j]);
  }
  return Dataset(std::move(sub), y_, weights_);
}

}  // namespace am
