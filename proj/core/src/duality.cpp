#include "am/duality.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace am {

DualitySpec::DualitySpec(DualityKind kind, Vector lambda,
                         std::vector<bool> penalized)
    : kind_(kind), lambda_(std::move(lambda)), penalized_(std::move(penalized)) {
  validate();
}

DualitySpec::DualitySpec(DualityKind kind, Vector lambda)
    : kind_(kind), lambda_(std::move(lambda)) {
  penalized_.assign(static_cast<std::size_t>(lambda_.size()), true);
  validate();
}

void DualitySpec::validate() const {
  if (penalized_.size() != static_cast<std::size_t>(lambda_.size())) {
    throw std::invalid_argument("DualitySpec: mask length mismatch");
  }
  for (Eigen::Index i = 0; i < lambda_.size(); ++i) {
    if (!(lambda_[i] >= 0.0) || !std::isfinite(lambda_[i])) {
      throw std::invalid_argument("DualitySpec: lambda must be >= 0, got " +
                                  std::to_string(lambda_[i]) + " at " +
                                  std::to_string(i));
    }
    if (!penalized_[static_cast<std::size_t>(i)] && lambda_[i] != 0.0) {
      throw std::invalid_argument(
          "DualitySpec: unpenalized coordinate has nonzero lambda at " +
          std::to_string(i));
    }
  }
}

double DualitySpec::value(const Vector& theta) const {
  if (theta.size() != lambda_.size()) {
    throw std::invalid_argument("DualitySpec::value: dimension mismatch");
  }
  double v = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (!penalized_[static_cast<std::size_t>(i)]) continue;
    if (kind_ == DualityKind::WeightedL1) {
      v += lambda_[i] * std::abs(theta[i]);
    } else {
      v += lambda_[i] * theta[i] * theta[i];
    }
  }
  return v;
}

Vector DualitySpec::gradient(const Vector& theta) const {
  if (theta.size() != lambda_.size()) {
    throw std::invalid_argument("DualitySpec::gradient: dimension mismatch");
  }
  Vector g = Vector::Zero(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (!penalized_[static_cast<std::size_t>(i)]) continue;
    if (kind_ == DualityKind::WeightedL1) {
      if (theta[i] > 0.0) g[i] = lambda_[i];
      else if (theta[i] < 0.0) g[i] = -lambda_[i];
    } else {
      g[i] = 2.0 * lambda_[i] * theta[i];
    }
  }
  return g;
}

}  // namespace am
