#pragma once

#include <vector>

#include "am/dataset.hpp"

namespace am {

enum class DualityKind { WeightedL1, WeightedL2 };

// Adaptive penalty pi(theta, lambda) with per-coordinate multipliers.
//
// WeightedL1: sum_i lambda_i * |theta_i|
// WeightedL2: sum_i lambda_i * theta_i^2
//
// Coordinates with penalized[i] == false (intercepts, mixture weights) are
// exempt: their lambda is pinned at 0 and they contribute nothing.
class DualitySpec {
 public:
  DualitySpec(DualityKind kind, Vector lambda, std::vector<bool> penalized);

  // All coordinates penalized.
  DualitySpec(DualityKind kind, Vector lambda);

  DualityKind kind() const { return kind_; }
  Eigen::Index dim() const { return lambda_.size(); }
  const Vector& lambda() const { return lambda_; }
  const std::vector<bool>& penalized() const { return penalized_; }

  double value(const Vector& theta) const;

  // Gradient of the penalty; sign(0) is reported as 0 (subgradient center),
  // the solver handles the theta = 0 case itself.
  Vector gradient(const Vector& theta) const;

 private:
  void validate() const;

  DualityKind kind_;
  Vector lambda_;
  std::vector<bool> penalized_;
};

}  // namespace am
