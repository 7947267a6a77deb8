#pragma once

#include "am/model.hpp"

namespace am {

// Discrete-prior model for simultaneous estimation of many normal means:
// mu ~ sum_k alpha_k delta(eta_k), Y | mu ~ N(mu, 1), with m support points.
//
// Parameter layout (dim = 2m):
//   theta[0]        = eta_1
//   theta[k-1]      = eta_k - eta_{k-1}   for k = 2..m, bounded >= 0
//   theta[m + k -1] = alpha_k             for k = 1..m, bounded >= 0
// The alpha block is renormalized to sum 1 after every solver sweep; only the
// gap coordinates theta_2..theta_m are penalized, so shrinking a gap to zero
// merges adjacent support points.
class ManyNormalMeansModel final : public ModelSpec {
 public:
  explicit ManyNormalMeansModel(Eigen::Index support_points);

  Eigen::Index support_points() const { return m_; }
  Eigen::Index dim() const override { return 2 * m_; }

  struct Support {
    Vector eta;    // nondecreasing support points
    Vector alpha;  // nonnegative mass, summing to 1 for solver iterates
  };
  Support unpack(const Vector& theta) const;
  Vector pack(const Vector& eta, const Vector& alpha) const;

  double loss(const Vector& theta, std::span<const double> x,
              double y) const override;
  void add_grad(const Vector& theta, std::span<const double> x, double y,
                double w, Vector& acc) const override;
  double batch_loss_grad(const Vector& theta, const Dataset& data,
                         Vector& acc) const override;
  double sample_predictive(const Vector& theta, std::span<const double> x,
                           double noise, Rng& rng) const override;

  // eta at midpoint quantiles of the sample (sorted y itself when m = n),
  // uniform alpha.
  Vector initial_theta(const Dataset& data) const override;

  Vector lower_bounds() const override;
  std::vector<bool> penalized_mask() const override;
  std::pair<Eigen::Index, Eigen::Index> simplex_block() const override {
    return {m_, 2 * m_};
  }

  // E[mu | Y = y] under the prior encoded by theta.
  double posterior_mean(const Vector& theta, double y) const;

 private:
  Eigen::Index m_;
};

}  // namespace am
