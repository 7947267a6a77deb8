#pragma once

#include <span>
#include <utility>
#include <vector>

#include "am/dataset.hpp"
#include "am/rng.hpp"

namespace am {

// Pluggable statistical model: per-observation negative log-likelihood (in
// nats, normalizing constants included), its exact gradient, a predictive
// sampler, and parameter metadata consumed by the solver.
//
// Implementations are immutable and all evaluations are pure, so one instance
// can be shared across threads.
class ModelSpec {
 public:
  virtual ~ModelSpec() = default;

  // Parameter dimension p.
  virtual Eigen::Index dim() const = 0;

  // Loss of one observation; x is empty for covariate-free models.
  virtual double loss(const Vector& theta, std::span<const double> x,
                      double y) const = 0;

  // Adds w * (gradient of loss at one observation) into acc.
  virtual void add_grad(const Vector& theta, std::span<const double> x,
                        double y, double w, Vector& acc) const = 0;

  // Fused loss + gradient over a whole dataset: returns the weighted loss sum
  // and adds the weighted gradient sum into acc (zero-weight observations are
  // skipped). The default loops over observations; models with shared
  // per-parameter work override it.
  virtual double batch_loss_grad(const Vector& theta, const Dataset& data,
                                 Vector& acc) const;

  // One simulated response from the fitted model. `noise` is the residual
  // standard deviation produced by predictive_noise().
  virtual double sample_predictive(const Vector& theta,
                                   std::span<const double> x, double noise,
                                   Rng& rng) const = 0;

  // Residual scale for the predictive sampler; default is the model's unit
  // noise. Data-dependent scales (plug-in sigma-hat) override this.
  virtual double predictive_noise(const Vector& theta,
                                  const Dataset& data) const;

  virtual Vector initial_theta(const Dataset& data) const = 0;

  // Per-coordinate lower bounds; -infinity where unconstrained.
  virtual Vector lower_bounds() const;

  // Coordinates the duality function may penalize; the rest keep lambda = 0.
  virtual std::vector<bool> penalized_mask() const;

  // Half-open coordinate range renormalized to sum 1 after each solver sweep;
  // empty by default.
  virtual std::pair<Eigen::Index, Eigen::Index> simplex_block() const {
    return {0, 0};
  }

  // Convenience: gradient of one observation as a fresh vector.
  Vector grad(const Vector& theta, std::span<const double> x, double y) const;
};

// Weighted mean of per-observation losses (weights normalized to sum 1).
// Throws identifying the observation index if any loss is non-finite.
double empirical_loss(const ModelSpec& model, const Vector& theta,
                      const Dataset& data);

// Weighted mean of per-observation gradients.
Vector empirical_grad(const ModelSpec& model, const Vector& theta,
                      const Dataset& data);

// Fused weighted-mean loss and gradient in one pass; grad_out is overwritten.
double empirical_loss_grad(const ModelSpec& model, const Vector& theta,
                           const Dataset& data, Vector& grad_out);

}  // namespace am
