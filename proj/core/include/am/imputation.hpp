#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "am/solver.hpp"

namespace am {

struct ImputationConfig {
  int replicates = 100;  // B, number of bootstrap replicates
  // Imputed samples per fitted replicate; defaults to the sample size n.
  std::optional<int> draws_per_replicate;
  std::uint64_t seed = 0;
  SolverOptions solver;
  DualityKind kind = DualityKind::WeightedL1;

  void validate() const;
  int draws_for(Eigen::Index n) const;
};

// Pooled imputation draws (the surrogate future population) together with the
// per-replicate parameter fits that generated them.
struct ImputationPool {
  Dataset samples;
  std::vector<Vector> replicate_thetas;
};

// n draws with replacement, uniform over indices; weights reset to 1.
Dataset bootstrap_resample(const Dataset& data, Rng& rng);

// Equilibrium fit with an explicit resample as the observed sample and the
// original data as the future sample.
Solution fit_replicate(const ModelSpec& model, const Dataset& resample,
                       const Dataset& original, const ImputationConfig& cfg);

// One bootstrap replicate: resample with rng, then fit as above.
Vector fit_bootstrap_replicate(const ModelSpec& model, const Dataset& data,
                               const ImputationConfig& cfg, Rng& rng);

// `count` draws from the fitted predictive model; covariate rows are drawn
// uniformly with replacement from `data` (omitted for covariate-free models).
Dataset generate_imputations(const ModelSpec& model, const Vector& theta,
                             const Dataset& data, int count, Rng& rng);

// B independent replicates (resample -> fit -> imputations), pooled in
// replicate order. Each replicate runs on a stream derived from (seed, index)
// so the result does not depend on thread count.
ImputationPool build_pool(const ModelSpec& model, const Dataset& data,
                          const ImputationConfig& cfg, int threads = 1);

// Final estimate: equilibrium solve of the observed sample against the
// pooled imputation distribution.
Solution am_estimate(const ModelSpec& model, const Dataset& data,
                     const ImputationConfig& cfg, int threads = 1);

}  // namespace am
