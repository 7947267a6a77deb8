#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "am/baselines.hpp"
#include "am/imputation.hpp"

namespace am {

enum class StudyKind { GaussianA, Bimodal, ZeroInflated };

struct StudySpec {
  StudyKind kind = StudyKind::GaussianA;
  std::vector<int> sample_sizes{10, 20, 50};
  int replications = 200;  // K
  double scale_a = 0.01;   // prior variance A for GaussianA
  std::uint64_t seed = 0;

  void validate() const;
};

struct SimulatedMeans {
  Vector mu;
  Vector y;  // mu + standard normal noise
};

// One draw of the latent means and their observations.
//   GaussianA:    mu_i ~ N(0, A)
//   Bimodal:      half mu ~ N(-2, 0.01), half N(2, 0.01); odd n puts the
//                 extra unit on the negative component
//   ZeroInflated: mu_i = 0 with probability 0.9, else N(-3, 1)
SimulatedMeans simulate_means(StudyKind kind, int n, double a, Rng& rng);

// Mean prediction error (1/n) sum (mu_i - mu_hat_i)^2.
double mpe(const Vector& mu, const Vector& mu_hat);

enum class MeansMethod { Mle, JamesStein, Am };

std::string to_string(MeansMethod m);

struct StudyResult {
  StudySpec spec;
  std::vector<MeansMethod> methods;
  // mean_mpe[method_index][n_index], Monte Carlo standard errors alongside.
  std::vector<std::vector<double>> mean_mpe;
  std::vector<std::vector<double>> se;
};

// Runs `replications` simulated datasets per sample size, estimating each
// with the requested methods (AM uses the many-normal-means model with
// m = n and the posterior-mean readout). Replications run on derived RNG
// streams and may execute in parallel deterministically.
StudyResult run_study(const StudySpec& spec,
                      const std::vector<MeansMethod>& methods,
                      const ImputationConfig& am_cfg, int threads = 1);

enum class RegMethod { Am, Lasso, Ridge };

std::string to_string(RegMethod m);

struct RegMethodMetrics {
  int test_errors = 0;  // misclassifications at the 0.5 threshold
  int n_test = 0;
  double test_mse = 0.0;
  int n_above_1e4 = 0;  // standardized |beta| > 1e-4
  int n_above_0 = 0;    // standardized |beta| > 0
  double cv_lambda = 0.0;  // selected lambda (CV methods only)
};

struct RegressionOptions {
  std::vector<RegMethod> methods{RegMethod::Am, RegMethod::Lasso,
                                 RegMethod::Ridge};
  std::optional<int> screen_top;  // t-score pre-screening column budget
  ImputationConfig am;
  CvConfig cv;
};

struct RegressionResult {
  std::vector<RegMethod> methods;
  std::vector<RegMethodMetrics> metrics;  // parallel to methods
  std::vector<int> screened_columns;      // empty when screening is off
  std::vector<int> dropped_columns;       // zero-variance training columns
  // AM fit echo (set when Am is among the methods).
  Vector am_theta;
  Vector am_lambda;
  Solution am_solution;
};

// The p > n classification protocol: optional t-score screening on the
// training data only, per-method fit, misclassification and MSE on the test
// set, and sparsity counts of the standardized coefficients. Responses are
// the 0/1 labels regressed directly.
RegressionResult run_regression(const Dataset& train, const Dataset& test,
                                const RegressionOptions& opts,
                                int threads = 1);

}  // namespace am
