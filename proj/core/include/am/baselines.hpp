#pragma once

#include <cstdint>
#include <vector>

#include "am/dataset.hpp"

namespace am {

// MLE for the many-normal-means problem: mu_hat_i = y_i.
Vector mle_means(const Vector& y);

struct JamesSteinResult {
  Vector estimates;
  // Set when sum (y - ybar)^2 = 0; the estimate degenerates to all-ybar.
  bool degenerate_spread = false;
};

// Plain (non-positive-part) James-Stein shrinkage toward the grand mean:
// ybar + [1 - (n-3)/SS] (y_i - ybar). Requires n >= 4.
JamesSteinResult james_stein(const Vector& y);

// Closed-form expected MPE of James-Stein when mu ~ N(0, A):
// A/(A+1) + (3/n)(1 - A/(A+1)).
double js_expected_mpe(double a, int n);

// Penalized least squares on standardized covariates. Coefficients are
// returned as (intercept, beta_1..beta_k); the intercept is unpenalized.
// Objective: (1/2n) sum (y - b0 - x'beta)^2 + lambda * penalty(beta).
Vector ridge_fit(const Dataset& train, double lambda);
Vector lasso_fit(const Dataset& train, double lambda);

struct CvConfig {
  int folds = 10;
  // Descending positive grid; empty means the data-driven default
  // (50 log-spaced values from lambda_max down to 1e-3 lambda_max).
  std::vector<double> lambda_grid;
  std::uint64_t seed = 0;

  void validate() const;
};

// Smallest lambda that zeroes every lasso coefficient.
double lasso_lambda_max(const Dataset& train);

std::vector<double> default_lambda_grid(const Dataset& train, int count = 50);

enum class PenalizedFitter { Ridge, Lasso };

struct CvResult {
  double best_lambda = 0.0;
  std::vector<double> lambdas;
  std::vector<double> cv_errors;  // mean held-out squared error per lambda
  Vector coef;                    // refit on the full data at best_lambda
};

// K-fold cross-validation: seeded shuffle, round-robin fold assignment,
// held-out squared error pooled over folds; ties prefer the larger lambda.
CvResult cv_select(const Dataset& train, PenalizedFitter fitter,
                   const CvConfig& cfg);

}  // namespace am
