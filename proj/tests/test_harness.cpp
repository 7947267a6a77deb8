#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "am/harness.hpp"
#include "support.hpp"

using namespace am;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Noiseless linearly separable fixture: n rows, p columns, labels decided by
// the first coordinate.
void separable_fixture(int n, int p, Rng& rng, RowMatrix* x, Vector* y) {
  x->resize(n, p);
  y->resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) (*x)(i, j) = normal(rng);
    // responses are exactly linear in column 0, pushed to {0,1}
    (*x)(i, 0) = (i % 2 == 0) ? -1.0 : 1.0;
    (*y)[i] = (i % 2 == 0) ? 0.0 : 1.0;
  }
}

}  // namespace

TEST_CASE("simulated means distributions") {
  Rng rng(3);

  // A = 0 pins every mean at zero
  const SimulatedMeans zero = simulate_means(StudyKind::GaussianA, 50, 0.0, rng);
  for (int i = 0; i < 50; ++i) CHECK(zero.mu[i] == 0.0);

  // bimodal: exactly half per component, negatives first
  const SimulatedMeans bi = simulate_means(StudyKind::Bimodal, 10, 0.01, rng);
  int neg = 0;
  for (int i = 0; i < 10; ++i) neg += bi.mu[i] < 0 ? 1 : 0;
  CHECK(neg == 5);
  // odd n favors the negative component
  const SimulatedMeans bi7 = simulate_means(StudyKind::Bimodal, 7, 0.01, rng);
  neg = 0;
  for (int i = 0; i < 7; ++i) neg += bi7.mu[i] < 0 ? 1 : 0;
  CHECK(neg == 4);

  // zero-inflated: fraction of exact zeros near 0.9
  int zeros = 0;
  const int total = 100000;
  for (int chunk = 0; chunk < total / 50; ++chunk) {
    const SimulatedMeans zi =
        simulate_means(StudyKind::ZeroInflated, 50, 0.01, rng);
    for (int i = 0; i < 50; ++i) zeros += zi.mu[i] == 0.0 ? 1 : 0;
  }
  CHECK(std::abs(static_cast<double>(zeros) / total - 0.9) <= 0.006);
}

TEST_CASE("mpe") {
  CHECK(mpe(vec({1, 2}), vec({1, 2})) == doctest::Approx(0.0));
  CHECK(mpe(vec({0, 0}), vec({1, -1})) == doctest::Approx(1.0));
  // pointwise, not permutation invariant
  CHECK(mpe(vec({0, 1}), vec({1, 0})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(mpe(vec({1}), vec({1, 2})), std::invalid_argument);
}

TEST_CASE("study runner basics") {
  StudySpec spec;
  spec.sample_sizes = {10};
  spec.replications = 50;
  spec.seed = 7;
  const StudyResult res =
      run_study(spec, {MeansMethod::Mle}, ImputationConfig{}, 2);
  REQUIRE(res.mean_mpe.size() == 1);
  REQUIRE(res.mean_mpe[0].size() == 1);
  // expected MPE of the MLE is 1; SE ~ sqrt(2/n)/sqrt(K)
  CHECK(std::abs(res.mean_mpe[0][0] - 1.0) <= 4.0 * res.se[0][0]);
  CHECK(res.mean_mpe[0][0] >= 0.0);

  // K = 1 with a fixed seed is fully reproducible
  StudySpec one = spec;
  one.replications = 1;
  const StudyResult r1 = run_study(one, {MeansMethod::Mle}, ImputationConfig{});
  const StudyResult r2 = run_study(one, {MeansMethod::Mle}, ImputationConfig{});
  CHECK(r1.mean_mpe[0][0] == r2.mean_mpe[0][0]);

  StudySpec bad;
  bad.sample_sizes = {3};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("study runner with AM end to end, small scale") {
  StudySpec spec;
  spec.sample_sizes = {10};
  spec.replications = 4;
  spec.seed = 11;
  ImputationConfig am_cfg;
  am_cfg.replicates = 8;
  am_cfg.solver.theta_step = 0.05;
  am_cfg.solver.tol = 1e-5;
  am_cfg.solver.max_iters = 1500;
  const StudyResult res = run_study(
      spec, {MeansMethod::Mle, MeansMethod::JamesStein, MeansMethod::Am},
      am_cfg, 2);
  for (std::size_t mi = 0; mi < res.methods.size(); ++mi) {
    CHECK(res.mean_mpe[mi][0] >= 0.0);
    CHECK(std::isfinite(res.mean_mpe[mi][0]));
  }
  // deterministic across runs and thread counts
  const StudyResult res1 = run_study(
      spec, {MeansMethod::Mle, MeansMethod::JamesStein, MeansMethod::Am},
      am_cfg, 1);
  CHECK(res.mean_mpe[2][0] == res1.mean_mpe[2][0]);
}

TEST_CASE("regression protocol on a perfectly separable fixture") {
  Rng rng(13);
  RowMatrix xtr, xte;
  Vector ytr, yte;
  separable_fixture(40, 5, rng, &xtr, &ytr);
  separable_fixture(40, 5, rng, &xte, &yte);
  const Dataset train(xtr, ytr);
  const Dataset test(xte, yte);

  RegressionOptions opts;
  opts.am.replicates = 12;
  opts.am.solver.theta_step = 0.05;
  opts.am.solver.tol = 1e-5;
  opts.am.solver.max_iters = 2000;
  opts.cv.seed = 5;
  const RegressionResult res = run_regression(train, test, opts, 2);
  REQUIRE(res.metrics.size() == 3);
  for (const auto& m : res.metrics) {
    CHECK(m.test_errors == 0);
    CHECK(m.n_test == 40);
    CHECK(m.test_mse >= 0.0);
  }
}

TEST_CASE("sparsity counts use the stated thresholds") {
  // coefficient vector (intercept, 2e-4, 5e-5, 0) -> counts (1, 2)
  Rng rng(17);
  RowMatrix x(6, 3);
  Vector y(6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = normal(rng);
    y[i] = i % 2;
  }
  // ridge with a huge penalty gives tiny but nonzero coefficients: use the
  // direct counting rule through run_regression on a trivially small case
  // instead of poking internals.
  const Dataset train(x, y);
  const Dataset test(x, y);
  RegressionOptions opts;
  opts.methods = {RegMethod::Ridge};
  opts.cv.folds = 3;
  opts.cv.lambda_grid = {1e10};
  const RegressionResult res = run_regression(train, test, opts);
  CHECK(res.metrics[0].n_above_1e4 == 0);
  CHECK(res.metrics[0].n_above_0 == 3);
}

TEST_CASE("screening is applied on the training data only") {
  Rng rng(23);
  RowMatrix xtr(12, 6), xte(12, 6);
  Vector ytr(12), yte(12);
  for (int i = 0; i < 12; ++i) {
    ytr[i] = i < 6 ? 0.0 : 1.0;
    yte[i] = i < 6 ? 0.0 : 1.0;
    for (int j = 0; j < 6; ++j) {
      xtr(i, j) = normal(rng);
      xte(i, j) = normal(rng);
    }
    // column 2 carries the signal in training data
    xtr(i, 2) = ytr[i] * 2.0 + 0.1 * normal(rng);
    xte(i, 2) = yte[i] * 2.0 + 0.1 * normal(rng);
  }
  const Dataset train(xtr, ytr);
  const Dataset test(xte, yte);
  RegressionOptions opts;
  opts.methods = {RegMethod::Lasso};
  opts.screen_top = 2;
  opts.cv.folds = 3;
  const RegressionResult res = run_regression(train, test, opts);
  REQUIRE(res.screened_columns.size() == 2);
  CHECK(res.screened_columns[0] == 2);
}

TEST_CASE("binary label validation") {
  RowMatrix x(4, 1);
  x << 1, 2, 3, 4;
  const Dataset bad(x, vec({0.0, 1.0, 0.5, 1.0}));
  const Dataset ok(x, vec({0.0, 1.0, 0.0, 1.0}));
  RegressionOptions opts;
  CHECK_THROWS_AS(run_regression(bad, ok, opts), std::invalid_argument);
}
