#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "am/duality.hpp"
#include "am/models/simple_mean.hpp"
#include "support.hpp"

using namespace am;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("dataset invariants") {
  CHECK_THROWS_AS(Dataset(Vector{}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset(vec({1.0}), vec({-1.0})), std::invalid_argument);
  CHECK_THROWS_AS(Dataset(vec({1.0, 2.0}), vec({0.0, 0.0})),
                  std::invalid_argument);
  RowMatrix x(1, 2);
  x << 1.0, 2.0;
  CHECK_THROWS_AS(Dataset(x, vec({1.0, 2.0})), std::invalid_argument);

  const Dataset d(vec({1.0, 2.0}));
  CHECK(d.n() == 2);
  CHECK(!d.has_covariates());
  CHECK(d.weight_sum() == doctest::Approx(2.0));
  CHECK(d.xrow(0).empty());
}

TEST_CASE("duality value") {
  // zero multipliers
  CHECK(DualitySpec(DualityKind::WeightedL1, vec({0, 0})).value(vec({3, -4})) ==
        doctest::Approx(0.0));
  // hand sums
  CHECK(DualitySpec(DualityKind::WeightedL1, vec({1, 2})).value(vec({3, -4})) ==
        doctest::Approx(11.0));
  CHECK(DualitySpec(DualityKind::WeightedL2, vec({0.5, 0.5})).value(vec({2, -2})) ==
        doctest::Approx(4.0));
  // masked coordinates contribute nothing
  const DualitySpec masked(DualityKind::WeightedL1, vec({1, 0}),
                           {true, false});
  CHECK(masked.value(vec({3, -4})) == doctest::Approx(3.0));
  CHECK_THROWS_AS(masked.value(vec({1.0})), std::invalid_argument);
}

TEST_CASE("duality spec invariants") {
  CHECK_THROWS_AS(DualitySpec(DualityKind::WeightedL1, vec({-0.5})),
                  std::invalid_argument);
  // nonzero lambda on an unpenalized coordinate
  CHECK_THROWS_AS(
      DualitySpec(DualityKind::WeightedL1, vec({1.0, 1.0}), {true, false}),
      std::invalid_argument);
}

TEST_CASE("duality gradient") {
  CHECK(DualitySpec(DualityKind::WeightedL1, vec({1})).gradient(vec({-2}))[0] ==
        doctest::Approx(-1.0));
  CHECK(DualitySpec(DualityKind::WeightedL1, vec({1})).gradient(vec({0}))[0] ==
        doctest::Approx(0.0));
  CHECK(DualitySpec(DualityKind::WeightedL2, vec({3})).gradient(vec({0.5}))[0] ==
        doctest::Approx(3.0));
}

TEST_CASE("duality properties on random draws") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = 1 + static_cast<int>(uniform_index(rng, 6));
    Vector lambda(p), theta(p);
    for (int i = 0; i < p; ++i) {
      lambda[i] = 3.0 * uniform01(rng);
      theta[i] = 4.0 * (uniform01(rng) - 0.5);
    }
    const auto kind =
        trial % 2 == 0 ? DualityKind::WeightedL1 : DualityKind::WeightedL2;
    const DualitySpec spec(kind, lambda);
    CHECK(spec.value(theta) >= 0.0);
    if (kind == DualityKind::WeightedL1) {
      const Vector g = spec.gradient(theta);
      for (int i = 0; i < p; ++i) CHECK(std::abs(g[i]) <= lambda[i] + 1e-15);
    }
  }
}

TEST_CASE("empirical loss on the simple mean model") {
  const SimpleMeanModel model;
  // -log phi(0) at two zero observations
  CHECK(empirical_loss(model, vec({0.0}), Dataset(vec({0.0, 0.0}))) ==
        doctest::Approx(0.918939).epsilon(1e-5));

  // minimal at the sample mean (grid check)
  const Dataset data(vec({0.3, -1.2, 2.0, 0.7}));
  const double at_mean = empirical_loss(model, vec({data.y().mean()}), data);
  for (double t = -3.0; t <= 3.0; t += 0.01) {
    CHECK(at_mean <= empirical_loss(model, vec({t}), data) + 1e-12);
  }

  // zero-weight observations are excluded
  const Dataset weighted(vec({1.0, 5.0}), vec({2.0, 0.0}));
  CHECK(empirical_loss(model, vec({1.0}), weighted) ==
        doctest::Approx(model.loss(vec({1.0}), {}, 1.0)));

  // uniform weights equal the unweighted mean exactly
  const Dataset uniform(vec({0.4, 1.1, -0.3}), vec({1.0, 1.0, 1.0}));
  const Dataset plain(vec({0.4, 1.1, -0.3}));
  CHECK(empirical_loss(model, vec({0.2}), uniform) ==
        empirical_loss(model, vec({0.2}), plain));
}

TEST_CASE("empirical gradient on the simple mean model") {
  const SimpleMeanModel model;
  CHECK(empirical_grad(model, vec({0.0}), Dataset(vec({1.0, -1.0})))[0] ==
        doctest::Approx(0.0));
  CHECK(empirical_grad(model, vec({2.0}), Dataset(vec({1.0, 1.0})))[0] ==
        doctest::Approx(1.0));
}

TEST_CASE("empirical gradient matches finite differences of empirical loss") {
  const SimpleMeanModel model;
  Rng rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 8));
    Vector y(n), w(n);
    for (int i = 0; i < n; ++i) {
      y[i] = 3.0 * (uniform01(rng) - 0.5);
      w[i] = 0.1 + uniform01(rng);
    }
    const Dataset data(y, w);
    const Vector theta = vec({2.0 * (uniform01(rng) - 0.5)});
    const Vector g = empirical_grad(model, theta, data);
    const double h = 1e-5 * std::max(1.0, std::abs(theta[0]));
    const double fd = (empirical_loss(model, vec({theta[0] + h}), data) -
                       empirical_loss(model, vec({theta[0] - h}), data)) /
                      (2.0 * h);
    CHECK(testsupport::rel_err(g[0], fd) <= 1e-5);
  }
}

TEST_CASE("non-finite loss reports the observation index") {
  const SimpleMeanModel model;
  Vector y(3);
  y << 1.0, std::numeric_limits<double>::quiet_NaN(), 2.0;
  const Dataset data(y);
  CHECK_THROWS_WITH_AS(empirical_loss(model, vec({0.0}), data),
                       doctest::Contains("observation 1"), std::runtime_error);
}
