#include "am/models/linear_regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace am {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kNoiseFloor = 1e-8;  // floor on the predictive variance
}

Standardizer Standardizer::fit(const RowMatrix& x) {
  Standardizer s;
  s.input_dim_ = x.cols();
  const double n = static_cast<double>(x.rows());
  std::vector<double> means, scales;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mean = x.col(j).mean();
    const double var = (x.col(j).array() - mean).square().sum() / n;
    if (var > 0.0) {
      s.kept_.push_back(static_cast<int>(j));
      means.push_back(mean);
      scales.push_back(std::sqrt(var));
    } else {
      s.dropped_.push_back(static_cast<int>(j));
    }
  }
  s.mean_ = Eigen::Map<const Vector>(means.data(), static_cast<Eigen::Index>(means.size()));
  s.scale_ = Eigen::Map<const Vector>(scales.data(), static_cast<Eigen::Index>(scales.size()));
  return s;
}

void Standardizer::apply_row(std::span<const double> raw, double* out) const {
  if (raw.size() != static_cast<std::size_t>(input_dim_)) {
    throw std::invalid_argument("Standardizer: covariate row has wrong length");
  }
  for (std::size_t j = 0; j < kept_.size(); ++j) {
    out[j] = (raw[static_cast<std::size_t>(kept_[j])] - mean_[static_cast<Eigen::Index>(j)]) /
             scale_[static_cast<Eigen::Index>(j)];
  }
}

RowMatrix Standardizer::apply(const RowMatrix& x) const {
  RowMatrix out(x.rows(), kept());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    apply_row({x.data() + i * x.cols(), static_cast<std::size_t>(x.cols())},
              out.data() + i * out.cols());
  }
  return out;
}

LinearRegressionModel::LinearRegressionModel(const Dataset& train)
    : standardizer_(Standardizer::fit(train.x())) {
  if (!train.has_covariates()) {
    throw std::invalid_argument("LinearRegressionModel: training data has no covariates");
  }
}

double LinearRegressionModel::predict(const Vector& theta,
                                      std::span<const double> raw_x) const {
  if (theta.size() != dim()) {
    throw std::invalid_argument("LinearRegressionModel: theta dimension mismatch");
  }
  const Eigen::Index q = standardizer_.kept();
  double pred = theta[0];
  // Stack buffer for typical widths, heap for wide screens.
  if (q <= 64) {
    double z[64];
    standardizer_.apply_row(raw_x, z);
    for (Eigen::Index j = 0; j < q; ++j) pred += theta[1 + j] * z[j];
  } else {
    std::vector<double> z(static_cast<std::size_t>(q));
    standardizer_.apply_row(raw_x, z.data());
    for (Eigen::Index j = 0; j < q; ++j) pred += theta[1 + j] * z[static_cast<std::size_t>(j)];
  }
  return pred;
}

double LinearRegressionModel::loss(const Vector& theta,
                                   std::span<const double> x, double y) const {
  const double r = y - predict(theta, x);
  return 0.5 * r * r + kHalfLog2Pi;
}

void LinearRegressionModel::add_grad(const Vector& theta,
                                     std::span<const double> x, double y,
                                     double w, Vector& acc) const {
  const Eigen::Index q = standardizer_.kept();
  std::vector<double> z(static_cast<std::size_t>(q));
  standardizer_.apply_row(x, z.data());
  double pred = theta[0];
  for (Eigen::Index j = 0; j < q; ++j) pred += theta[1 + j] * z[static_cast<std::size_t>(j)];
  const double r = y - pred;
  acc[0] -= w * r;
  for (Eigen::Index j = 0; j < q; ++j) {
    acc[1 + j] -= w * r * z[static_cast<std::size_t>(j)];
  }
}

double LinearRegressionModel::sample_predictive(const Vector& theta,
                                                std::span<const double> x,
                                                double noise, Rng& rng) const {
  return predict(theta, x) + noise * normal(rng);
}

double LinearRegressionModel::predictive_noise(const Vector& theta,
                                               const Dataset& data) const {
  double rss = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double r = data.y()[i] - predict(theta, data.xrow(i));
    rss += data.weights()[i] * r * r;
  }
  return std::sqrt(std::max(rss / data.weight_sum(), kNoiseFloor));
}

Vector LinearRegressionModel::initial_theta(const Dataset& data) const {
  Vector t = Vector::Zero(dim());
  t[0] = data.weights().dot(data.y()) / data.weight_sum();
  return t;
}

std::vector<bool> LinearRegressionModel::penalized_mask() const {
  std::vector<bool> mask(static_cast<std::size_t>(dim()), true);
  mask[0] = false;  // intercept
  return mask;
}

Vector LinearRegressionModel::destandardized(const Vector& theta) const {
  Vector raw = Vector::Zero(1 + standardizer_.input_dim());
  raw[0] = theta[0];
  const auto& kept = standardizer_.kept_columns();
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const double b = theta[1 + jj] / standardizer_.scales()[jj];
    raw[1 + kept[j]] = b;
    raw[0] -= b * standardizer_.means()[jj];
  }
  return raw;
}

std::vector<int> t_score_screen(const Dataset& data, int top_k) {
  if (!data.has_covariates()) {
    throw std::invalid_argument("t_score_screen: no covariates");
  }
  if (top_k < 0 || top_k > data.num_covariates()) {
    throw std::invalid_argument("t_score_screen: top_k out of range");
  }
  std::vector<Eigen::Index> class0, class1;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double y = data.y()[i];
    if (y == 0.0) class0.push_back(i);
    else if (y == 1.0) class1.push_back(i);
    else throw std::invalid_argument("t_score_screen: labels must be 0 or 1, got " +
                                     std::to_string(y));
  }
  const double n0 = static_cast<double>(class0.size());
  const double n1 = static_cast<double>(class1.size());
  if (class0.size() < 2 || class1.size() < 2) {
    throw std::invalid_argument("t_score_screen: each class needs at least 2 samples");
  }

  const Eigen::Index k = data.num_covariates();
  std::vector<double> score(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    double m0 = 0.0, m1 = 0.0;
    for (auto i : class0) m0 += data.x()(i, j);
    for (auto i : class1) m1 += data.x()(i, j);
    m0 /= n0;
    m1 /= n1;
    double ss0 = 0.0, ss1 = 0.0;
    for (auto i : class0) ss0 += (data.x()(i, j) - m0) * (data.x()(i, j) - m0);
    for (auto i : class1) ss1 += (data.x()(i, j) - m1) * (data.x()(i, j) - m1);
    const double pooled = (ss0 + ss1) / (n0 + n1 - 2.0);
    const double se = std::sqrt(pooled * (1.0 / n0 + 1.0 / n1));
    const double gap = std::abs(m0 - m1);
    // Zero within-class spread: infinite score for a real gap, zero otherwise.
    score[static_cast<std::size_t>(j)] =
        se > 0.0 ? gap / se
                 : (gap > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  }

  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
  });
  order.resize(static_cast<std::size_t>(top_k));
  return order;
}

}  // namespace am
