#include "am/models/normal_means.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace am {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kExpClamp = 700.0;  // keeps exp() inside double range
}

ManyNormalMeansModel::ManyNormalMeansModel(Eigen::Index support_points)
    : m_(support_points) {
  if (m_ < 1) {
    throw std::invalid_argument("ManyNormalMeansModel: need at least one support point");
  }
}

ManyNormalMeansModel::Support ManyNormalMeansModel::unpack(
    const Vector& theta) const {
  Support s;
  s.eta.resize(m_);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < m_; ++k) {
    acc += theta[k];
    s.eta[k] = acc;
  }
  s.alpha = theta.segment(m_, m_);
  return s;
}

Vector ManyNormalMeansModel::pack(const Vector& eta,
                                  const Vector& alpha) const {
  if (eta.size() != m_ || alpha.size() != m_) {
    throw std::invalid_argument("ManyNormalMeansModel::pack: dimension mismatch");
  }
  Vector theta(2 * m_);
  theta[0] = eta[0];
  for (Eigen::Index k = 1; k < m_; ++k) theta[k] = eta[k] - eta[k - 1];
  theta.segment(m_, m_) = alpha;
  return theta;
}

double ManyNormalMeansModel::loss(const Vector& theta, std::span<const double>,
                                  double y) const {
  const Support s = unpack(theta);
  double best = -std::numeric_limits<double>::infinity();
  Eigen::ArrayXd t(m_);
  for (Eigen::Index k = 0; k < m_; ++k) {
    const double r = y - s.eta[k];
    t[k] = (s.alpha[k] > 0.0 ? std::log(s.alpha[k])
                             : -std::numeric_limits<double>::infinity()) -
           0.5 * r * r;
    best = std::max(best, t[k]);
  }
  if (!std::isfinite(best)) {
    throw std::runtime_error("ManyNormalMeansModel: all mixture weights are zero");
  }
  return kHalfLog2Pi - best - std::log((t - best).exp().sum());
}

void ManyNormalMeansModel::add_grad(const Vector& theta,
                                    std::span<const double>, double y,
                                    double w, Vector& acc) const {
  const Support s = unpack(theta);
  Eigen::ArrayXd q(m_), t(m_);
  for (Eigen::Index k = 0; k < m_; ++k) {
    const double r = y - s.eta[k];
    q[k] = -0.5 * r * r;
    t[k] = q[k] + (s.alpha[k] > 0.0
                       ? std::log(s.alpha[k])
                       : -std::numeric_limits<double>::infinity());
  }
  const double m = t.maxCoeff();
  if (!std::isfinite(m)) {
    throw std::runtime_error("ManyNormalMeansModel: all mixture weights are zero");
  }
  const Eigen::ArrayXd e = (t - m).exp();
  const double sum = e.sum();
  // eta gradients, folded into the gap layout as suffix sums.
  double suffix = 0.0;
  for (Eigen::Index k = m_ - 1; k >= 0; --k) {
    suffix += (e[k] / sum) * (s.eta[k] - y);
    acc[k] += w * suffix;
  }
  for (Eigen::Index k = 0; k < m_; ++k) {
    acc[m_ + k] -= w * std::exp(std::min(q[k] - m, kExpClamp)) / sum;
  }
}

double ManyNormalMeansModel::batch_loss_grad(const Vector& theta,
                                             const Dataset& data,
                                             Vector& acc) const {
  const Support s = unpack(theta);
  Eigen::ArrayXd log_alpha(m_);
  for (Eigen::Index k = 0; k < m_; ++k) {
    log_alpha[k] = s.alpha[k] > 0.0
                       ? std::log(s.alpha[k])
                       : -std::numeric_limits<double>::infinity();
  }
  const Eigen::ArrayXd eta = s.eta.array();
  Eigen::ArrayXd q(m_), t(m_), e(m_);
  Vector eta_grad = Vector::Zero(m_);
  double total = 0.0;

  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double w = data.weights()[i];
    if (w == 0.0) continue;
    const double y = data.y()[i];
    q = -0.5 * (y - eta).square();
    t = q + log_alpha;
    const double m = t.maxCoeff();
    if (!std::isfinite(m)) {
      throw std::runtime_error("ManyNormalMeansModel: all mixture weights are zero");
    }
    e = (t - m).exp();
    const double sum = e.sum();
    const double li = kHalfLog2Pi - m - std::log(sum);
    if (!std::isfinite(li)) {
      throw std::runtime_error("non-finite loss at observation " +
                               std::to_string(i));
    }
    total += w * li;
    eta_grad.array() += (w / sum) * e * (eta - y);
    acc.segment(m_, m_).array() -=
        (w / sum) * (q - m).min(kExpClamp).exp();
  }

  double suffix = 0.0;
  for (Eigen::Index k = m_ - 1; k >= 0; --k) {
    suffix += eta_grad[k];
    acc[k] += suffix;
  }
  return total;
}

double ManyNormalMeansModel::sample_predictive(const Vector& theta,
                                               std::span<const double>,
                                               double noise, Rng& rng) const {
  const Support s = unpack(theta);
  const double total = s.alpha.sum();
  if (!(total > 0.0)) {
    throw std::runtime_error("ManyNormalMeansModel: all mixture weights are zero");
  }
  double u = uniform01(rng) * total;
  Eigen::Index pick = m_ - 1;
  for (Eigen::Index k = 0; k < m_; ++k) {
    u -= s.alpha[k];
    if (u < 0.0) {
      pick = k;
      break;
    }
  }
  return s.eta[pick] + noise * normal(rng);
}

Vector ManyNormalMeansModel::initial_theta(const Dataset& data) const {
  const Eigen::Index n = data.n();
  std::vector<double> sorted(data.y().data(), data.y().data() + n);
  std::sort(sorted.begin(), sorted.end());
  Vector eta(m_);
  for (Eigen::Index k = 1; k <= m_; ++k) {
    // midpoint quantile: ceil((2k-1) n / (2m)) - 1
    const Eigen::Index idx = ((2 * k - 1) * n + 2 * m_ - 1) / (2 * m_) - 1;
    eta[k - 1] = sorted[static_cast<std::size_t>(std::clamp<Eigen::Index>(idx, 0, n - 1))];
  }
  return pack(eta, Vector::Constant(m_, 1.0 / static_cast<double>(m_)));
}

Vector ManyNormalMeansModel::lower_bounds() const {
  Vector lb = Vector::Zero(2 * m_);
  lb[0] = -std::numeric_limits<double>::infinity();
  return lb;
}

std::vector<bool> ManyNormalMeansModel::penalized_mask() const {
  std::vector<bool> mask(static_cast<std::size_t>(2 * m_), false);
  for (Eigen::Index k = 1; k < m_; ++k) mask[static_cast<std::size_t>(k)] = true;
  return mask;
}

double ManyNormalMeansModel::posterior_mean(const Vector& theta,
                                            double y) const {
  const Support s = unpack(theta);
  Eigen::ArrayXd t(m_);
  for (Eigen::Index k = 0; k < m_; ++k) {
    const double r = y - s.eta[k];
    t[k] = (s.alpha[k] > 0.0 ? std::log(s.alpha[k])
                             : -std::numeric_limits<double>::infinity()) -
           0.5 * r * r;
  }
  const double m = t.maxCoeff();
  if (!std::isfinite(m)) {
    throw std::runtime_error("ManyNormalMeansModel: all mixture weights are zero");
  }
  const Eigen::ArrayXd w = (t - m).exp();
  return (w * s.eta.array()).sum() / w.sum();
}

}  // namespace am
