#include "am/models/simple_mean.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace am {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2 pi) / 2
}

double SimpleMeanModel::loss(const Vector& theta, std::span<const double>,
                             double y) const {
  const double r = theta[0] - y;
  return 0.5 * r * r + kHalfLog2Pi;
}

void SimpleMeanModel::add_grad(const Vector& theta, std::span<const double>,
                               double y, double w, Vector& acc) const {
  acc[0] += w * (theta[0] - y);
}

double SimpleMeanModel::sample_predictive(const Vector& theta,
                                          std::span<const double>,
                                          double noise, Rng& rng) const {
  return theta[0] + noise * normal(rng);
}

Vector SimpleMeanModel::initial_theta(const Dataset& data) const {
  Vector t(1);
  t[0] = data.weights().dot(data.y()) / data.weight_sum();
  return t;
}

double simple_closed_form(double boot_mean, double data_mean) {
  const bool sign_mismatch =
      boot_mean != 0.0 && data_mean != 0.0 &&
      ((boot_mean > 0.0) != (data_mean > 0.0));
  if (sign_mismatch) return 0.0;
  return std::abs(boot_mean) <= std::abs(data_mean) ? boot_mean : data_mean;
}

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double exact_simple_expectation(double data_mean, int n) {
  if (n < 1) throw std::invalid_argument("exact_simple_expectation: n < 1");
  const double root_n = std::sqrt(static_cast<double>(n));
  const double a = -root_n * std::abs(data_mean);
  const double sgn = data_mean > 0.0 ? 1.0 : (data_mean < 0.0 ? -1.0 : 0.0);
  return (1.0 - normal_cdf(a)) * data_mean -
         std::abs(normal_pdf(a) - normal_pdf(0.0)) * sgn / root_n;
}

}  // namespace am
