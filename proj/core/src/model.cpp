#include "am/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace am {

namespace {

[[noreturn]] void throw_nonfinite(const char* what, Eigen::Index i) {
  throw std::runtime_error(std::string("non-finite ") + what +
                           " at observation " + std::to_string(i));
}

}  // namespace

double ModelSpec::batch_loss_grad(const Vector& theta, const Dataset& data,
                                  Vector& acc) const {
  double total = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double w = data.weights()[i];
    if (w == 0.0) continue;
    const double li = loss(theta, data.xrow(i), data.y()[i]);
    if (!std::isfinite(li)) throw_nonfinite("loss", i);
    total += w * li;
    add_grad(theta, data.xrow(i), data.y()[i], w, acc);
  }
  return total;
}

double ModelSpec::predictive_noise(const Vector&, const Dataset&) const {
  return 1.0;
}

Vector ModelSpec::lower_bounds() const {
  return Vector::Constant(dim(), -std::numeric_limits<double>::infinity());
}

std::vector<bool> ModelSpec::penalized_mask() const {
  return std::vector<bool>(static_cast<std::size_t>(dim()), true);
}

Vector ModelSpec::grad(const Vector& theta, std::span<const double> x,
                       double y) const {
  Vector g = Vector::Zero(dim());
  add_grad(theta, x, y, 1.0, g);
  return g;
}

double empirical_loss(const ModelSpec& model, const Vector& theta,
                      const Dataset& data) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const double w = data.weights()[i];
    if (w == 0.0) continue;
    const double li = model.loss(theta, data.xrow(i), data.y()[i]);
    if (!std::isfinite(li)) throw_nonfinite("loss", i);
    total += w * li;
  }
  return total / data.weight_sum();
}

Vector empirical_grad(const ModelSpec& model, const Vector& theta,
                      const Dataset& data) {
  Vector g;
  empirical_loss_grad(model, theta, data, g);
  return g;
}

double empirical_loss_grad(const ModelSpec& model, const Vector& theta,
                           const Dataset& data, Vector& grad_out) {
  grad_out = Vector::Zero(model.dim());
  const double total = model.batch_loss_grad(theta, data, grad_out);
  grad_out /= data.weight_sum();
  if (!grad_out.allFinite()) {
    // Locate the offending observation for the error message.
    Vector probe = Vector::Zero(model.dim());
    for (Eigen::Index i = 0; i < data.n(); ++i) {
      if (data.weights()[i] == 0.0) continue;
      probe.setZero();
      model.add_grad(theta, data.xrow(i), data.y()[i], 1.0, probe);
      if (!probe.allFinite()) throw_nonfinite("gradient", i);
    }
    throw std::runtime_error("non-finite accumulated gradient");
  }
  return total / data.weight_sum();
}

}  // namespace am
