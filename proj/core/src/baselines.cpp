#include "am/baselines.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "am/rng.hpp"

namespace am {

Vector mle_means(const Vector& y) {
  if (y.size() == 0) throw std::invalid_argument("mle_means: empty sample");
  return y;
}

JamesSteinResult james_stein(const Vector& y) {
  const Eigen::Index n = y.size();
  if (n < 4) throw std::invalid_argument("james_stein: need n >= 4");
  const double ybar = y.mean();
  const double ss = (y.array() - ybar).square().sum();
  JamesSteinResult out;
  if (ss == 0.0) {
    out.estimates = Vector::Constant(n, ybar);
    out.degenerate_spread = true;
    return out;
  }
  const double factor = 1.0 - static_cast<double>(n - 3) / ss;
  out.estimates = ybar + factor * (y.array() - ybar);
  return out;
}

double js_expected_mpe(double a, int n) {
  if (a < 0.0) throw std::invalid_argument("js_expected_mpe: A >= 0 required");
  if (n < 1) throw std::invalid_argument("js_expected_mpe: n >= 1 required");
  const double ratio = a / (a + 1.0);
  return ratio + (3.0 / static_cast<double>(n)) * (1.0 - ratio);
}

namespace {

struct Centered {
  Matrix x;      // column-centered covariates
  Vector yc;     // centered response
  Vector xmean;  // per-column means
  double ymean = 0.0;
};

Centered center(const Dataset& train) {
  Centered c;
  c.x = train.x();
  c.xmean = c.x.colwise().mean();
  c.x.rowwise() -= c.xmean.transpose();
  c.ymean = train.y().mean();
  c.yc = train.y().array() - c.ymean;
  return c;
}

Vector assemble(const Centered& c, const Vector& beta) {
  Vector coef(beta.size() + 1);
  coef[0] = c.ymean - c.xmean.dot(beta);
  coef.tail(beta.size()) = beta;
  return coef;
}

}  // namespace

Vector ridge_fit(const Dataset& train, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("ridge_fit: lambda >= 0 required");
  if (!train.has_covariates()) throw std::invalid_argument("ridge_fit: no covariates");
  const Centered c = center(train);
  const double n = static_cast<double>(train.n());
  const Eigen::Index p = c.x.cols();
  Vector beta;
  if (p <= train.n() || lambda == 0.0) {
    Matrix a = c.x.transpose() * c.x / n;
    a.diagonal().array() += 2.0 * lambda;
    beta = a.ldlt().solve(c.x.transpose() * c.yc / n);
  } else {
    // Dual n x n system for wide designs.
    Matrix a = c.x * c.x.transpose();
    a.diagonal().array() += 2.0 * lambda * n;
    beta = c.x.transpose() * a.ldlt().solve(c.yc);
  }
  return assemble(c, beta);
}

Vector lasso_fit(const Dataset& train, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("lasso_fit: lambda >= 0 required");
  if (!train.has_covariates()) throw std::invalid_argument("lasso_fit: no covariates");
  const Centered c = center(train);
  const double n = static_cast<double>(train.n());
  const Eigen::Index p = c.x.cols();

  const Vector colsq = c.x.colwise().squaredNorm() / n;  // (1/n) sum x_ij^2
  Vector beta = Vector::Zero(p);
  Vector r = c.yc;  // residual y_c - X_c beta

  constexpr int kMaxSweeps = 100000;
  constexpr double kKktTol = 1e-7;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    for (Eigen::Index j = 0; j < p; ++j) {
      if (colsq[j] == 0.0) continue;
      const double old = beta[j];
      const double rho = c.x.col(j).dot(r) / n + colsq[j] * old;
      const double shrunk =
          std::copysign(std::max(0.0, std::abs(rho) - lambda), rho);
      const double next = shrunk / colsq[j];
      if (next != old) {
        r -= (next - old) * c.x.col(j);
        beta[j] = next;
      }
    }
    if (sweep % 50 == 49) r = c.yc - c.x * beta;  // clear update drift
    // Stop on the subgradient conditions themselves.
    double violation = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (colsq[j] == 0.0) continue;
      const double score = c.x.col(j).dot(r) / n;
      if (beta[j] == 0.0) {
        violation = std::max(violation, std::abs(score) - lambda);
      } else {
        violation = std::max(
            violation, std::abs(score - std::copysign(lambda, beta[j])));
      }
    }
    if (violation <= kKktTol) return assemble(c, beta);
  }
  throw std::runtime_error("lasso_fit: coordinate descent did not converge in " +
                           std::to_string(kMaxSweeps) + " sweeps");
}

double lasso_lambda_max(const Dataset& train) {
  const Centered c = center(train);
  const double n = static_cast<double>(train.n());
  return (c.x.transpose() * c.yc / n).cwiseAbs().maxCoeff();
}

std::vector<double> default_lambda_grid(const Dataset& train, int count) {
  if (count < 1) throw std::invalid_argument("default_lambda_grid: count >= 1");
  double lmax = lasso_lambda_max(train);
  if (!(lmax > 0.0)) lmax = 1e-3;  // flat response, nominal grid
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lmax;
    return grid;
  }
  const double lmin = 1e-3 * lmax;
  const double ratio = std::log(lmin / lmax) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] = lmax * std::exp(ratio * i);
  }
  return grid;
}

void CvConfig::validate() const {
  if (folds < 2) throw std::invalid_argument("CvConfig: folds >= 2 required");
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    if (!(lambda_grid[i] > 0.0)) {
      throw std::invalid_argument("CvConfig: grid values must be positive");
    }
    if (i > 0 && lambda_grid[i] >= lambda_grid[i - 1]) {
      throw std::invalid_argument("CvConfig: grid must be strictly descending");
    }
  }
}

CvResult cv_select(const Dataset& train, PenalizedFitter fitter,
                   const CvConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = train.n();
  if (n < cfg.folds) throw std::invalid_argument("cv_select: n < folds");

  CvResult out;
  out.lambdas =
      cfg.lambda_grid.empty() ? default_lambda_grid(train) : cfg.lambda_grid;

  // Seeded shuffle, then round-robin assignment over the shuffled order.
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(derive_stream(cfg.seed, 0x6f6c64));
  for (std::size_t i = perm.size() - 1; i > 0; --i) {
    std::swap(perm[i], perm[uniform_index(rng, i + 1)]);
  }
  std::vector<int> fold_of(static_cast<std::size_t>(n));
  for (std::size_t pos = 0; pos < perm.size(); ++pos) {
    fold_of[static_cast<std::size_t>(perm[pos])] =
        static_cast<int>(pos % static_cast<std::size_t>(cfg.folds));
  }

  auto fit = [&](const Dataset& d, double lambda) {
    return fitter == PenalizedFitter::Ridge ? ridge_fit(d, lambda)
                                            : lasso_fit(d, lambda);
  };

  out.cv_errors.assign(out.lambdas.size(), 0.0);
  for (int f = 0; f < cfg.folds; ++f) {
    std::vector<Eigen::Index> in, held;
    for (Eigen::Index i = 0; i < n; ++i) {
      (fold_of[static_cast<std::size_t>(i)] == f ? held : in).push_back(i);
    }
    RowMatrix xin(static_cast<Eigen::Index>(in.size()), train.num_covariates());
    Vector yin(static_cast<Eigen::Index>(in.size()));
    for (std::size_t i = 0; i < in.size(); ++i) {
      xin.row(static_cast<Eigen::Index>(i)) = train.x().row(in[i]);
      yin[static_cast<Eigen::Index>(i)] = train.y()[in[i]];
    }
    const Dataset sub(std::move(xin), std::move(yin));
    for (std::size_t li = 0; li < out.lambdas.size(); ++li) {
      const Vector coef = fit(sub, out.lambdas[li]);
      double sse = 0.0;
      for (auto i : held) {
        const double pred =
            coef[0] + coef.tail(train.num_covariates()).dot(train.x().row(i));
        sse += (train.y()[i] - pred) * (train.y()[i] - pred);
      }
      out.cv_errors[li] += sse;
    }
  }
  for (auto& e : out.cv_errors) e /= static_cast<double>(n);

  // Grid is descending, so the first strict minimum is the largest lambda.
  std::size_t best = 0;
  for (std::size_t li = 1; li < out.cv_errors.size(); ++li) {
    if (out.cv_errors[li] < out.cv_errors[best]) best = li;
  }
  out.best_lambda = out.lambdas[best];
  out.coef = fit(train, out.best_lambda);
  return out;
}

}  // namespace am
