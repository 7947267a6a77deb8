#include "am/imputation.hpp"

#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace am {

void ImputationConfig::validate() const {
  if (replicates < 1) throw std::invalid_argument("ImputationConfig: B >= 1 required");
  if (draws_per_replicate && *draws_per_replicate < 1) {
    throw std::invalid_argument("ImputationConfig: draws_per_replicate >= 1 required");
  }
  solver.validate();
}

int ImputationConfig::draws_for(Eigen::Index n) const {
  return draws_per_replicate ? *draws_per_replicate : static_cast<int>(n);
}

Dataset bootstrap_resample(const Dataset& data, Rng& rng) {
  const Eigen::Index n = data.n();
  Vector y(n);
  if (data.has_covariates()) {
    RowMatrix x(n, data.num_covariates());
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto pick = static_cast<Eigen::Index>(
          uniform_index(rng, static_cast<std::size_t>(n)));
      x.row(i) = data.x().row(pick);
      y[i] = data.y()[pick];
    }
    return Dataset(std::move(x), std::move(y));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    y[i] = data.y()[static_cast<Eigen::Index>(
        uniform_index(rng, static_cast<std::size_t>(n)))];
  }
  return Dataset(std::move(y));
}

Solution fit_replicate(const ModelSpec& model, const Dataset& resample,
                       const Dataset& original, const ImputationConfig& cfg) {
  return solve_equilibrium(model, resample, original, cfg.kind, cfg.solver,
                           model.initial_theta(resample));
}

Vector fit_bootstrap_replicate(const ModelSpec& model, const Dataset& data,
                               const ImputationConfig& cfg, Rng& rng) {
  return fit_replicate(model, bootstrap_resample(data, rng), data, cfg).theta;
}

Dataset generate_imputations(const ModelSpec& model, const Vector& theta,
                             const Dataset& data, int count, Rng& rng) {
  if (count < 1) throw std::invalid_argument("generate_imputations: count >= 1 required");
  const double noise = model.predictive_noise(theta, data);
  Vector y(count);
  if (data.has_covariates()) {
    RowMatrix x(count, data.num_covariates());
    for (int c = 0; c < count; ++c) {
      const auto pick = static_cast<Eigen::Index>(
          uniform_index(rng, static_cast<std::size_t>(data.n())));
      x.row(c) = data.x().row(pick);
      y[c] = model.sample_predictive(theta, data.xrow(pick), noise, rng);
    }
    return Dataset(std::move(x), std::move(y));
  }
  for (int c = 0; c < count; ++c) {
    y[c] = model.sample_predictive(theta, {}, noise, rng);
  }
  return Dataset(std::move(y));
}

ImputationPool build_pool(const ModelSpec& model, const Dataset& data,
                          const ImputationConfig& cfg, int threads) {
  cfg.validate();
  const int b_total = cfg.replicates;
  const int draws = cfg.draws_for(data.n());

  std::vector<Vector> thetas(static_cast<std::size_t>(b_total));
  std::vector<Vector> pool_y(static_cast<std::size_t>(b_total));
  std::vector<RowMatrix> pool_x(static_cast<std::size_t>(b_total));
  std::vector<std::string> errors(static_cast<std::size_t>(b_total));

  auto run_replicate = [&](int b) {
    try {
      Rng rng(derive_stream(cfg.seed, static_cast<std::uint64_t>(b)));
      Dataset resample = bootstrap_resample(data, rng);
      Solution sol = fit_replicate(model, resample, data, cfg);
      Dataset draws_b = generate_imputations(model, sol.theta, data, draws, rng);
      thetas[static_cast<std::size_t>(b)] = std::move(sol.theta);
      pool_y[static_cast<std::size_t>(b)] = draws_b.y();
      if (draws_b.has_covariates()) {
        pool_x[static_cast<std::size_t>(b)] = draws_b.x();
      }
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(b)] =
          "replicate " + std::to_string(b) + ": " + e.what();
    }
  };

  const int workers = std::max(1, std::min(threads, b_total));
  if (workers == 1) {
    for (int b = 0; b < b_total; ++b) run_replicate(b);
  } else {
    // Static block partition keeps the assembly order deterministic.
    std::vector<std::thread> ts;
    ts.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      ts.emplace_back([&, w] {
        for (int b = w; b < b_total; b += workers) run_replicate(b);
      });
    }
    for (auto& t : ts) t.join();
  }

  for (const auto& err : errors) {
    if (!err.empty()) throw std::runtime_error("build_pool: " + err);
  }

  const Eigen::Index pool_n = static_cast<Eigen::Index>(b_total) * draws;
  Vector y(pool_n);
  for (int b = 0; b < b_total; ++b) {
    y.segment(static_cast<Eigen::Index>(b) * draws, draws) =
        pool_y[static_cast<std::size_t>(b)];
  }
  if (data.has_covariates()) {
    RowMatrix x(pool_n, data.num_covariates());
    for (int b = 0; b < b_total; ++b) {
      x.middleRows(static_cast<Eigen::Index>(b) * draws, draws) =
          pool_x[static_cast<std::size_t>(b)];
    }
    return ImputationPool{Dataset(std::move(x), std::move(y)),
                          std::move(thetas)};
  }
  return ImputationPool{Dataset(std::move(y)), std::move(thetas)};
}

Solution am_estimate(const ModelSpec& model, const Dataset& data,
                     const ImputationConfig& cfg, int threads) {
  ImputationPool pool = build_pool(model, data, cfg, threads);
  return solve_equilibrium(model, data, pool.samples, cfg.kind, cfg.solver,
                           model.initial_theta(data));
}

}  // namespace am
