#include "am/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "am/models/linear_regression.hpp"
#include "am/models/normal_means.hpp"

namespace am {

void StudySpec::validate() const {
  if (sample_sizes.empty()) throw std::invalid_argument("StudySpec: no sample sizes");
  for (int n : sample_sizes) {
    if (n < 4) {
      throw std::invalid_argument("StudySpec: n >= 4 required (James-Stein)");
    }
  }
  if (replications < 1) throw std::invalid_argument("StudySpec: K >= 1 required");
  if (scale_a < 0.0) throw std::invalid_argument("StudySpec: A >= 0 required");
}

SimulatedMeans simulate_means(StudyKind kind, int n, double a, Rng& rng) {
  if (n < 1) throw std::invalid_argument("simulate_means: n >= 1 required");
  SimulatedMeans out;
  out.mu.resize(n);
  switch (kind) {
    case StudyKind::GaussianA: {
      const double sd = std::sqrt(a);
      for (int i = 0; i < n; ++i) out.mu[i] = sd * normal(rng);
      break;
    }
    case StudyKind::Bimodal: {
      const int negatives = (n + 1) / 2;
      for (int i = 0; i < n; ++i) {
        const double center = i < negatives ? -2.0 : 2.0;
        out.mu[i] = center + 0.1 * normal(rng);
      }
      break;
    }
    case StudyKind::ZeroInflated: {
      for (int i = 0; i < n; ++i) {
        out.mu[i] = uniform01(rng) < 0.9 ? 0.0 : -3.0 + normal(rng);
      }
      break;
    }
  }
  out.y.resize(n);
  for (int i = 0; i < n; ++i) out.y[i] = out.mu[i] + normal(rng);
  return out;
}

double mpe(const Vector& mu, const Vector& mu_hat) {
  if (mu.size() != mu_hat.size()) {
    throw std::invalid_argument("mpe: length mismatch");
  }
  return (mu - mu_hat).squaredNorm() / static_cast<double>(mu.size());
}

std::string to_string(MeansMethod m) {
  switch (m) {
    case MeansMethod::Mle: return "mle";
    case MeansMethod::JamesStein: return "js";
    case MeansMethod::Am: return "am";
  }
  return "?";
}

std::string to_string(RegMethod m) {
  switch (m) {
    case RegMethod::Am: return "am";
    case RegMethod::Lasso: return "lasso";
    case RegMethod::Ridge: return "ridge";
  }
  return "?";
}

StudyResult run_study(const StudySpec& spec,
                      const std::vector<MeansMethod>& methods,
                      const ImputationConfig& am_cfg, int threads) {
  spec.validate();
  am_cfg.validate();
  if (methods.empty()) throw std::invalid_argument("run_study: no methods");

  StudyResult result;
  result.spec = spec;
  result.methods = methods;
  result.mean_mpe.assign(methods.size(), {});
  result.se.assign(methods.size(), {});

  const int reps = spec.replications;
  for (std::size_t ni = 0; ni < spec.sample_sizes.size(); ++ni) {
    const int n = spec.sample_sizes[ni];
    // mpes[method][replication]
    std::vector<std::vector<double>> mpes(
        methods.size(), std::vector<double>(static_cast<std::size_t>(reps)));
    std::vector<std::string> errors(static_cast<std::size_t>(reps));

    auto run_rep = [&](int k) {
      try {
        const std::uint64_t id =
            (static_cast<std::uint64_t>(ni) << 32) | static_cast<std::uint64_t>(k);
        Rng rng(derive_stream(spec.seed, 2 * id));
        const SimulatedMeans sim = simulate_means(spec.kind, n, spec.scale_a, rng);
        const Dataset data(sim.y);
        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
          Vector mu_hat;
          switch (methods[mi]) {
            case MeansMethod::Mle:
              mu_hat = mle_means(sim.y);
              break;
            case MeansMethod::JamesStein:
              mu_hat = james_stein(sim.y).estimates;
              break;
            case MeansMethod::Am: {
              ManyNormalMeansModel model(n);
              ImputationConfig cfg = am_cfg;
              cfg.seed = derive_stream(spec.seed, 2 * id + 1);
              const Solution sol = am_estimate(model, data, cfg);
              mu_hat.resize(n);
              for (int i = 0; i < n; ++i) {
                mu_hat[i] = model.posterior_mean(sol.theta, sim.y[i]);
              }
              break;
            }
          }
          mpes[mi][static_cast<std::size_t>(k)] = mpe(sim.mu, mu_hat);
        }
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(k)] =
            "replication " + std::to_string(k) + " (n=" + std::to_string(n) +
            "): " + e.what();
      }
    };

    const int workers = std::max(1, std::min(threads, reps));
    if (workers == 1) {
      for (int k = 0; k < reps; ++k) run_rep(k);
    } else {
      std::vector<std::thread> ts;
      ts.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) {
        ts.emplace_back([&, w] {
          for (int k = w; k < reps; k += workers) run_rep(k);
        });
      }
      for (auto& t : ts) t.join();
    }
    for (const auto& err : errors) {
      if (!err.empty()) throw std::runtime_error("run_study: " + err);
    }

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      double mean = 0.0;
      for (double v : mpes[mi]) mean += v;
      mean /= reps;
      double var = 0.0;
      for (double v : mpes[mi]) var += (v - mean) * (v - mean);
      var = reps > 1 ? var / (reps - 1) : 0.0;
      result.mean_mpe[mi].push_back(mean);
      result.se[mi].push_back(std::sqrt(var / reps));
    }
  }
  return result;
}

namespace {

void check_binary_labels(const Dataset& d, const char* which) {
  for (Eigen::Index i = 0; i < d.n(); ++i) {
    if (d.y()[i] != 0.0 && d.y()[i] != 1.0) {
      throw std::invalid_argument(std::string("run_regression: ") + which +
                                  " labels must be 0/1");
    }
  }
}

}  // namespace

RegressionResult run_regression(const Dataset& train, const Dataset& test,
                                const RegressionOptions& opts, int threads) {
  check_binary_labels(train, "train");
  check_binary_labels(test, "test");
  if (train.num_covariates() != test.num_covariates()) {
    throw std::invalid_argument("run_regression: train/test column mismatch");
  }
  if (opts.methods.empty()) {
    throw std::invalid_argument("run_regression: no methods");
  }

  RegressionResult result;
  result.methods = opts.methods;

  Dataset tr = train;
  Dataset te = test;
  if (opts.screen_top) {
    result.screened_columns = t_score_screen(train, *opts.screen_top);
    tr = train.select_columns(result.screened_columns);
    te = test.select_columns(result.screened_columns);
  }

  // One standardization record for every method, fitted on training data.
  const LinearRegressionModel model(tr);
  result.dropped_columns = model.standardizer().dropped_columns();
  const RowMatrix tr_std = model.standardizer().apply(tr.x());
  const Dataset tr_for_baselines(tr_std, tr.y());

  auto evaluate = [&](const Vector& std_coef, RegMethodMetrics& m) {
    // std_coef: (intercept, standardized betas).
    m.n_test = static_cast<int>(te.n());
    double sse = 0.0;
    const Eigen::Index q = std_coef.size() - 1;
    std::vector<double> z(static_cast<std::size_t>(q));
    for (Eigen::Index i = 0; i < te.n(); ++i) {
      model.standardizer().apply_row(te.xrow(i), z.data());
      double pred = std_coef[0];
      for (Eigen::Index j = 0; j < q; ++j) {
        pred += std_coef[1 + j] * z[static_cast<std::size_t>(j)];
      }
      const double label = te.y()[i];
      if (classify(pred) != static_cast<int>(label)) ++m.test_errors;
      sse += (pred - label) * (pred - label);
    }
    m.test_mse = sse / static_cast<double>(te.n());
    for (Eigen::Index j = 1; j < std_coef.size(); ++j) {
      const double b = std::abs(std_coef[j]);
      if (b > 1e-4) ++m.n_above_1e4;
      if (b > 0.0) ++m.n_above_0;
    }
  };

  for (RegMethod method : opts.methods) {
    RegMethodMetrics m;
    switch (method) {
      case RegMethod::Am: {
        const Solution sol = am_estimate(model, tr, opts.am, threads);
        result.am_theta = sol.theta;
        result.am_lambda = sol.lambda;
        result.am_solution = sol;
        evaluate(sol.theta, m);
        break;
      }
      case RegMethod::Lasso: {
        const CvResult cv = cv_select(tr_for_baselines, PenalizedFitter::Lasso,
                                      opts.cv);
        m.cv_lambda = cv.best_lambda;
        evaluate(cv.coef, m);
        break;
      }
      case RegMethod::Ridge: {
        const CvResult cv = cv_select(tr_for_baselines, PenalizedFitter::Ridge,
                                      opts.cv);
        m.cv_lambda = cv.best_lambda;
        evaluate(cv.coef, m);
        break;
      }
    }
    result.metrics.push_back(m);
  }
  return result;
}

}  // namespace am
