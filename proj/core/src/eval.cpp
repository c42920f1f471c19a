#include "srp/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "srp/error.hpp"
#include "srp/kernels.hpp"
#include "srp/pipeline.hpp"
#include "srp/random.hpp"

namespace srp {

std::vector<int> one_nn_predict(const Matrix& z_train, std::span<const int> y_train, const Matrix& z_test) {
  if (z_train.cols() == 0) {
    throw ContractError("one_nn: empty training set");
  }
  if (static_cast<Index>(y_train.size()) != z_train.cols()) {
    throw ContractError("one_nn: training label count mismatch");
  }
  if (z_test.cols() > 0 && z_test.rows() != z_train.rows()) {
    throw ContractError("one_nn: train/test embedding dimensions differ");
  }
  std::vector<int> predictions(static_cast<std::size_t>(z_test.cols()));
  for (Index t = 0; t < z_test.cols(); ++t) {
    double best = std::numeric_limits<double>::infinity();
    Index best_index = 0;
    for (Index j = 0; j < z_train.cols(); ++j) {
      const double dist = (z_train.col(j) - z_test.col(t)).squaredNorm();
      if (dist < best) {
        best = dist;
        best_index = j;
      }
    }
    predictions[static_cast<std::size_t>(t)] = y_train[static_cast<std::size_t>(best_index)];
  }
  return predictions;
}

double one_nn_accuracy(const Matrix& z_train, std::span<const int> y_train, const Matrix& z_test,
                       std::span<const int> y_test) {
  if (static_cast<Index>(y_test.size()) != z_test.cols()) {
    throw ContractError("one_nn: test label count mismatch");
  }
  const std::vector<int> predictions = one_nn_predict(z_train, y_train, z_test);
  if (predictions.empty()) {
    return 0.0;
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    correct += predictions[i] == y_test[i] ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

double one_nn_loo_accuracy(const Matrix& z, std::span<const int> y) {
  if (z.cols() < 2) {
    throw ContractError("one_nn_loo: need at least two samples");
  }
  if (static_cast<Index>(y.size()) != z.cols()) {
    throw ContractError("one_nn_loo: label count mismatch");
  }
  std::size_t correct = 0;
  for (Index t = 0; t < z.cols(); ++t) {
    double best = std::numeric_limits<double>::infinity();
    Index best_index = 0;
    for (Index j = 0; j < z.cols(); ++j) {
      if (j == t) {
        continue;
      }
      const double dist = (z.col(j) - z.col(t)).squaredNorm();
      if (dist < best) {
        best = dist;
        best_index = j;
      }
    }
    correct += y[static_cast<std::size_t>(best_index)] == y[static_cast<std::size_t>(t)] ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(z.cols());
}

const BenchAggregate* BenchReport::find(Method method, Index k) const {
  for (const auto& agg : aggregates) {
    if (agg.method == method && agg.k == k) {
      return &agg;
    }
  }
  return nullptr;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

Stats stats(const std::vector<double>& values) {
  Stats s;
  if (values.empty()) {
    return s;
  }
  for (double v : values) {
    s.mean += v;
  }
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) {
      ss += (v - s.mean) * (v - s.mean);
    }
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

CvEmbedding cv_embedding_for(Method method, const BenchConfig& config) {
  if (method == Method::kspca) {
    return CvEmbedding::kspca;
  }
  return config.ksrp_exact_kernel ? CvEmbedding::ksrp_exact : CvEmbedding::ksrp_rff;
}

struct RepeatData {
  LabeledDataset train;
  LabeledDataset test;
};

RepeatData prepare_repeat(const LabeledDataset& ds, const BenchConfig& config, std::uint64_t repeat_seed) {
  const TrainTestSplit parts = split(ds, config.train_fraction, derive_seed(repeat_seed, 0));
  NormalizedPair normalized = normalize01(parts.train, parts.test);
  return {std::move(normalized.train), std::move(normalized.test)};
}

}  // namespace

std::vector<BenchAggregate> aggregate_rows(const std::vector<BenchRow>& rows, const BenchConfig& config) {
  std::vector<BenchAggregate> out;
  for (Method method : config.methods) {
    for (Index k : config.ks) {
      BenchAggregate agg;
      agg.method = method;
      agg.k = k;
      std::vector<double> acc;
      std::vector<double> fit;
      std::vector<double> transform_times;
      for (const auto& row : rows) {
        if (row.method != method || row.k != k) {
          continue;
        }
        if (row.skipped) {
          ++agg.skipped;
          continue;
        }
        acc.push_back(row.accuracy);
        fit.push_back(static_cast<double>(row.fit_ns));
        transform_times.push_back(static_cast<double>(row.transform_ns));
      }
      agg.runs = acc.size();
      const Stats a = stats(acc);
      const Stats f = stats(fit);
      const Stats t = stats(transform_times);
      agg.accuracy_mean = a.mean;
      agg.accuracy_std = a.stddev;
      agg.fit_ns_mean = f.mean;
      agg.fit_ns_std = f.stddev;
      agg.transform_ns_mean = t.mean;
      agg.transform_ns_std = t.stddev;
      out.push_back(agg);
    }
  }
  return out;
}

BenchReport run_benchmark(const LabeledDataset& ds, const BenchConfig& config) {
  if (config.methods.empty() || config.ks.empty()) {
    throw ContractError("run_benchmark: need at least one method and one k");
  }
  if (config.repeats == 0) {
    throw ContractError("run_benchmark: repeats must be >= 1");
  }
  BenchReport report;
  report.dataset = ds.provenance;
  report.n = ds.size();
  report.d = ds.dim();
  report.config = config;

  // bandwidth per kernel method, chosen before any timed work
  for (Method method : config.methods) {
    if (!is_kernel_method(method) || report.sigma_x.contains(method)) {
      continue;
    }
    if (config.sigma_x) {
      report.sigma_x[method] = *config.sigma_x;
      continue;
    }
    const RepeatData first = prepare_repeat(ds, config, derive_seed(config.seed, 0));
    SigmaCvOptions cv;
    cv.folds = std::min<std::size_t>(config.cv_folds, static_cast<std::size_t>(first.train.size()));
    cv.embedding = cv_embedding_for(method, config);
    cv.k = 2;
    cv.kx = config.kx;
    cv.sigma_y = config.sigma_y;
    cv.seed = derive_seed(config.seed, 1000 + static_cast<std::uint64_t>(method));
    report.sigma_x[method] = select_sigma_cv(first.train.x, first.train.labels, cv);
  }

  const std::size_t per_repeat = config.methods.size() * config.ks.size();
  std::vector<BenchRow> rows(config.repeats * per_repeat);
  const bool contended = config.parallel;

  auto run_repeat = [&](std::size_t repeat) {
    const std::uint64_t repeat_seed = derive_seed(config.seed, repeat);
    const RepeatData data = prepare_repeat(ds, config, repeat_seed);
    std::size_t slot = repeat * per_repeat;
    for (Method method : config.methods) {
      for (Index k : config.ks) {
        BenchRow& row = rows[slot++];
        row.method = method;
        row.k = k;
        row.repeat = repeat;
        row.seed = derive_seed(repeat_seed, 100 + static_cast<std::uint64_t>(k));
        row.contended = contended;
        if (auto it = report.sigma_x.find(method); it != report.sigma_x.end()) {
          row.sigma_x = it->second;
        }
        if (const std::string reason = infeasibility(method, k, data.train.dim(), data.train.size());
            !reason.empty()) {
          row.skipped = true;
          row.skip_reason = reason;
          continue;
        }
        MethodParams params;
        params.sigma_x = row.sigma_x > 0.0 ? row.sigma_x : 1.0;
        params.kx = config.kx;
        params.sigma_y = config.sigma_y;
        params.psi_backend = config.psi_backend;
        params.ksrp_exact_kernel = config.ksrp_exact_kernel;
        params.seed = row.seed;

        const FitOutcome fit = fit_method(method, data.train.x, data.train.labels, k, params);
        const auto start = Clock::now();
        const Matrix z_test = transform(fit.model, data.test.x);
        row.transform_ns =
            std::max<std::int64_t>(1, std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
        row.construct_ns = fit.construct_ns;
        row.solve_ns = fit.solve_ns;
        row.fit_ns = fit.fit_ns();
        if (const auto* linear = std::get_if<LinearModel>(&fit.model)) {
          row.residual = linear->orthonormality_residual;
        } else {
          row.residual = std::get<KernelModel>(fit.model).constraint_residual;
        }
        row.accuracy = one_nn_accuracy(training_embedding(fit.model), data.train.labels, z_test, data.test.labels);
      }
    }
  };

  if (config.parallel) {
    std::size_t workers = config.threads > 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, config.repeats);
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t r = w; r < config.repeats; r += workers) {
            run_repeat(r);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (const auto& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  } else {
    for (std::size_t r = 0; r < config.repeats; ++r) {
      run_repeat(r);
    }
  }

  report.rows = std::move(rows);
  report.aggregates = aggregate_rows(report.rows, config);
  return report;
}

}  // namespace srp
