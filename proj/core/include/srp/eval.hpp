#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srp/datasets.hpp"
#include "srp/embeddings.hpp"
#include "srp/matrix.hpp"

namespace srp {

/// Fraction of test columns whose nearest training column (Euclidean, ties to
/// the lowest training index) carries the same label.
double one_nn_accuracy(const Matrix& z_train, std::span<const int> y_train, const Matrix& z_test,
                       std::span<const int> y_test);

/// Leave-one-out 1-NN accuracy within one embedded set (each column is
/// classified by its nearest other column). Needs at least two columns.
double one_nn_loo_accuracy(const Matrix& z, std::span<const int> y);

/// 1-NN predictions behind one_nn_accuracy.
std::vector<int> one_nn_predict(const Matrix& z_train, std::span<const int> y_train, const Matrix& z_test);

struct BenchConfig {
  std::vector<Method> methods;
  std::vector<Index> ks;
  std::size_t repeats = 30;
  std::uint64_t seed = 0;
  double train_fraction = 0.7;
  std::optional<double> sigma_x;  // unset -> cross-validated once per kernel method
  std::size_t cv_folds = 10;
  Index kx = 1000;
  double sigma_y = 1e-10;
  LabelFactorBackend psi_backend = LabelFactorBackend::rff;
  bool ksrp_exact_kernel = false;
  /// Run repeats on worker threads. Timings are then flagged as contended.
  bool parallel = false;
  std::size_t threads = 0;  // 0 -> hardware concurrency
};

struct BenchRow {
  Method method = Method::spca;
  Index k = 0;
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  double sigma_x = 0.0;
  bool skipped = false;
  std::string skip_reason;
  double accuracy = 0.0;
  std::int64_t fit_ns = 0;  // construct + solve
  std::int64_t construct_ns = 0;
  std::int64_t solve_ns = 0;
  std::int64_t transform_ns = 0;
  /// ||U^T U - I|| for PCA/SPCA, ||beta^T K beta - I|| for KSPCA, NaN otherwise.
  double residual = std::numeric_limits<double>::quiet_NaN();
  bool contended = false;
};

struct BenchAggregate {
  Method method = Method::spca;
  Index k = 0;
  std::size_t runs = 0;
  std::size_t skipped = 0;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
  double fit_ns_mean = 0.0;
  double fit_ns_std = 0.0;
  double transform_ns_mean = 0.0;
  double transform_ns_std = 0.0;
};

struct BenchReport {
  std::string dataset;
  Index n = 0;
  Index d = 0;
  BenchConfig config;
  std::map<Method, double> sigma_x;  // bandwidth used per kernel method
  std::vector<BenchRow> rows;        // repeat-major, then method, then k
  std::vector<BenchAggregate> aggregates;

  const BenchAggregate* find(Method method, Index k) const;
};

/// Per repeat: stratified split, [0, 1] normalization on the training part,
/// fit + transform for every (method, k), 1-NN test accuracy. Bandwidth
/// cross-validation happens once up front on the first repeat's training set
/// and is not part of any timing. Infeasible (method, k) pairs are recorded as
/// skipped. Deterministic in config.seed.
BenchReport run_benchmark(const LabeledDataset& ds, const BenchConfig& config);

/// Recomputes mean/std per (method, k) from report.rows.
std::vector<BenchAggregate> aggregate_rows(const std::vector<BenchRow>& rows, const BenchConfig& config);

/// One row per (repeat, method, k); header documented in the README.
void write_report_csv(const BenchReport& report, std::ostream& out);
/// Aggregate document with config, bandwidths and per-(method, k) statistics.
void write_report_json(const BenchReport& report, std::ostream& out);

}  // namespace srp
