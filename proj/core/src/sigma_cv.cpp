#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "srp/embeddings.hpp"
#include "srp/error.hpp"
#include "srp/eval.hpp"
#include "srp/kernels.hpp"
#include "srp/random.hpp"

namespace srp {

namespace {

struct Fold {
  Matrix train_x;
  std::vector<int> train_y;
  Matrix test_x;
  std::vector<int> test_y;
};

Matrix columns(const Matrix& x, const std::vector<Index>& idx) {
  Matrix out(x.rows(), static_cast<Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.col(static_cast<Index>(j)) = x.col(idx[j]);
  }
  return out;
}

double score(const Fold& fold, double sigma, const SigmaCvOptions& options, std::uint64_t fold_seed) {
  const Index k = std::min<Index>(options.k, fold.train_x.cols());
  EmbeddingModel model;
  switch (options.embedding) {
    case CvEmbedding::kspca:
      model = fit_kspca(fold.train_x, KernelSpec::rbf(sigma), label_gram(fold.train_y), k);
      break;
    case CvEmbedding::ksrp_exact:
    case CvEmbedding::ksrp_rff: {
      const Matrix psi_y =
          label_factor(fold.train_y, k, LabelFactorBackend::rff, options.sigma_y, derive_seed(fold_seed, 1));
      KsrpDataBackend backend = KernelSpec::rbf(sigma);
      if (options.embedding == CvEmbedding::ksrp_rff) {
        backend = sample_map(sigma, fold.train_x.rows(), options.kx, derive_seed(fold_seed, 2));
      }
      model = fit_ksrp(fold.train_x, backend, psi_y);
      break;
    }
  }
  return one_nn_accuracy(training_embedding(model), fold.train_y, transform(model, fold.test_x), fold.test_y);
}

}  // namespace

SigmaCvResult sigma_cv_scores(const Matrix& x, std::span<const int> labels, const SigmaCvOptions& options) {
  const auto n = static_cast<std::size_t>(x.cols());
  if (labels.size() != n) {
    throw ContractError("select_sigma_cv: label count does not match sample count");
  }
  if (options.folds < 2 || options.folds > n) {
    throw ContractError("select_sigma_cv: need n >= folds >= 2");
  }
  std::vector<double> grid = options.grid.empty() ? default_sigma_grid(x) : options.grid;
  if (grid.empty()) {
    throw ContractError("select_sigma_cv: empty grid");
  }
  std::sort(grid.begin(), grid.end());

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng(options.seed);
  rng.shuffle(std::span<Index>(order));

  const std::set<int> all_classes(labels.begin(), labels.end());
  std::vector<Fold> folds;
  for (std::size_t f = 0; f < options.folds; ++f) {
    std::vector<Index> train_idx;
    std::vector<Index> test_idx;
    for (std::size_t pos = 0; pos < n; ++pos) {
      (pos % options.folds == f ? test_idx : train_idx).push_back(order[pos]);
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    Fold fold;
    for (Index j : train_idx) {
      fold.train_y.push_back(labels[static_cast<std::size_t>(j)]);
    }
    if (std::set<int>(fold.train_y.begin(), fold.train_y.end()) != all_classes || test_idx.empty() ||
        train_idx.size() < 2) {
      continue;
    }
    for (Index j : test_idx) {
      fold.test_y.push_back(labels[static_cast<std::size_t>(j)]);
    }
    fold.train_x = columns(x, train_idx);
    fold.test_x = columns(x, test_idx);
    folds.push_back(std::move(fold));
  }
  if (folds.empty()) {
    throw DataError("select_sigma_cv: every fold lacks a class in its training part");
  }

  SigmaCvResult result;
  result.grid = grid;
  result.folds_used = folds.size();
  double best_score = -1.0;
  for (double sigma : grid) {
    double total = 0.0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
      total += score(folds[f], sigma, options, derive_seed(options.seed, f + 1));
    }
    const double mean = total / static_cast<double>(folds.size());
    result.scores.push_back(mean);
    if (mean > best_score) {  // strict: ties keep the smaller sigma
      best_score = mean;
      result.sigma = sigma;
    }
  }
  return result;
}

double select_sigma_cv(const Matrix& x, std::span<const int> labels, const SigmaCvOptions& options) {
  if (options.grid.size() == 1) {
    if (options.folds < 2 || options.folds > static_cast<std::size_t>(x.cols())) {
      throw ContractError("select_sigma_cv: need n >= folds >= 2");
    }
    return options.grid.front();
  }
  return sigma_cv_scores(x, labels, options).sigma;
}

}  // namespace srp
