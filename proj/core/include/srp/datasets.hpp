#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "srp/matrix.hpp"

namespace srp {

/// Samples as columns of X with one integer class id per column.
/// class_names[c] is the original label text for class id c.
struct LabeledDataset {
  Matrix x;  // d x n
  std::vector<int> labels;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;  // empty when unknown
  std::string provenance;

  Index dim() const noexcept { return x.rows(); }
  Index size() const noexcept { return x.cols(); }
  std::size_t num_classes() const noexcept { return class_names.size(); }
  /// Samples per class id.
  std::vector<std::size_t> class_counts() const;
  /// Column subset, keeping class ids and names.
  LabeledDataset subset(const std::vector<Index>& columns) const;
};

/// Binary XOR: Gaussian clusters (std 0.25) at (+-1, +-1); opposite corners
/// share a class. Sample i belongs to cluster i % 4, so n = 500 gives 125 per
/// cluster. noise_dims Uniform[0, 1) features are appended. Requires n >= 4.
LabeledDataset gen_xor(Index n, Index noise_dims, std::uint64_t seed);

struct SpiralParams {
  /// Gaussian jitter standard deviation as a fraction of the maximum radius.
  double jitter = 0.05;
};

/// Two interleaved Archimedean arms r = theta / (3 pi), theta in (0, 3 pi],
/// the second rotated by pi. Points are spaced evenly in arc length
/// (theta_i = 3 pi sqrt((i + 1) / m)); arm 0 gets ceil(n / 2) points.
/// Requires n >= 2.
LabeledDataset gen_spirals(Index n, Index noise_dims, std::uint64_t seed, const SpiralParams& params = {});

/// Label column by zero-based index or by header name.
using LabelColumn = std::variant<std::size_t, std::string>;

/// Reads a comma-separated file: every column other than the label column is
/// a numeric feature. A first row whose feature cells are not all numeric is a
/// header. Throws ParseError with the row/column of the offending cell, and
/// DataError for unreadable or empty files.
LabeledDataset load_csv(const std::filesystem::path& path, const LabelColumn& label_column);

/// Per-feature affine map onto [0, 1] fitted on training data.
struct MinMaxScaler {
  Vector min;
  Vector max;

  /// Constant features map to 0.5; values outside the training range are clamped.
  Matrix apply(const Matrix& x) const;
};

struct NormalizedPair {
  LabeledDataset train;
  LabeledDataset test;
  MinMaxScaler scaler;
};

NormalizedPair normalize01(const LabeledDataset& train, const LabeledDataset& test);

struct TrainTestSplit {
  LabeledDataset train;
  LabeledDataset test;
  std::vector<std::string> warnings;
};

/// Stratified random split: each class contributes round(fraction * n_c)
/// samples to train (a singleton class goes to train with a warning). Column
/// order within each part follows the original order.
TrainTestSplit split(const LabeledDataset& ds, double train_fraction, std::uint64_t seed);

/// Writes features as columns f0..f{d-1} plus a trailing "label" column.
void write_dataset_csv(const LabeledDataset& ds, const std::filesystem::path& path);

}  // namespace srp
