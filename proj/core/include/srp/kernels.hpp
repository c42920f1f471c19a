#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srp/matrix.hpp"

namespace srp {

/// Kernel selector. RBF is exp(-||a - b||^2 / (2 sigma^2)).
class KernelSpec {
 public:
  enum class Kind { rbf, linear, delta };

  static KernelSpec rbf(double sigma);
  static KernelSpec linear() { return KernelSpec(Kind::linear, 0.0); }
  static KernelSpec delta() { return KernelSpec(Kind::delta, 0.0); }

  Kind kind() const noexcept { return kind_; }
  /// Bandwidth; only meaningful for rbf.
  double sigma() const noexcept { return sigma_; }

  std::string describe() const;

 private:
  KernelSpec(Kind kind, double sigma) : kind_(kind), sigma_(sigma) {}

  Kind kind_;
  double sigma_;
};

/// Cross Gram matrix (m x n) between the columns of a (d x m) and b (d x n).
///
/// Squared distances are accumulated per pair from coordinate differences, so
/// identical columns give exactly 0 and an rbf entry of exactly 1.
Matrix gram(const KernelSpec& spec, const Matrix& a, const Matrix& b);

/// Symmetric Gram matrix of the columns of x.
Matrix gram(const KernelSpec& spec, const Matrix& x);

/// Encodes class ids as a 1 x n matrix so the label kernel can use gram().
Matrix labels_as_matrix(std::span<const int> labels);

/// Delta Gram for class labels: L_ij = 1 iff labels[i] == labels[j].
Matrix label_gram(std::span<const int> labels);

/// Median pairwise Euclidean distance between columns (at most 1000 columns
/// are used, chosen by a fixed stride).
double median_pairwise_distance(const Matrix& x);

/// median_pairwise_distance(x) * 2^(e/2) for e = -8..8, ascending.
std::vector<double> default_sigma_grid(const Matrix& x);

/// Which embedding scores a candidate bandwidth during cross-validation.
enum class CvEmbedding { kspca, ksrp_exact, ksrp_rff };

struct SigmaCvOptions {
  std::size_t folds = 10;
  std::vector<double> grid;  // empty -> default_sigma_grid
  CvEmbedding embedding = CvEmbedding::kspca;
  Index k = 2;
  Index kx = 1000;        // random features for ksrp_rff
  double sigma_y = 1e-10; // label-kernel bandwidth for the ksrp label factor
  std::uint64_t seed = 0;
};

/// Picks the grid bandwidth with the best mean held-out 1-NN accuracy of the
/// chosen embedding at options.k. Folds whose training part misses a class are
/// skipped; ties go to the smaller sigma. Throws DataError if every fold is
/// skipped and ContractError on n < folds, folds < 2 or an empty grid.
double select_sigma_cv(const Matrix& x, std::span<const int> labels, const SigmaCvOptions& options = {});

struct SigmaCvResult {
  double sigma = 0.0;
  std::vector<double> grid;    // ascending
  std::vector<double> scores;  // mean held-out accuracy per grid entry
  std::size_t folds_used = 0;
};

/// select_sigma_cv with the per-bandwidth scores. A one-element grid is still scored.
SigmaCvResult sigma_cv_scores(const Matrix& x, std::span<const int> labels, const SigmaCvOptions& options = {});

}  // namespace srp
