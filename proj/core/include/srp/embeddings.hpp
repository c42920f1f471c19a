#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "srp/kernels.hpp"
#include "srp/matrix.hpp"
#include "srp/rff.hpp"

namespace srp {

enum class Method { pca, spca, kspca, srp, ksrp };

std::string_view to_string(Method method);
/// Parses "pca", "spca", "kspca", "srp" or "ksrp"; throws ContractError otherwise.
Method parse_method(std::string_view name);
bool is_kernel_method(Method method);

/// Ridge added to K before the Cholesky step of KSPCA.
inline constexpr double kKspcaRidge = 1e-8;

/// Linear embedding z = P^T x with a d x k projector P.
///
/// For SPCA/PCA the projector has orthonormal columns (the top eigenvectors of
/// X H L H X^T). For SRP it is X H Psi_Y^T, which is neither orthogonal nor
/// whitened: it differs from the SPCA basis by a rotation and a Sigma^{1/2}
/// scaling.
struct LinearModel {
  Method method = Method::spca;
  Matrix projector;           // d x k
  Matrix training_embedding;  // k x n, = projector^T X_train
  Vector eigenvalues;         // SPCA/PCA only
  double orthonormality_residual = std::numeric_limits<double>::quiet_NaN();
};

/// Kernel embedding z = C^T b(x), where b(x) is either the exact kernel column
/// k(X_train, x) or the random feature vector psi_X(x).
///
///   KSPCA:           C = beta (n x k), b = k(X_train, .)
///   KSRP (exact K):  C = (Psi_Y H)^T (n x k), b = k(X_train, .)
///   KSRP (features): C = Psi_X H Psi_Y^T (D x k), b = psi_X(.)
struct KernelModel {
  enum class Backend { exact, random_features };

  Method method = Method::kspca;
  Backend backend = Backend::exact;
  Matrix coefficients;
  Matrix train_inputs;  // exact backend only
  KernelSpec kernel = KernelSpec::linear();
  std::optional<FeatureMap> feature_map;  // random_features backend only
  Matrix training_embedding;              // k x n
  /// ||beta^T (K + ridge I) beta - I||_F, KSPCA only.
  double constraint_residual = std::numeric_limits<double>::quiet_NaN();
};

using EmbeddingModel = std::variant<LinearModel, KernelModel>;

/// Data side of KSRP: exact kernel, or an explicit random feature map.
using KsrpDataBackend = std::variant<KernelSpec, FeatureMap>;

/// Supervised PCA: top-k eigenvectors of Q = X H L H X^T, built from the
/// column-centered X. Requires L n x n symmetric, n >= 2 and 1 <= k <= d.
LinearModel fit_spca(const Matrix& x, const Matrix& l, Index k);

/// Ordinary PCA, i.e. fit_spca with L = I without forming the identity.
LinearModel fit_pca(const Matrix& x, Index k);

/// Kernel supervised PCA.
///
/// Maximizes tr(beta^T K H L H K beta) subject to beta^T K beta = I through a
/// symmetric reduction: K + ridge I = C^T C (Cholesky), take the top-k
/// eigenvectors V of S = C H L H C^T and set beta = C^{-1} V. Throws
/// NumericalError if the ridged kernel is still not positive definite.
KernelModel fit_kspca(const Matrix& x, const KernelSpec& kernel, const Matrix& l, Index k);

/// Same, with the training Gram matrix gram(kernel, x) already computed.
KernelModel fit_kspca(const Matrix& x, const KernelSpec& kernel, const Matrix& gram_matrix, const Matrix& l,
                      Index k);

/// Supervised random projection: projector X H Psi_Y^T, so the training
/// embedding is Psi_Y H X^T X. No eigendecomposition.
LinearModel fit_srp(const Matrix& x, const Matrix& psi_y);

/// Kernel supervised random projection: training embedding Psi_Y H K, with K
/// exact or approximated by Psi_X^T Psi_X.
KernelModel fit_ksrp(const Matrix& x, const KsrpDataBackend& data_backend, const Matrix& psi_y);

/// Out-of-sample embedding (k x m) of the columns of x_new.
Matrix transform(const LinearModel& model, const Matrix& x_new);
Matrix transform(const KernelModel& model, const Matrix& x_new);
Matrix transform(const EmbeddingModel& model, const Matrix& x_new);

const Matrix& training_embedding(const EmbeddingModel& model);

/// How the label factor Psi_Y (k x n, L ~= Psi_Y^T Psi_Y) is produced.
enum class LabelFactorBackend {
  rff,   // random Fourier features of rbf(sigma_y) on the class ids
  exact  // psd_factor of the delta Gram matrix
};

Matrix label_factor(std::span<const int> labels, Index k, LabelFactorBackend backend, double sigma_y,
                    std::uint64_t seed);

/// Gram-level check that the SRP embedding Z2 = Psi H X^T X equals
/// Sigma^{1/2} Z1 = Sigma^{1/2} U^T X up to a rotation, using an exact factor
/// Psi of L and the rank(Q) leading SPCA eigenpairs:
///   ||Z2^T Z2 - Z1^T Sigma Z1||_F / ||Z1^T Sigma Z1||_F.
/// Returns the unnormalized difference if Q is zero.
double claim1_check(const Matrix& x, const Matrix& l);

}  // namespace srp
