#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "srp/embeddings.hpp"

namespace srp {

/// Everything besides the data needed to fit one method end to end.
struct MethodParams {
  double sigma_x = 1.0;  // rbf bandwidth of the data kernel
  Index kx = 1000;       // random features for the KSRP data kernel
  double sigma_y = 1e-10;
  LabelFactorBackend psi_backend = LabelFactorBackend::rff;
  /// KSRP data side: random features (Psi_X) or the exact kernel.
  bool ksrp_exact_kernel = false;
  std::uint64_t seed = 0;
};

struct FitOutcome {
  EmbeddingModel model;
  std::int64_t construct_ns = 0;  // kernel / label factor / feature construction
  std::int64_t solve_ns = 0;      // eigendecomposition or projection products
  std::int64_t fit_ns() const noexcept { return construct_ns + solve_ns; }
};

/// Returns an empty string if (method, k) can be fitted on d x n data, or the reason it cannot.
std::string infeasibility(Method method, Index k, Index d, Index n);

/// Builds L / Psi_Y / K / Psi_X as the method requires and fits it, timing the
/// two phases separately. The label factor uses seed stream 1 of params.seed,
/// the data feature map stream 2.
FitOutcome fit_method(Method method, const Matrix& x, std::span<const int> labels, Index k,
                      const MethodParams& params);

}  // namespace srp
