#pragma once

#include <cstdint>

#include "srp/matrix.hpp"

namespace srp {

/// Random Fourier feature map psi(x) = sqrt(2/D) cos(W x + b) for the RBF
/// kernel exp(-||x - y||^2 / (2 sigma^2)): rows of W ~ Normal(0, sigma^-2 I),
/// b ~ Uniform[0, 2 pi). E[psi(x)^T psi(y)] = k(x, y).
struct FeatureMap {
  Matrix frequencies;  // D x d
  Vector phases;       // D
  double scale = 0.0;  // sqrt(2 / D)
  double sigma = 0.0;
  std::uint64_t seed = 0;

  Index input_dim() const noexcept { return frequencies.cols(); }
  Index output_dim() const noexcept { return frequencies.rows(); }
};

/// Draws a map; the result depends only on (sigma, d, D, seed).
FeatureMap sample_map(double sigma, Index d, Index D, std::uint64_t seed);

/// Psi = psi(X), D x n. Throws ContractError if X.rows() != map.input_dim().
Matrix apply_map(const FeatureMap& map, const Matrix& x);

}  // namespace srp
