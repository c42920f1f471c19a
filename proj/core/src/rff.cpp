#include "srp/rff.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "srp/error.hpp"
#include "srp/random.hpp"

namespace srp {

FeatureMap sample_map(double sigma, Index d, Index D, std::uint64_t seed) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ContractError("sample_map: sigma must be positive and finite");
  }
  if (d < 1 || D < 1) {
    throw ContractError("sample_map: input and feature dimensions must be >= 1");
  }
  Rng rng(seed);
  FeatureMap map;
  map.frequencies.resize(D, d);
  // row-major draw order so a map with more features extends a smaller one
  for (Index i = 0; i < D; ++i) {
    for (Index j = 0; j < d; ++j) {
      map.frequencies(i, j) = rng.normal() / sigma;
    }
  }
  map.phases.resize(D);
  for (Index i = 0; i < D; ++i) {
    map.phases(i) = 2.0 * std::numbers::pi * rng.uniform();
  }
  map.scale = std::sqrt(2.0 / static_cast<double>(D));
  map.sigma = sigma;
  map.seed = seed;
  return map;
}

Matrix apply_map(const FeatureMap& map, const Matrix& x) {
  if (x.rows() != map.input_dim()) {
    throw ContractError("apply_map: input has " + std::to_string(x.rows()) + " rows, map expects " +
                        std::to_string(map.input_dim()));
  }
  Matrix z = map.frequencies * x;
  z.colwise() += map.phases;
  return map.scale * z.array().cos().matrix();
}

}  // namespace srp
