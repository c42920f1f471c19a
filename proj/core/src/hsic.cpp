#include "srp/hsic.hpp"

#include <algorithm>
#include <string>

#include "srp/error.hpp"

namespace srp {

double hsic_empirical(const Matrix& k, const Matrix& l) {
  require_square(k, "hsic_empirical");
  require_square(l, "hsic_empirical");
  if (k.rows() != l.rows()) {
    throw ContractError("hsic_empirical: Gram matrices differ in order (" + std::to_string(k.rows()) + " vs " +
                        std::to_string(l.rows()) + ")");
  }
  const Index n = k.rows();
  if (n < 2) {
    throw ContractError("hsic_empirical: need n >= 2");
  }
  if (relative_asymmetry(k) > 1e-8 || relative_asymmetry(l) > 1e-8) {
    throw ContractError("hsic_empirical: Gram matrices must be symmetric");
  }

  const Vector row_means = l.rowwise().mean();
  const Vector col_means = l.colwise().mean().transpose();
  const double grand_mean = l.mean();
  // tr(K Lc) = sum_ij K_ij Lc_ji with Lc = H L H, visited in tiles so that
  // the transposed reads of L stay in cache
  constexpr Index kTile = 64;
  double trace = 0.0;
  for (Index jb = 0; jb < n; jb += kTile) {
    for (Index ib = 0; ib < n; ib += kTile) {
      const Index jend = std::min(n, jb + kTile);
      const Index iend = std::min(n, ib + kTile);
      for (Index j = jb; j < jend; ++j) {
        for (Index i = ib; i < iend; ++i) {
          trace += k(i, j) * (l(j, i) - row_means(j) - col_means(i) + grand_mean);
        }
      }
    }
  }
  const double denom = static_cast<double>(n - 1);
  return trace / (denom * denom);
}

}  // namespace srp
