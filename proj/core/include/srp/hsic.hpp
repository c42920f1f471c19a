#pragma once

#include "srp/matrix.hpp"

namespace srp {

/// Empirical HSIC, tr(K H L H) / (n - 1)^2, with H = I - ee^T/n.
///
/// L is double-centered in O(n^2) (row means, column means, grand mean)
/// instead of multiplying by H. Both inputs must be square, of equal order
/// n >= 2 and symmetric to 1e-8.
double hsic_empirical(const Matrix& k, const Matrix& l);

}  // namespace srp
