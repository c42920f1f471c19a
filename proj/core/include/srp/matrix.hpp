#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string_view>

namespace srp {

// Column-major dense storage; samples are columns (d x n).
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Throws ContractError naming `what` if any entry is NaN or infinite.
void require_finite(const Matrix& m, std::string_view what);

/// Throws ContractError unless `m` is square.
void require_square(const Matrix& m, std::string_view what);

/// Max-abs asymmetry relative to max(1, max-abs entry).
double relative_asymmetry(const Matrix& m);

/// ||Q^T Q - I||_F for a matrix with orthonormal columns.
double orthonormality_residual(const Matrix& q);

}  // namespace srp
