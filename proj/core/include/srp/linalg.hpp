#pragma once

#include <cstddef>

#include "srp/matrix.hpp"

namespace srp {

/// Right-multiplies by the centering matrix I - ee^T/n, i.e. subtracts each
/// row's mean. O(rows * cols); the n x n centering matrix is never formed.
Matrix center_columns(const Matrix& m);

/// Eigenpairs of a symmetric matrix, largest eigenvalue first.
struct EigPair {
  Vector values;   // descending
  Matrix vectors;  // unit-norm columns, one per value
};

/// Symmetric matrices up to this order are solved with cyclic Jacobi;
/// larger ones go through Householder tridiagonalization + implicit QL.
inline constexpr Index kJacobiMaxOrder = 128;

/// Top-k eigenpairs of a symmetric matrix.
///
/// The input must be square and symmetric to 1e-10 relative; 1 <= k <= n.
/// Each returned eigenvector has its largest-magnitude component positive
/// (first such component on ties), so repeated runs agree bit-for-bit.
EigPair sym_eig_topk(const Matrix& a, Index k);

/// Full decomposition by cyclic Jacobi rotations regardless of order.
/// Converges when the off-diagonal Frobenius mass drops below
/// 1e-12 * ||A||_F; throws NumericalError after 100 sweeps.
EigPair jacobi_eigen(const Matrix& a);

/// ||A V - V diag(values)||_F.
double eig_residual(const Matrix& a, const EigPair& eig);

/// Rank-k factor Psi (k x n) with L ~= Psi^T Psi, Psi = Sigma_k^{1/2} U_k^T.
///
/// Eigenvalues in (-1e-8 * max(1, lambda_max), 0) are clamped to zero; anything
/// more negative means L is indefinite and raises NumericalError. Exact when
/// rank(L) <= k; otherwise the Frobenius-optimal rank-k factor.
Matrix psd_factor(const Matrix& l, Index k);

/// Number of eigenvalues above rel_tol * lambda_max (0 for the zero matrix).
Index numerical_rank(const Vector& descending_values, double rel_tol = 1e-10);

}  // namespace srp
