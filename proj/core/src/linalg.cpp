#include "srp/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "srp/error.hpp"

namespace srp {

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw ContractError(std::string(what) + ": matrix has non-finite entries");
  }
}

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw ContractError(std::string(what) + ": expected a square matrix, got " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
  }
}

double relative_asymmetry(const Matrix& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  require_square(m, "relative_asymmetry");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  // tiled so that both m(i, j) and m(j, i) stay in cache
  constexpr Index kTile = 64;
  const Index n = m.rows();
  double worst = 0.0;
  for (Index jb = 0; jb < n; jb += kTile) {
    for (Index ib = 0; ib <= jb; ib += kTile) {
      const Index jend = std::min(n, jb + kTile);
      const Index iend = std::min(n, ib + kTile);
      for (Index j = jb; j < jend; ++j) {
        for (Index i = ib; i < std::min(iend, j); ++i) {
          worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
        }
      }
    }
  }
  return worst / scale;
}

double orthonormality_residual(const Matrix& q) {
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols())).norm();
}

Matrix center_columns(const Matrix& m) {
  if (m.cols() == 0) {
    return m;
  }
  const Vector means = m.rowwise().mean();
  return m.colwise() - means;
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-12;
constexpr double kSymmetryTol = 1e-10;

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (i != j) {
        sum += a(i, j) * a(i, j);
      }
    }
  }
  return std::sqrt(sum);
}

// Sort descending (stable, so equal eigenvalues keep solver order) and fix signs.
EigPair canonicalize(const Vector& values, const Matrix& vectors, Index k) {
  const Index n = values.size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index lhs, Index rhs) { return values(lhs) > values(rhs); });

  EigPair out{Vector(k), Matrix(vectors.rows(), k)};
  for (Index c = 0; c < k; ++c) {
    const Index src = order[static_cast<std::size_t>(c)];
    out.values(c) = values(src);
    Vector v = vectors.col(src);
    const double largest = v.cwiseAbs().maxCoeff();
    for (Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) >= largest - 1e-12) {
        if (v(i) < 0.0) {
          v = -v;
        }
        break;
      }
    }
    out.vectors.col(c) = v;
  }
  return out;
}

void require_symmetric(const Matrix& a, std::string_view what) {
  require_square(a, what);
  require_finite(a, what);
  if (relative_asymmetry(a) > kSymmetryTol) {
    throw ContractError(std::string(what) + ": matrix is not symmetric");
  }
}

struct RawEig {
  Vector values;
  Matrix vectors;
};

RawEig jacobi_raw(Matrix a) {
  const Index n = a.rows();
  Matrix v = Matrix::Identity(n, n);
  const double norm = a.norm();
  if (norm == 0.0) {
    return {Vector::Zero(n), v};
  }

  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < kOffDiagonalTol * norm) {
      return {a.diagonal(), v};
    }
    if (sweep == kMaxSweeps) {
      break;
    }
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (Index r = 0; r < n; ++r) {
          if (r == p || r == q) {
            continue;
          }
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
          a(p, r) = a(r, p);
          a(q, r) = a(r, q);
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (Index r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }
  throw NumericalError("jacobi_eigen: no convergence after " + std::to_string(kMaxSweeps) + " sweeps");
}

RawEig full_raw(const Matrix& a) {
  // symmetrize away the permitted 1e-10 asymmetry before factoring
  const Matrix sym = 0.5 * (a + a.transpose());
  if (sym.rows() <= kJacobiMaxOrder) {
    return jacobi_raw(sym);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("sym_eig_topk: tridiagonal QL did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace

EigPair jacobi_eigen(const Matrix& a) {
  require_symmetric(a, "jacobi_eigen");
  if (a.rows() == 0) {
    return {};
  }
  RawEig raw = jacobi_raw(0.5 * (a + a.transpose()));
  return canonicalize(raw.values, raw.vectors, a.rows());
}

EigPair sym_eig_topk(const Matrix& a, Index k) {
  require_symmetric(a, "sym_eig_topk");
  if (k < 1 || k > a.rows()) {
    throw ContractError("sym_eig_topk: k=" + std::to_string(k) + " outside [1, " + std::to_string(a.rows()) + "]");
  }
  const RawEig raw = full_raw(a);
  return canonicalize(raw.values, raw.vectors, k);
}

double eig_residual(const Matrix& a, const EigPair& eig) {
  return (a * eig.vectors - eig.vectors * eig.values.asDiagonal()).norm();
}

Index numerical_rank(const Vector& descending_values, double rel_tol) {
  if (descending_values.size() == 0 || descending_values(0) <= 0.0) {
    return 0;
  }
  const double cutoff = rel_tol * descending_values(0);
  Index rank = 0;
  for (Index i = 0; i < descending_values.size(); ++i) {
    if (descending_values(i) > cutoff) {
      ++rank;
    }
  }
  return rank;
}

Matrix psd_factor(const Matrix& l, Index k) {
  require_symmetric(l, "psd_factor");
  const Index n = l.rows();
  if (k < 1 || k > n) {
    throw ContractError("psd_factor: k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  const EigPair full = sym_eig_topk(l, n);
  const double floor = -1e-8 * std::max(1.0, full.values(0));
  if (full.values(n - 1) < floor) {
    throw NumericalError("psd_factor: matrix is indefinite (eigenvalue " + std::to_string(full.values(n - 1)) + ")");
  }
  Matrix psi(k, n);
  for (Index i = 0; i < k; ++i) {
    psi.row(i) = std::sqrt(std::max(full.values(i), 0.0)) * full.vectors.col(i).transpose();
  }
  return psi;
}

}  // namespace srp
