#include "srp/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "srp/error.hpp"

namespace srp {

KernelSpec KernelSpec::rbf(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ContractError("KernelSpec::rbf: sigma must be positive and finite");
  }
  return KernelSpec(Kind::rbf, sigma);
}

std::string KernelSpec::describe() const {
  switch (kind_) {
    case Kind::rbf: {
      std::ostringstream out;
      out << "rbf(sigma=" << sigma_ << ")";
      return out.str();
    }
    case Kind::linear:
      return "linear";
    case Kind::delta:
      return "delta";
  }
  return "unknown";
}

namespace {

double squared_distance(const Matrix& a, Index i, const Matrix& b, Index j) {
  double sum = 0.0;
  for (Index r = 0; r < a.rows(); ++r) {
    const double diff = a(r, i) - b(r, j);
    sum += diff * diff;
  }
  return sum;
}

bool identical_columns(const Matrix& a, Index i, const Matrix& b, Index j) {
  for (Index r = 0; r < a.rows(); ++r) {
    if (a(r, i) != b(r, j)) {
      return false;
    }
  }
  return true;
}

double entry(const KernelSpec& spec, const Matrix& a, Index i, const Matrix& b, Index j) {
  switch (spec.kind()) {
    case KernelSpec::Kind::rbf:
      return std::exp(-squared_distance(a, i, b, j) / (2.0 * spec.sigma() * spec.sigma()));
    case KernelSpec::Kind::delta:
      return identical_columns(a, i, b, j) ? 1.0 : 0.0;
    case KernelSpec::Kind::linear:
      break;
  }
  return a.col(i).dot(b.col(j));
}

}  // namespace

Matrix gram(const KernelSpec& spec, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw ContractError("gram: dimension mismatch (" + std::to_string(a.rows()) + " vs " + std::to_string(b.rows()) +
                        ")");
  }
  if (spec.kind() == KernelSpec::Kind::linear) {
    return a.transpose() * b;
  }
  Matrix k(a.cols(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) {
    for (Index i = 0; i < a.cols(); ++i) {
      k(i, j) = entry(spec, a, i, b, j);
    }
  }
  return k;
}

Matrix gram(const KernelSpec& spec, const Matrix& x) {
  if (spec.kind() == KernelSpec::Kind::linear) {
    return x.transpose() * x;
  }
  const Index n = x.cols();
  Matrix k(n, n);
  for (Index j = 0; j < n; ++j) {
    k(j, j) = entry(spec, x, j, x, j);
    for (Index i = j + 1; i < n; ++i) {
      k(i, j) = entry(spec, x, i, x, j);
      k(j, i) = k(i, j);
    }
  }
  return k;
}

Matrix labels_as_matrix(std::span<const int> labels) {
  Matrix y(1, static_cast<Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    y(0, static_cast<Index>(i)) = static_cast<double>(labels[i]);
  }
  return y;
}

Matrix label_gram(std::span<const int> labels) {
  const Index n = static_cast<Index>(labels.size());
  Matrix l(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      l(i, j) = labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
    }
  }
  return l;
}

double median_pairwise_distance(const Matrix& x) {
  constexpr Index kMaxColumns = 1000;
  const Index n = x.cols();
  if (n < 2) {
    throw ContractError("median_pairwise_distance: need at least two samples");
  }
  const Index stride = (n + kMaxColumns - 1) / kMaxColumns;
  std::vector<Index> cols;
  for (Index j = 0; j < n; j += stride) {
    cols.push_back(j);
  }
  std::vector<double> dists;
  dists.reserve(cols.size() * (cols.size() - 1) / 2);
  for (std::size_t a = 0; a < cols.size(); ++a) {
    for (std::size_t b = a + 1; b < cols.size(); ++b) {
      dists.push_back(std::sqrt(squared_distance(x, cols[a], x, cols[b])));
    }
  }
  if (dists.empty()) {
    throw ContractError("median_pairwise_distance: need at least two samples");
  }
  auto mid = dists.begin() + static_cast<std::ptrdiff_t>(dists.size() / 2);
  std::nth_element(dists.begin(), mid, dists.end());
  double median = *mid;
  if (median <= 0.0) {
    // more than half the pairs coincide; fall back to the largest distance
    median = *std::max_element(dists.begin(), dists.end());
  }
  if (median <= 0.0) {
    throw DataError("median_pairwise_distance: all samples are identical");
  }
  return median;
}

std::vector<double> default_sigma_grid(const Matrix& x) {
  const double base = median_pairwise_distance(x);
  std::vector<double> grid;
  // half-octave steps from base / 16 to 16 base
  for (int e = -8; e <= 8; ++e) {
    grid.push_back(base * std::exp2(0.5 * e));
  }
  return grid;
}

}  // namespace srp
