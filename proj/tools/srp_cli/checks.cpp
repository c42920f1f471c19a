#include "srp_cli/checks.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "srp/datasets.hpp"
#include "srp/embeddings.hpp"
#include "srp/eval.hpp"
#include "srp/hsic.hpp"
#include "srp/kernels.hpp"
#include "srp/linalg.hpp"
#include "srp/random.hpp"
#include "srp/rff.hpp"

namespace srp::cli {

namespace {

Matrix uniform_matrix(Index rows, Index cols, Rng& rng, double lo = -1.0, double hi = 1.0) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      m(i, j) = rng.uniform(lo, hi);
    }
  }
  return m;
}

Matrix symmetric_matrix(Index n, Rng& rng) {
  const Matrix a = uniform_matrix(n, n, rng);
  return 0.5 * (a + a.transpose());
}

std::vector<int> class_labels(Index n, int classes, Rng& rng) {
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    labels[static_cast<std::size_t>(i)] =
        i < classes ? static_cast<int>(i) : static_cast<int>(rng.index(static_cast<std::size_t>(classes)));
  }
  return labels;
}

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

CheckResult bound(std::string name, double worst, double limit, const std::string& what) {
  return {std::move(name), worst < limit, what + " " + sci(worst) + " (limit " + sci(limit) + ")"};
}

CheckResult claim1() {
  Rng rng(101);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Index d = 1 + static_cast<Index>(rng.index(10));
    const Index n = 2 + static_cast<Index>(rng.index(49));
    const int classes = std::min<int>(static_cast<int>(n), 2 + static_cast<int>(rng.index(3)));
    worst = std::max(worst, claim1_check(uniform_matrix(d, n, rng), label_gram(class_labels(n, classes, rng))));
  }
  return bound("claim1_gram_equivalence", worst, 1e-8, "max discrepancy");
}

CheckResult pca_special_case() {
  Rng rng(102);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    const Index d = 2 + static_cast<Index>(rng.index(9));
    const Index n = d + 5 + static_cast<Index>(rng.index(40));
    const Index k = 1 + static_cast<Index>(rng.index(static_cast<std::size_t>(d)));
    const Matrix x = uniform_matrix(d, n, rng);
    const LinearModel model = fit_spca(x, Matrix::Identity(n, n), k);
    const Matrix xc = x.colwise() - x.rowwise().mean();
    const Eigen::SelfAdjointEigenSolver<Matrix> cov(xc * xc.transpose() / static_cast<double>(n - 1));
    const Matrix reference = cov.eigenvectors().rightCols(k);
    const Matrix residual = model.projector - reference * (reference.transpose() * model.projector);
    const double s = Eigen::JacobiSVD<Matrix>(residual).singularValues()(0);
    worst = std::max(worst, std::asin(std::min(1.0, s)));
  }
  return bound("pca_special_case", worst, 1e-8, "max principal angle");
}

CheckResult hsic_oracle() {
  Rng rng(103);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Index n = 2 + static_cast<Index>(rng.index(19));
    const Matrix k = symmetric_matrix(n, rng);
    const Matrix l = symmetric_matrix(n, rng);
    const Matrix h = Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
    const double literal = (k * h * l * h).trace() / static_cast<double>((n - 1) * (n - 1));
    worst = std::max(worst, std::abs(hsic_empirical(k, l) - literal) / std::max(1.0, std::abs(literal)));
  }
  worst = std::max(worst, std::abs(hsic_empirical(Matrix::Ones(5, 5), Matrix::Identity(5, 5))));
  worst = std::max(worst, std::abs(hsic_empirical(Matrix::Identity(3, 3), Matrix::Identity(3, 3)) - 0.5) / 0.5);
  return bound("hsic_oracle", worst, 1e-12, "max relative error");
}

CheckResult eigensolver_residual() {
  Rng rng(104);
  double worst = 0.0;
  for (const Index n : {1, 2, 3, 8, 30, 100, 128, 129, 200}) {
    const Matrix a = symmetric_matrix(n, rng);
    const EigPair eig = sym_eig_topk(a, n);
    worst = std::max(worst, eig_residual(a, eig) / std::max(1e-300, a.norm()));
  }
  return bound("eigensolver_residual", worst, 1e-10, "max ||AV - VL||/||A||");
}

CheckResult constraint_residuals() {
  Rng rng(105);
  double worst_spca = 0.0;
  double worst_kspca = 0.0;
  for (int t = 0; t < 10; ++t) {
    const Index d = 2 + static_cast<Index>(rng.index(8));
    const Index n = 10 + static_cast<Index>(rng.index(60));
    const Matrix x = uniform_matrix(d, n, rng, 0.0, 1.0);
    const Matrix l = label_gram(class_labels(n, 2, rng));
    const Index k = std::min<Index>(d, 2);
    worst_spca = std::max(worst_spca, fit_spca(x, l, k).orthonormality_residual);
    const double sigma = 0.2 + rng.uniform();
    worst_kspca = std::max(worst_kspca, fit_kspca(x, KernelSpec::rbf(sigma), l, k).constraint_residual);
  }
  const double worst = std::max(worst_spca, worst_kspca);
  return {"constraint_residuals", worst < 1e-6,
          "SPCA ||U'U - I|| " + sci(worst_spca) + ", KSPCA ||b'Kb - I|| " + sci(worst_kspca) + " (limit 1e-06)"};
}

CheckResult rff_moments() {
  const double sigma = 0.5;
  const FeatureMap map = sample_map(sigma, 10, 1000, 106);
  const double mean = map.frequencies.mean();
  const double var = (map.frequencies.array() - mean).square().sum() / (map.frequencies.size() - 1.0);
  const double target = 1.0 / (sigma * sigma);
  const bool ok = std::abs(mean) < 4.0 / (sigma * 100.0) && std::abs(var - target) < 0.1 * target;
  return {"rff_frequency_moments", ok, "mean " + sci(mean) + ", variance " + sci(var) + " (target " + sci(target) + ")"};
}

CheckResult rff_sweep() {
  Rng rng(107);
  const Matrix a = uniform_matrix(5, 100, rng, 0.0, 1.0);
  const Matrix b = uniform_matrix(5, 100, rng, 0.0, 1.0);
  const Matrix exact = gram(KernelSpec::rbf(1.0), a, b).diagonal();
  auto error_at = [&](Index features) {
    double total = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const FeatureMap map = sample_map(1.0, 5, features, 7000 + s);
      const Matrix pa = apply_map(map, a);
      const Matrix pb = apply_map(map, b);
      total += ((pa.array() * pb.array()).colwise().sum().transpose() - exact.array()).abs().sum();
    }
    return total / (20.0 * 100.0);
  };
  std::ostringstream detail;
  bool monotone = true;
  double previous = std::numeric_limits<double>::infinity();
  for (const Index features : {50, 200, 800, 3200}) {
    const double e = error_at(features);
    detail << "D=" << features << ": " << sci(e) << "  ";
    monotone = monotone && e <= previous;
    previous = e;
  }
  const double at2000 = error_at(2000);
  detail << "D=2000: " << sci(at2000);
  return {"rff_convergence_sweep", monotone && at2000 < 0.05, detail.str()};
}

CheckResult xor_parity() {
  const LabeledDataset ds = gen_xor(500, 8, 108);
  BenchConfig config;
  config.methods = {Method::spca, Method::srp, Method::kspca, Method::ksrp};
  config.ks = {2};
  config.repeats = 10;
  config.seed = 109;
  const BenchReport report = run_benchmark(ds, config);
  const double spca = report.find(Method::spca, 2)->accuracy_mean;
  const double srp = report.find(Method::srp, 2)->accuracy_mean;
  const double kspca = report.find(Method::kspca, 2)->accuracy_mean;
  const double ksrp = report.find(Method::ksrp, 2)->accuracy_mean;
  const bool ok = std::abs(spca - srp) <= 0.1 && std::abs(kspca - ksrp) <= 0.1;
  std::ostringstream detail;
  detail.precision(3);
  detail << "1-NN spca " << spca << " srp " << srp << " kspca " << kspca << " ksrp " << ksrp;
  return {"xor_parity", ok, detail.str()};
}

}  // namespace

std::vector<CheckResult> run_checks(CheckLevel level) {
  using Check = std::pair<const char*, std::function<CheckResult()>>;
  std::vector<Check> checks = {
      {"claim1_gram_equivalence", claim1},
      {"pca_special_case", pca_special_case},
      {"hsic_oracle", hsic_oracle},
      {"eigensolver_residual", eigensolver_residual},
      {"constraint_residuals", constraint_residuals},
      {"rff_frequency_moments", rff_moments},
  };
  if (level == CheckLevel::full) {
    checks.emplace_back("rff_convergence_sweep", rff_sweep);
    checks.emplace_back("xor_parity", xor_parity);
  }
  std::vector<CheckResult> results;
  for (const auto& [name, check] : checks) {
    try {
      results.push_back(check());
    } catch (const std::exception& e) {
      results.push_back({name, false, std::string("threw: ") + e.what()});
    }
  }
  return results;
}

}  // namespace srp::cli
