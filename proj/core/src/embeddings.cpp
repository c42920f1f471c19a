#include "srp/embeddings.hpp"

#include <Eigen/Cholesky>

#include <string>

#include "srp/error.hpp"
#include "srp/linalg.hpp"

namespace srp {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::pca:
      return "pca";
    case Method::spca:
      return "spca";
    case Method::kspca:
      return "kspca";
    case Method::srp:
      return "srp";
    case Method::ksrp:
      return "ksrp";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::pca, Method::spca, Method::kspca, Method::srp, Method::ksrp}) {
    if (name == to_string(m)) {
      return m;
    }
  }
  throw ContractError("unknown method '" + std::string(name) + "'");
}

bool is_kernel_method(Method method) { return method == Method::kspca || method == Method::ksrp; }

namespace {

void require_label_gram(const Matrix& x, const Matrix& l, std::string_view what) {
  if (l.rows() != x.cols() || l.cols() != x.cols()) {
    throw ContractError(std::string(what) + ": label Gram must be " + std::to_string(x.cols()) + "x" +
                        std::to_string(x.cols()));
  }
  require_finite(l, what);
  if (relative_asymmetry(l) > 1e-8) {
    throw ContractError(std::string(what) + ": label Gram is not symmetric");
  }
}

void require_factor(const Matrix& x, const Matrix& psi_y, std::string_view what) {
  if (psi_y.cols() != x.cols()) {
    throw ContractError(std::string(what) + ": label factor has " + std::to_string(psi_y.cols()) +
                        " columns, data has " + std::to_string(x.cols()) + " samples");
  }
  if (psi_y.rows() < 1) {
    throw ContractError(std::string(what) + ": embedding dimension must be >= 1");
  }
}

LinearModel linear_from_q(Method method, const Matrix& x, const Matrix& q, Index k) {
  const EigPair eig = sym_eig_topk(q, k);
  LinearModel model;
  model.method = method;
  model.projector = eig.vectors;
  model.eigenvalues = eig.values;
  model.training_embedding = eig.vectors.transpose() * x;
  model.orthonormality_residual = orthonormality_residual(eig.vectors);
  return model;
}

void require_linear_k(const Matrix& x, Index k, std::string_view what) {
  if (x.cols() < 2) {
    throw ContractError(std::string(what) + ": need at least two samples");
  }
  if (k < 1) {
    throw ContractError(std::string(what) + ": k must be >= 1");
  }
  if (k > x.rows()) {
    throw ContractError(std::string(what) + ": k exceeds d (k=" + std::to_string(k) +
                        ", d=" + std::to_string(x.rows()) + ")");
  }
}

}  // namespace

LinearModel fit_spca(const Matrix& x, const Matrix& l, Index k) {
  require_linear_k(x, k, "fit_spca");
  require_finite(x, "fit_spca");
  require_label_gram(x, l, "fit_spca");
  const Matrix xc = center_columns(x);
  Matrix q = xc * l * xc.transpose();
  q = (0.5 * (q + q.transpose())).eval();
  return linear_from_q(Method::spca, x, q, k);
}

LinearModel fit_pca(const Matrix& x, Index k) {
  require_linear_k(x, k, "fit_pca");
  require_finite(x, "fit_pca");
  const Matrix xc = center_columns(x);
  Matrix q = xc * xc.transpose();
  q = (0.5 * (q + q.transpose())).eval();
  return linear_from_q(Method::pca, x, q, k);
}

KernelModel fit_kspca(const Matrix& x, const KernelSpec& kernel, const Matrix& l, Index k) {
  require_finite(x, "fit_kspca");
  return fit_kspca(x, kernel, gram(kernel, x), l, k);
}

KernelModel fit_kspca(const Matrix& x, const KernelSpec& kernel, const Matrix& gram_matrix, const Matrix& l,
                      Index k) {
  require_finite(x, "fit_kspca");
  if (gram_matrix.rows() != x.cols() || gram_matrix.cols() != x.cols()) {
    throw ContractError("fit_kspca: Gram matrix must be n x n");
  }
  require_label_gram(x, l, "fit_kspca");
  const Index n = x.cols();
  if (k < 1 || k > n) {
    throw ContractError("fit_kspca: k=" + std::to_string(k) + " outside [1, n=" + std::to_string(n) + "]");
  }

  Matrix ridged = gram_matrix;
  ridged.diagonal().array() += kKspcaRidge;
  const Eigen::LLT<Matrix> chol(ridged);
  if (chol.info() != Eigen::Success) {
    throw NumericalError("fit_kspca: kernel matrix is singular beyond ridge repair");
  }
  const Matrix upper = chol.matrixU();  // ridged = upper^T upper

  // S = C H L H C^T with C = upper; C H is C with its rows centered.
  const Matrix ch = center_columns(upper);
  Matrix s = ch * l * ch.transpose();
  s = (0.5 * (s + s.transpose())).eval();
  const EigPair eig = sym_eig_topk(s, k);

  KernelModel model;
  model.method = Method::kspca;
  model.backend = KernelModel::Backend::exact;
  model.coefficients = chol.matrixU().solve(eig.vectors);
  model.train_inputs = x;
  model.kernel = kernel;
  model.training_embedding = model.coefficients.transpose() * gram_matrix;
  model.constraint_residual =
      (model.coefficients.transpose() * ridged * model.coefficients - Matrix::Identity(k, k)).norm();
  return model;
}

LinearModel fit_srp(const Matrix& x, const Matrix& psi_y) {
  require_factor(x, psi_y, "fit_srp");
  require_finite(x, "fit_srp");
  LinearModel model;
  model.method = Method::srp;
  model.projector = center_columns(x) * psi_y.transpose();
  model.training_embedding = model.projector.transpose() * x;
  return model;
}

KernelModel fit_ksrp(const Matrix& x, const KsrpDataBackend& data_backend, const Matrix& psi_y) {
  require_factor(x, psi_y, "fit_ksrp");
  require_finite(x, "fit_ksrp");
  const Matrix psi_h_t = center_columns(psi_y).transpose();  // H Psi_Y^T, n x k

  KernelModel model;
  model.method = Method::ksrp;
  if (const auto* kernel = std::get_if<KernelSpec>(&data_backend)) {
    const Matrix gram_matrix = gram(*kernel, x);
    model.backend = KernelModel::Backend::exact;
    model.kernel = *kernel;
    model.train_inputs = x;
    model.coefficients = psi_h_t;
    model.training_embedding = psi_h_t.transpose() * gram_matrix;
  } else {
    const auto& map = std::get<FeatureMap>(data_backend);
    if (map.input_dim() != x.rows()) {
      throw ContractError("fit_ksrp: feature map expects " + std::to_string(map.input_dim()) +
                          "-dimensional inputs, data has " + std::to_string(x.rows()));
    }
    const Matrix psi_x = apply_map(map, x);
    model.backend = KernelModel::Backend::random_features;
    model.kernel = KernelSpec::rbf(map.sigma);
    model.feature_map = map;
    model.coefficients = psi_x * psi_h_t;  // Psi_X H Psi_Y^T, D x k
    model.training_embedding = model.coefficients.transpose() * psi_x;
  }
  return model;
}

Matrix transform(const LinearModel& model, const Matrix& x_new) {
  if (x_new.rows() != model.projector.rows()) {
    throw ContractError("transform: input has " + std::to_string(x_new.rows()) + " dimensions, model expects " +
                        std::to_string(model.projector.rows()));
  }
  return model.projector.transpose() * x_new;
}

Matrix transform(const KernelModel& model, const Matrix& x_new) {
  if (model.backend == KernelModel::Backend::random_features) {
    if (!model.feature_map) {
      throw ContractError("transform: random-feature model without a feature map");
    }
    if (x_new.rows() != model.feature_map->input_dim()) {
      throw ContractError("transform: input has " + std::to_string(x_new.rows()) + " dimensions, model expects " +
                          std::to_string(model.feature_map->input_dim()));
    }
    return model.coefficients.transpose() * apply_map(*model.feature_map, x_new);
  }
  if (x_new.rows() != model.train_inputs.rows()) {
    throw ContractError("transform: input has " + std::to_string(x_new.rows()) + " dimensions, model expects " +
                        std::to_string(model.train_inputs.rows()));
  }
  return model.coefficients.transpose() * gram(model.kernel, model.train_inputs, x_new);
}

Matrix transform(const EmbeddingModel& model, const Matrix& x_new) {
  return std::visit([&](const auto& m) { return transform(m, x_new); }, model);
}

const Matrix& training_embedding(const EmbeddingModel& model) {
  return std::visit([](const auto& m) -> const Matrix& { return m.training_embedding; }, model);
}

Matrix label_factor(std::span<const int> labels, Index k, LabelFactorBackend backend, double sigma_y,
                    std::uint64_t seed) {
  const Index n = static_cast<Index>(labels.size());
  if (k < 1) {
    throw ContractError("label_factor: k must be >= 1");
  }
  if (backend == LabelFactorBackend::exact) {
    if (k > n) {
      throw ContractError("label_factor: exact factor needs k <= n");
    }
    return psd_factor(label_gram(labels), k);
  }
  const FeatureMap map = sample_map(sigma_y, 1, k, seed);
  return apply_map(map, labels_as_matrix(labels));
}

double claim1_check(const Matrix& x, const Matrix& l) {
  const Index n = x.cols();
  const Index d = x.rows();
  const Matrix psi = psd_factor(l, n);
  const LinearModel spca = fit_spca(x, l, d);
  const Index rank = numerical_rank(spca.eigenvalues);

  const Matrix z2 = psi * center_columns(x).transpose() * x;
  const Matrix g2 = z2.transpose() * z2;
  if (rank == 0) {
    return g2.norm();
  }
  const Matrix z1 = spca.projector.leftCols(rank).transpose() * x;
  const Matrix g1 = z1.transpose() * spca.eigenvalues.head(rank).asDiagonal() * z1;
  const double denom = g1.norm();
  return denom > 0.0 ? (g2 - g1).norm() / denom : (g2 - g1).norm();
}

}  // namespace srp
