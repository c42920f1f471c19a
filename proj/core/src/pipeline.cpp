#include "srp/pipeline.hpp"

#include <chrono>

#include "srp/error.hpp"
#include "srp/random.hpp"

namespace srp {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point since) {
  const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count();
  return ns > 0 ? ns : 1;
}

}  // namespace

std::string infeasibility(Method method, Index k, Index d, Index n) {
  if (k < 1) {
    return "k must be >= 1";
  }
  if (n < 2) {
    return "need at least two training samples";
  }
  switch (method) {
    case Method::pca:
    case Method::spca:
    case Method::srp:
      if (k > d) {
        return "k exceeds d (k=" + std::to_string(k) + ", d=" + std::to_string(d) + ")";
      }
      break;
    case Method::kspca:
    case Method::ksrp:
      if (k > n) {
        return "k exceeds n (k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")";
      }
      break;
  }
  return {};
}

FitOutcome fit_method(Method method, const Matrix& x, std::span<const int> labels, Index k,
                      const MethodParams& params) {
  if (static_cast<Index>(labels.size()) != x.cols()) {
    throw ContractError("fit_method: label count does not match sample count");
  }
  if (const std::string reason = infeasibility(method, k, x.rows(), x.cols()); !reason.empty()) {
    throw ContractError(std::string(to_string(method)) + ": " + reason);
  }
  const std::uint64_t label_seed = derive_seed(params.seed, 1);
  const std::uint64_t data_seed = derive_seed(params.seed, 2);

  FitOutcome out;
  auto start = Clock::now();
  switch (method) {
    case Method::pca: {
      out.construct_ns = 1;
      out.model = fit_pca(x, k);
      out.solve_ns = elapsed_ns(start);
      break;
    }
    case Method::spca: {
      const Matrix l = label_gram(labels);
      out.construct_ns = elapsed_ns(start);
      start = Clock::now();
      out.model = fit_spca(x, l, k);
      out.solve_ns = elapsed_ns(start);
      break;
    }
    case Method::kspca: {
      const Matrix l = label_gram(labels);
      const KernelSpec kernel = KernelSpec::rbf(params.sigma_x);
      const Matrix k_x = gram(kernel, x);
      out.construct_ns = elapsed_ns(start);
      start = Clock::now();
      out.model = fit_kspca(x, kernel, k_x, l, k);
      out.solve_ns = elapsed_ns(start);
      break;
    }
    case Method::srp: {
      const Matrix psi_y = label_factor(labels, k, params.psi_backend, params.sigma_y, label_seed);
      out.construct_ns = elapsed_ns(start);
      start = Clock::now();
      out.model = fit_srp(x, psi_y);
      out.solve_ns = elapsed_ns(start);
      break;
    }
    case Method::ksrp: {
      const Matrix psi_y = label_factor(labels, k, params.psi_backend, params.sigma_y, label_seed);
      KsrpDataBackend backend = KernelSpec::rbf(params.sigma_x);
      if (!params.ksrp_exact_kernel) {
        backend = sample_map(params.sigma_x, x.rows(), params.kx, data_seed);
      }
      out.construct_ns = elapsed_ns(start);
      // evaluating K or Psi_X happens inside fit_ksrp and is charged to the solve phase
      start = Clock::now();
      out.model = fit_ksrp(x, backend, psi_y);
      out.solve_ns = elapsed_ns(start);
      break;
    }
  }
  return out;
}

}  // namespace srp
