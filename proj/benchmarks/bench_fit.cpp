#include <benchmark/benchmark.h>

#include <map>
#include <utility>

#include "srp/datasets.hpp"
#include "srp/embeddings.hpp"
#include "srp/hsic.hpp"
#include "srp/kernels.hpp"
#include "srp/linalg.hpp"
#include "srp/pipeline.hpp"
#include "srp/rff.hpp"

namespace {

using srp::Index;
using srp::Matrix;
using srp::Method;

// Normalized XOR data (d = 10), cached per n.
const srp::LabeledDataset& xor_data(Index n) {
  static std::map<Index, srp::LabeledDataset> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const srp::LabeledDataset raw = srp::gen_xor(n, 8, 42);
    it = cache.emplace(n, srp::normalize01(raw, raw).train).first;
  }
  return it->second;
}

void fit(benchmark::State& state, Method method) {
  const srp::LabeledDataset& ds = xor_data(state.range(0));
  srp::MethodParams params;
  params.sigma_x = 0.5;
  params.ksrp_exact_kernel = state.range(1) != 0;
  for (auto _ : state) {
    srp::FitOutcome out = srp::fit_method(method, ds.x, ds.labels, 2, params);
    benchmark::DoNotOptimize(out);
  }
  state.SetComplexityN(state.range(0));
}

void BM_FitSpca(benchmark::State& state) { fit(state, Method::spca); }
void BM_FitSrp(benchmark::State& state) { fit(state, Method::srp); }
void BM_FitKspca(benchmark::State& state) { fit(state, Method::kspca); }
void BM_FitKsrp(benchmark::State& state) { fit(state, Method::ksrp); }

void linear_sizes(benchmark::internal::Benchmark* b) {
  for (const Index n : {250, 500, 1000, 2000}) {
    b->Args({n, 0});
  }
}

void BM_Transform(benchmark::State& state) {
  const srp::LabeledDataset& ds = xor_data(1000);
  srp::MethodParams params;
  params.sigma_x = 0.5;
  const auto method = static_cast<Method>(state.range(0));
  const srp::FitOutcome out = srp::fit_method(method, ds.x, ds.labels, 2, params);
  const Matrix probe = ds.x.leftCols(300);
  for (auto _ : state) {
    Matrix z = srp::transform(out.model, probe);
    benchmark::DoNotOptimize(z.data());
  }
  state.SetLabel(std::string(srp::to_string(method)));
}

void BM_Hsic(benchmark::State& state) {
  const srp::LabeledDataset& ds = xor_data(state.range(0));
  const Matrix k = srp::gram(srp::KernelSpec::rbf(0.5), ds.x);
  const Matrix l = srp::label_gram(ds.labels);
  for (auto _ : state) {
    benchmark::DoNotOptimize(srp::hsic_empirical(k, l));
  }
  state.SetComplexityN(state.range(0));
}

void BM_ApplyMap(benchmark::State& state) {
  const srp::LabeledDataset& ds = xor_data(1000);
  const srp::FeatureMap map = srp::sample_map(0.5, ds.dim(), state.range(0), 1);
  for (auto _ : state) {
    Matrix psi = srp::apply_map(map, ds.x);
    benchmark::DoNotOptimize(psi.data());
  }
}

void BM_SymEig(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix a = srp::gram(srp::KernelSpec::rbf(0.5), xor_data(n).x);
  for (auto _ : state) {
    srp::EigPair eig = srp::sym_eig_topk(a, 2);
    benchmark::DoNotOptimize(eig.values.data());
  }
  state.SetComplexityN(n);
}

}  // namespace

BENCHMARK(BM_FitSpca)->Apply(linear_sizes)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_FitSrp)->Apply(linear_sizes)->Unit(benchmark::kMicrosecond)->Complexity();
BENCHMARK(BM_FitKspca)->Args({250, 0})->Args({500, 0})->Args({1000, 0})->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_FitKsrp)
    ->Apply(linear_sizes)
    ->Args({1000, 1})
    ->ArgNames({"n", "exact_kernel"})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Transform)
    ->DenseRange(static_cast<int>(Method::pca), static_cast<int>(Method::ksrp))
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Hsic)->Arg(250)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMicrosecond)->Complexity();
BENCHMARK(BM_ApplyMap)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SymEig)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond)->Complexity();

BENCHMARK_MAIN();
