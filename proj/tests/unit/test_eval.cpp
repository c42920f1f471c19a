#include <gtest/gtest.h>

#include <json.hpp>

#include <sstream>

#include "srp/datasets.hpp"
#include "srp/error.hpp"
#include "srp/eval.hpp"
#include "srp/pipeline.hpp"
#include "test_util.hpp"

namespace srp {
namespace {

using testing::random_labels;
using testing::random_matrix;
using testing::random_orthonormal;

TEST(OneNn, SelfMatchIsPerfect) {
  Rng rng(71);
  const Matrix z = random_matrix(3, 20, rng);
  const std::vector<int> y = random_labels(20, 4, rng);
  EXPECT_EQ(one_nn_accuracy(z, y, z, y), 1.0);
}

TEST(OneNn, TwoClusters) {
  const Matrix train = (Matrix(1, 4) << 0.0, 0.2, 10.0, 10.2).finished();
  const Matrix test = (Matrix(1, 2) << 0.1, 9.9).finished();
  const std::vector<int> y_train = {0, 0, 1, 1};
  const std::vector<int> y_test = {0, 1};
  EXPECT_EQ(one_nn_accuracy(train, y_train, test, y_test), 1.0);
}

TEST(OneNn, TieGoesToLowerIndex) {
  const Matrix train = (Matrix(1, 3) << -1.0, 1.0, 5.0).finished();
  const Matrix test = (Matrix(1, 1) << 0.0).finished();
  EXPECT_EQ(one_nn_predict(train, std::vector<int>{4, 7, 9}, test), std::vector<int>{4});
  EXPECT_EQ(one_nn_predict(train, std::vector<int>{7, 4, 9}, test), std::vector<int>{7});
}

TEST(OneNn, Errors) {
  const std::vector<int> none;
  const std::vector<int> one = {0};
  EXPECT_THROW(one_nn_accuracy(Matrix(2, 0), none, Matrix::Zero(2, 1), one), ContractError);
  EXPECT_THROW(one_nn_accuracy(Matrix::Zero(2, 1), one, Matrix::Zero(3, 1), one), ContractError);
  EXPECT_THROW(one_nn_loo_accuracy(Matrix::Zero(2, 1), one), ContractError);
}

TEST(OneNn, InvariantUnderRigidMotionAndScaling) {
  Rng rng(72);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix train = random_matrix(3, 25, rng);
    const Matrix test = random_matrix(3, 10, rng);
    const std::vector<int> y = random_labels(25, 3, rng);
    const std::vector<int> base = one_nn_predict(train, y, test);

    const Matrix q = random_orthonormal(3, 3, rng);
    const Vector t = random_matrix(3, 1, rng).col(0);
    EXPECT_EQ(one_nn_predict((q * train).colwise() + t, y, (q * test).colwise() + t), base);
    // powers of two keep every distance comparison exact
    EXPECT_EQ(one_nn_predict(4.0 * train, y, 4.0 * test), base);
    EXPECT_EQ(one_nn_predict(2.5 * train, y, 2.5 * test), base);
  }
}

TEST(OneNn, LeaveOneOut) {
  const Matrix z = (Matrix(1, 4) << 0.0, 0.1, 5.0, 5.1).finished();
  EXPECT_EQ(one_nn_loo_accuracy(z, std::vector<int>{0, 0, 1, 1}), 1.0);
  EXPECT_EQ(one_nn_loo_accuracy(z, std::vector<int>{0, 1, 0, 1}), 0.0);
}

TEST(Infeasibility, LinearAndKernelBounds) {
  EXPECT_TRUE(infeasibility(Method::spca, 10, 10, 50).empty());
  EXPECT_NE(infeasibility(Method::spca, 11, 10, 50).find("k exceeds d"), std::string::npos);
  EXPECT_FALSE(infeasibility(Method::srp, 11, 10, 50).empty());
  EXPECT_TRUE(infeasibility(Method::ksrp, 11, 10, 50).empty());
  EXPECT_FALSE(infeasibility(Method::kspca, 51, 10, 50).empty());
}

TEST(FitMethod, AllMethodsProduceEmbeddings) {
  const LabeledDataset ds = gen_xor(60, 3, 1);
  MethodParams params;
  params.sigma_x = 0.5;
  params.kx = 100;
  for (Method m : {Method::pca, Method::spca, Method::kspca, Method::srp, Method::ksrp}) {
    const FitOutcome out = fit_method(m, ds.x, ds.labels, 2, params);
    EXPECT_EQ(training_embedding(out.model).rows(), 2);
    EXPECT_EQ(training_embedding(out.model).cols(), 60);
    EXPECT_GT(out.fit_ns(), 0);
  }
  EXPECT_THROW(fit_method(Method::spca, ds.x, ds.labels, 6, params), ContractError);
}

TEST(RunBenchmark, ShapeContract) {
  const LabeledDataset ds = gen_xor(500, 8, 2);
  BenchConfig config;
  config.methods = {Method::spca, Method::srp};
  config.ks = {2};
  config.repeats = 5;
  config.seed = 3;
  const BenchReport report = run_benchmark(ds, config);
  EXPECT_EQ(report.rows.size(), 10u);
  EXPECT_EQ(report.aggregates.size(), 2u);
  EXPECT_EQ(report.n, 500);
  EXPECT_EQ(report.d, 10);
  for (const BenchRow& row : report.rows) {
    EXPECT_FALSE(row.skipped);
    EXPECT_GE(row.accuracy, 0.0);
    EXPECT_LE(row.accuracy, 1.0);
    EXPECT_GT(row.fit_ns, 0);
    EXPECT_GT(row.transform_ns, 0);
    EXPECT_FALSE(row.contended);
  }
  EXPECT_TRUE(report.sigma_x.empty());
}

TEST(RunBenchmark, InfeasibleCombinationsAreSkipped) {
  const LabeledDataset ds = gen_xor(40, 1, 4);
  BenchConfig config;
  config.methods = {Method::spca, Method::ksrp};
  config.ks = {2, 4};
  config.repeats = 2;
  config.sigma_x = 0.5;
  config.kx = 50;
  const BenchReport report = run_benchmark(ds, config);
  ASSERT_EQ(report.rows.size(), 8u);
  std::size_t skipped = 0;
  for (const BenchRow& row : report.rows) {
    if (row.skipped) {
      ++skipped;
      EXPECT_EQ(row.method, Method::spca);
      EXPECT_EQ(row.k, 4);
      EXPECT_FALSE(row.skip_reason.empty());
    }
  }
  EXPECT_EQ(skipped, 2u);
  EXPECT_EQ(report.find(Method::spca, 4)->runs, 0u);
  EXPECT_EQ(report.find(Method::spca, 4)->skipped, 2u);
}

TEST(RunBenchmark, DeterministicAccuracies) {
  const LabeledDataset ds = gen_spirals(120, 2, 5);
  BenchConfig config;
  config.methods = {Method::spca, Method::kspca, Method::srp, Method::ksrp};
  config.ks = {1, 2};
  config.repeats = 3;
  config.seed = 11;
  config.kx = 100;
  const BenchReport a = run_benchmark(ds, config);
  const BenchReport b = run_benchmark(ds, config);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].accuracy, b.rows[i].accuracy);
    EXPECT_EQ(a.rows[i].seed, b.rows[i].seed);
  }
  EXPECT_EQ(a.sigma_x, b.sigma_x);
  EXPECT_EQ(a.sigma_x.size(), 2u);

  config.parallel = true;
  config.threads = 3;
  const BenchReport c = run_benchmark(ds, config);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].accuracy, c.rows[i].accuracy);
    EXPECT_TRUE(c.rows[i].contended);
  }
}

TEST(RunBenchmark, SrpCloseToSpcaOnXor) {
  const LabeledDataset ds = gen_xor(500, 8, 6);
  BenchConfig config;
  config.methods = {Method::spca, Method::srp};
  config.ks = {2};
  config.repeats = 30;
  config.seed = 7;
  const BenchReport report = run_benchmark(ds, config);
  EXPECT_LE(std::abs(report.find(Method::spca, 2)->accuracy_mean - report.find(Method::srp, 2)->accuracy_mean), 0.1);
}

TEST(RunBenchmark, KsrpFasterThanKspcaAtThousand) {
  const LabeledDataset ds = gen_xor(1430, 8, 8);  // 70% train -> ~1000 samples
  BenchConfig config;
  config.methods = {Method::kspca, Method::ksrp};
  config.ks = {2};
  config.repeats = 2;
  config.sigma_x = 0.3;
  const BenchReport report = run_benchmark(ds, config);
  EXPECT_LT(report.find(Method::ksrp, 2)->fit_ns_mean, report.find(Method::kspca, 2)->fit_ns_mean);
}

TEST(Aggregate, MeanAndSampleStd) {
  BenchConfig config;
  config.methods = {Method::srp};
  config.ks = {3};
  std::vector<BenchRow> rows(3);
  const double acc[3] = {0.5, 0.7, 0.9};
  for (std::size_t i = 0; i < 3; ++i) {
    rows[i].method = Method::srp;
    rows[i].k = 3;
    rows[i].accuracy = acc[i];
    rows[i].fit_ns = 100 * static_cast<std::int64_t>(i + 1);
  }
  const std::vector<BenchAggregate> agg = aggregate_rows(rows, config);
  ASSERT_EQ(agg.size(), 1u);
  EXPECT_EQ(agg[0].runs, 3u);
  EXPECT_NEAR(agg[0].accuracy_mean, 0.7, 1e-15);
  EXPECT_NEAR(agg[0].accuracy_std, 0.2, 1e-15);
  EXPECT_NEAR(agg[0].fit_ns_mean, 200.0, 1e-12);
}

TEST(Report, CsvAndJsonSchemas) {
  const LabeledDataset ds = gen_xor(40, 1, 9);
  BenchConfig config;
  config.methods = {Method::srp, Method::kspca};
  config.ks = {1};
  config.repeats = 2;
  config.sigma_x = 0.4;
  const BenchReport report = run_benchmark(ds, config);

  std::ostringstream csv;
  write_report_csv(report, csv);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "method,k,repeat,seed,sigma_x,status,accuracy,fit_ns,construct_ns,solve_ns,transform_ns,residual,contended");
  std::size_t count = 0;
  for (std::string line; std::getline(lines, line);) {
    ++count;
  }
  EXPECT_EQ(count, 4u);

  std::ostringstream json;
  write_report_json(report, json);
  const nlohmann::json doc = nlohmann::json::parse(json.str());
  EXPECT_EQ(doc["n"], 40);
  EXPECT_EQ(doc["d"], 3);
  EXPECT_EQ(doc["aggregates"].size(), 2u);
  EXPECT_EQ(doc["config"]["repeats"], 2);
  EXPECT_DOUBLE_EQ(doc["sigma_x"]["kspca"].get<double>(), 0.4);
}

}  // namespace
}  // namespace srp
