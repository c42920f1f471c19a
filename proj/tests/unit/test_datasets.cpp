#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include "srp/datasets.hpp"
#include "srp/error.hpp"

namespace srp {
namespace {

namespace fs = std::filesystem;

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    path_ = fs::temp_directory_path() /
            ("srp_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             std::to_string(counter_++) + ".csv");
    std::ofstream(path_) << contents;
  }
  ~TempFile() { fs::remove(path_); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

TEST(GenXor, ShapeAndClusters) {
  const LabeledDataset ds = gen_xor(500, 8, 1);
  EXPECT_EQ(ds.dim(), 10);
  EXPECT_EQ(ds.size(), 500);
  EXPECT_EQ(ds.num_classes(), 2u);
  EXPECT_EQ(ds.class_counts(), (std::vector<std::size_t>{250, 250}));
  int per_cluster[4] = {0, 0, 0, 0};
  for (Index j = 0; j < ds.size(); ++j) {
    const int quadrant = (ds.x(0, j) > 0 ? 0 : 1) + (ds.x(1, j) > 0 ? 0 : 2);
    ++per_cluster[quadrant];
  }
  for (const int count : per_cluster) {
    EXPECT_NEAR(count, 125, 5);  // a few points cross an axis at std 0.25
  }
  EXPECT_GE(ds.x.bottomRows(8).minCoeff(), 0.0);
  EXPECT_LT(ds.x.bottomRows(8).maxCoeff(), 1.0);
}

TEST(GenXor, OppositeCornersShareClass) {
  const LabeledDataset ds = gen_xor(400, 0, 2);
  for (Index j = 0; j < ds.size(); ++j) {
    const bool same_sign = (ds.x(0, j) > 0) == (ds.x(1, j) > 0);
    if (std::abs(ds.x(0, j)) > 0.3 && std::abs(ds.x(1, j)) > 0.3) {
      EXPECT_EQ(ds.labels[static_cast<std::size_t>(j)], same_sign ? 0 : 1);
    }
  }
}

TEST(GenXor, NoNoiseAndDeterminism) {
  EXPECT_EQ(gen_xor(40, 0, 3).dim(), 2);
  EXPECT_EQ(gen_xor(40, 3, 3).x, gen_xor(40, 3, 3).x);
  EXPECT_NE(gen_xor(40, 3, 3).x, gen_xor(40, 3, 4).x);
  EXPECT_THROW(gen_xor(3, 0, 1), ContractError);
}

TEST(GenSpirals, ShapeAndDeterminism) {
  const LabeledDataset ds = gen_spirals(500, 8, 1);
  EXPECT_EQ(ds.dim(), 10);
  EXPECT_EQ(ds.size(), 500);
  EXPECT_EQ(ds.class_counts(), (std::vector<std::size_t>{250, 250}));
  EXPECT_EQ(gen_spirals(51, 2, 9).x, gen_spirals(51, 2, 9).x);
  EXPECT_NE(gen_spirals(51, 2, 9).x, gen_spirals(51, 2, 10).x);
  EXPECT_EQ(gen_spirals(51, 0, 9).class_counts(), (std::vector<std::size_t>{26, 25}));
  EXPECT_THROW(gen_spirals(1, 0, 1), ContractError);
}

TEST(GenSpirals, InnerEndpointNeighborsShareArm) {
  const LabeledDataset ds = gen_spirals(500, 0, 5, SpiralParams{.jitter = 0.0});
  for (int arm = 0; arm < 2; ++arm) {
    // the inner endpoint is the first column of each arm
    const Index endpoint = arm == 0 ? 0 : 250;
    std::vector<std::pair<double, Index>> dist;
    for (Index j = 0; j < ds.size(); ++j) {
      if (j != endpoint) {
        dist.emplace_back((ds.x.col(j) - ds.x.col(endpoint)).norm(), j);
      }
    }
    std::partial_sort(dist.begin(), dist.begin() + 2, dist.end());
    EXPECT_EQ(ds.labels[static_cast<std::size_t>(dist[0].second)], arm);
    EXPECT_EQ(ds.labels[static_cast<std::size_t>(dist[1].second)], arm);
  }
}

TEST(GenSpirals, RadiusWithinUnitDisk) {
  const LabeledDataset ds = gen_spirals(200, 0, 6, SpiralParams{.jitter = 0.0});
  for (Index j = 0; j < ds.size(); ++j) {
    EXPECT_LE(ds.x.col(j).norm(), 1.0 + 1e-12);
  }
}

TEST(LoadCsv, SonarShape) {
  const LabeledDataset ds = load_csv(fs::path(SRP_DATA_DIR) / "sonar.csv", std::size_t{60});
  EXPECT_EQ(ds.dim(), 60);
  EXPECT_EQ(ds.size(), 208);
  EXPECT_EQ(ds.num_classes(), 2u);
}

TEST(LoadCsv, IonosphereShape) {
  const LabeledDataset ds = load_csv(fs::path(SRP_DATA_DIR) / "ionosphere.csv", std::size_t{34});
  EXPECT_EQ(ds.dim(), 34);
  EXPECT_EQ(ds.size(), 351);
  EXPECT_EQ(ds.num_classes(), 2u);
}

TEST(LoadCsv, HeaderAndLabelByName) {
  const TempFile file("a,b,class\n1,2,x\n3,4.5,y\n-1e-2,0,x\n");
  const LabeledDataset ds = load_csv(file.path(), std::string("class"));
  EXPECT_EQ(ds.dim(), 2);
  EXPECT_EQ(ds.size(), 3);
  EXPECT_EQ(ds.feature_names, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(ds.class_names, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(ds.labels, (std::vector<int>{0, 1, 0}));
  EXPECT_DOUBLE_EQ(ds.x(1, 1), 4.5);
  EXPECT_DOUBLE_EQ(ds.x(0, 2), -0.01);
}

TEST(LoadCsv, LabelInFirstColumnWithoutHeader) {
  const TempFile file("b,1,2\na,3,4\n");
  const LabeledDataset ds = load_csv(file.path(), std::size_t{0});
  EXPECT_EQ(ds.dim(), 2);
  EXPECT_EQ(ds.labels, (std::vector<int>{1, 0}));
  EXPECT_TRUE(ds.feature_names.empty());
}

TEST(LoadCsv, HeaderOnlyIsError) {
  const TempFile file("a,b,label\n");
  EXPECT_THROW(load_csv(file.path(), std::size_t{2}), DataError);
}

TEST(LoadCsv, StructuredErrors) {
  const TempFile ragged("1,2,x\n3,y\n");
  try {
    load_csv(ragged.path(), std::size_t{2});
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 2u);
  }
  const TempFile bad_cell("1,2,x\n3,abc,y\n");
  try {
    load_csv(bad_cell.path(), std::size_t{2});
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 2u);
    EXPECT_EQ(e.column(), 1u);
  }
  EXPECT_THROW(load_csv("/nonexistent/file.csv", std::size_t{0}), DataError);
  const TempFile empty("");
  EXPECT_THROW(load_csv(empty.path(), std::size_t{0}), DataError);
  const TempFile ok("1,2,x\n");
  EXPECT_THROW(load_csv(ok.path(), std::size_t{5}), ParseError);
  EXPECT_THROW(load_csv(ok.path(), std::string("label")), ParseError);
}

TEST(LoadCsv, RoundTripsThroughWriter) {
  const LabeledDataset ds = gen_xor(20, 1, 4);
  const fs::path path = fs::temp_directory_path() / "srp_test_roundtrip.csv";
  write_dataset_csv(ds, path);
  const LabeledDataset back = load_csv(path, std::string("label"));
  fs::remove(path);
  EXPECT_EQ(back.labels, ds.labels);
  EXPECT_LT((back.x - ds.x).cwiseAbs().maxCoeff(), 1e-15);
}

LabeledDataset one_feature(std::initializer_list<double> values) {
  LabeledDataset ds;
  ds.x.resize(1, static_cast<Index>(values.size()));
  Index j = 0;
  for (const double v : values) {
    ds.x(0, j++) = v;
    ds.labels.push_back(0);
  }
  ds.class_names = {"c"};
  return ds;
}

TEST(Normalize01, Examples) {
  const NormalizedPair out = normalize01(one_feature({0.0, 5.0, 10.0}), one_feature({12.0, -3.0, 2.5}));
  EXPECT_EQ(out.train.x, (Matrix(1, 3) << 0.0, 0.5, 1.0).finished());
  EXPECT_EQ(out.test.x, (Matrix(1, 3) << 1.0, 0.0, 0.25).finished());

  const NormalizedPair constant = normalize01(one_feature({3.0, 3.0}), one_feature({7.0}));
  EXPECT_EQ(constant.train.x, Matrix::Constant(1, 2, 0.5));
  EXPECT_EQ(constant.test.x, Matrix::Constant(1, 1, 0.5));
}

TEST(Normalize01, OutputsInUnitInterval) {
  const LabeledDataset a = gen_xor(100, 4, 7);
  const LabeledDataset b = gen_xor(60, 4, 8);
  const NormalizedPair out = normalize01(a, b);
  EXPECT_EQ(out.train.x.minCoeff(), 0.0);
  EXPECT_EQ(out.train.x.maxCoeff(), 1.0);
  EXPECT_GE(out.test.x.minCoeff(), 0.0);
  EXPECT_LE(out.test.x.maxCoeff(), 1.0);
}

TEST(Split, SonarSizes) {
  const LabeledDataset ds = load_csv(fs::path(SRP_DATA_DIR) / "sonar.csv", std::size_t{60});
  const TrainTestSplit s = split(ds, 0.7, 1);
  EXPECT_TRUE(s.train.size() == 145 || s.train.size() == 146) << s.train.size();
  EXPECT_EQ(s.train.size() + s.test.size(), 208);
}

TEST(Split, HalfOfTwoPerClass) {
  LabeledDataset ds = one_feature({0, 1, 2, 3});
  ds.labels = {0, 1, 0, 1};
  ds.class_names = {"a", "b"};
  const TrainTestSplit s = split(ds, 0.5, 3);
  EXPECT_EQ(s.train.class_counts(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(s.test.class_counts(), (std::vector<std::size_t>{1, 1}));
}

TEST(Split, DeterministicAndPreservesMultiset) {
  const LabeledDataset ds = gen_xor(101, 1, 9);
  const TrainTestSplit a = split(ds, 0.7, 5);
  const TrainTestSplit b = split(ds, 0.7, 5);
  EXPECT_EQ(a.train.x, b.train.x);
  EXPECT_EQ(a.test.labels, b.test.labels);
  EXPECT_NE(split(ds, 0.7, 6).train.x, a.train.x);
  std::vector<std::size_t> counts = a.train.class_counts();
  const std::vector<std::size_t> test_counts = a.test.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    counts[c] += test_counts[c];
  }
  EXPECT_EQ(counts, ds.class_counts());
}

TEST(Split, SingletonClassGoesToTrain) {
  LabeledDataset ds = one_feature({0, 1, 2, 3, 4});
  ds.labels = {0, 0, 1, 0, 0};
  ds.class_names = {"a", "b"};
  const TrainTestSplit s = split(ds, 0.5, 2);
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_EQ(s.train.class_counts()[1], 1u);
  EXPECT_THROW(split(ds, 1.0, 2), ContractError);
  EXPECT_THROW(split(ds, 0.0, 2), ContractError);
}

}  // namespace
}  // namespace srp
