// Copyright 2026 The padmm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "padmm/data.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "padmm/engine.h"
#include "padmm/metrics.h"

namespace padmm {
namespace {

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    path_ = std::filesystem::temp_directory_path() /
            ("padmm_data_test_" + std::to_string(counter_++) + "_" +
             std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             ".csv");
    std::ofstream(path_) << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

Dataset FromRows(const std::vector<std::vector<double>>& rows,
                 const std::vector<int>& labels) {
  Matrix x(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t k = 0; k < rows[i].size(); ++k) x(i, k) = rows[i][k];
  }
  Eigen::VectorXi y(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) y[i] = labels[i];
  return Dataset(std::move(x), std::move(y));
}

TEST(DatasetTest, ValidatesShapesAndLabels) {
  EXPECT_THROW(FromRows({{1.0}}, {0}), std::invalid_argument);
  EXPECT_THROW(Dataset(Matrix(2, 1), Eigen::VectorXi::Ones(3)),
               std::invalid_argument);
  EXPECT_THROW(Dataset(Matrix(0, 1), Eigen::VectorXi(0)),
               std::invalid_argument);
  EXPECT_TRUE(Dataset::Empty(3).empty());
  EXPECT_EQ(Dataset::Empty(3).dimension(), 3);
}

TEST(DatasetTest, SubsetReplaceAndConcatenate) {
  const Dataset d = FromRows({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, {1, -1, 1});
  const std::vector<int> idx = {2, 0};
  const Dataset s = d.Subset(idx);
  EXPECT_EQ(s.size(), 2);
  EXPECT_EQ(s.sample(0).features, d.sample(2).features);
  const Dataset r = d.WithReplaced(1, Sample{Vector::Constant(2, 9.0), 1});
  EXPECT_EQ(r.sample(1).label, 1);
  EXPECT_EQ(r.sample(1).features, Vector::Constant(2, 9.0));
  EXPECT_EQ(d.sample(1).label, -1);  // original untouched
  const std::vector<Dataset> parts = {s, r};
  EXPECT_EQ(Concatenate(parts).size(), 5);
  EXPECT_THROW(d.sample(3), std::out_of_range);
}

TEST(LoadCsvTest, MapsLabels) {
  TempFile f("age,income,hours\n30,>50K,40\n22,<=50K,20\n");
  const Dataset d = LoadCsv(f.path(), "income", ">50K");
  EXPECT_EQ(d.size(), 2);
  EXPECT_EQ(d.dimension(), 2);
  EXPECT_EQ(d.labels()[0], 1);
  EXPECT_EQ(d.labels()[1], -1);
  EXPECT_EQ(d.features()(1, 1), 20.0);
}

TEST(LoadCsvTest, WideFile) {
  std::string text;
  for (int k = 0; k < 41; ++k) text += "f" + std::to_string(k) + ",";
  text += "y\n";
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < 41; ++k) text += std::to_string(r + k) + ",";
    text += r % 2 ? "a\n" : "b\n";
  }
  TempFile f(text);
  EXPECT_EQ(LoadCsv(f.path(), "y", "a").dimension(), 41);
}

TEST(LoadCsvTest, RejectsThreeLabels) {
  TempFile f("x,y\n1,a\n2,b\n3,c\n");
  EXPECT_THROW(LoadCsv(f.path(), "y", "a"), std::runtime_error);
}

TEST(LoadCsvTest, BadCellNamesRowAndColumn) {
  TempFile f("x,z,y\n1,2,a\n3,oops,b\n");
  try {
    LoadCsv(f.path(), "y", "a");
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("row 3"), std::string::npos) << what;
    EXPECT_NE(what.find("'z'"), std::string::npos) << what;
  }
}

TEST(LoadCsvTest, MissingLabelColumnAndFile) {
  TempFile f("x,y\n1,a\n");
  EXPECT_THROW(LoadCsv(f.path(), "label", "a"), std::runtime_error);
  EXPECT_THROW(LoadCsv("/nonexistent/padmm.csv", "y", "a"),
               std::runtime_error);
}

TEST(PreprocessTest, MaxScaling) {
  const Dataset d = Preprocess(FromRows({{2.0}, {4.0}}, {1, -1}));
  EXPECT_DOUBLE_EQ(d.features()(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(d.features()(1, 0), 1.0);
}

TEST(PreprocessTest, ProjectsOntoUnitBall) {
  // After column scaling the first row is (1, 1, 1, 1) with norm 2.
  const Dataset d = Preprocess(FromRows(
      {{1.0, 1.0, 1.0, 1.0}, {0.15, 0.15, 0.15, 0.15}}, {1, -1}));
  EXPECT_NEAR(d.features().row(0).norm(), 1.0, 1e-15);
  EXPECT_NEAR(d.features()(0, 0), 0.5, 1e-15);
  // Norm 0.3 is inside the ball and stays.
  EXPECT_NEAR(d.features().row(1).norm(), 0.3, 1e-15);
}

TEST(PreprocessTest, ZeroColumnUntouched) {
  const Dataset d = Preprocess(FromRows({{0.0, 3.0}, {0.0, -1.5}}, {1, -1}));
  EXPECT_EQ(d.features()(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(d.features()(1, 1), -0.5);
}

TEST(PreprocessTest, TestScalingUsesTrainMaxima) {
  const Dataset train = FromRows({{2.0}, {4.0}}, {1, -1});
  const Dataset test = FromRows({{8.0}}, {1});
  const Dataset scaled = ApplyScaling(test, FitColumnScaling(train));
  EXPECT_DOUBLE_EQ(scaled.features()(0, 0), 1.0);  // 2.0, projected to 1
}

TEST(PartitionTest, BalancedSizes) {
  const Dataset d = SyntheticBlobs(10, 2, 5.0, 1);
  const auto parts = ApplyPartition(d, Partition(d, 3, 7));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].size(), 4);
  EXPECT_EQ(parts[1].size(), 3);
  EXPECT_EQ(parts[2].size(), 3);
}

TEST(PartitionTest, EqualSharesAtScale) {
  const Dataset d = SyntheticBlobs(35000, 2, 5.0, 1);
  for (const auto& p : ApplyPartition(d, Partition(d, 5, 7))) {
    EXPECT_EQ(p.size(), 7000);
  }
}

TEST(PartitionTest, DeterministicAndDisjoint) {
  const Dataset d = SyntheticBlobs(50, 2, 5.0, 1);
  const PartitionPlan a = Partition(d, 4, 9);
  EXPECT_EQ(a.assignment, Partition(d, 4, 9).assignment);
  EXPECT_NE(a.assignment, Partition(d, 4, 10).assignment);
  std::set<int> seen;
  for (const auto& block : a.Blocks()) {
    for (const int k : block) EXPECT_TRUE(seen.insert(k).second);
  }
  EXPECT_EQ(seen.size(), 50u);
  EXPECT_THROW(Partition(d, 0, 1), std::invalid_argument);
  EXPECT_THROW(Partition(d, 51, 1), std::invalid_argument);
}

TEST(TrainTestSplitTest, SizesAndDeterminism) {
  const Dataset d = SyntheticBlobs(100, 3, 5.0, 1);
  const auto [train, test] = TrainTestSplit(d, 0.2, 4);
  EXPECT_EQ(train.size(), 80);
  EXPECT_EQ(test.size(), 20);
  const auto [train2, test2] = TrainTestSplit(d, 0.2, 4);
  EXPECT_EQ(train.features(), train2.features());
  EXPECT_EQ(test.labels(), test2.labels());
  const auto [tiny_train, tiny_test] = TrainTestSplit(d, 0.001, 4);
  EXPECT_EQ(tiny_test.size(), 1);
  EXPECT_THROW(TrainTestSplit(d, 1.0, 4), std::invalid_argument);
}

TEST(SyntheticBlobsTest, MinimalCase) {
  const Dataset d = SyntheticBlobs(2, 1, 5.0, 3);
  EXPECT_EQ(d.size(), 2);
  EXPECT_EQ(d.labels()[0] + d.labels()[1], 0);
}

TEST(SyntheticBlobsTest, DeterministicAndInUnitBall) {
  const Dataset a = SyntheticBlobs(300, 4, 5.0, 3);
  const Dataset b = SyntheticBlobs(300, 4, 5.0, 3);
  EXPECT_EQ(a.features(), b.features());
  EXPECT_EQ(a.labels(), b.labels());
  for (int i = 0; i < a.size(); ++i) {
    EXPECT_LE(a.features().row(i).norm(), 1.0 + 1e-12);
  }
  EXPECT_NE(a.features(), SyntheticBlobs(300, 4, 5.0, 4).features());
}

TEST(SyntheticBlobsTest, SeparableEnoughForReference) {
  const Dataset d = SyntheticBlobs(100, 2, 5.0, 3);
  SolverConfig cfg;
  cfg.beta = 1e-6;
  const Vector theta = CentralizedReference(d, 0.01, 1, cfg);
  EXPECT_LT(ErrorRate(theta, d), 0.05);
}

}  // namespace
}  // namespace padmm
