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

#ifndef PADMM_DATA_H_
#define PADMM_DATA_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace padmm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>;

// One labeled example. Labels are always -1 or +1.
struct Sample {
  Vector features;
  int label = 1;
};

// Row-major design matrix plus a label vector. Rows are samples.
//
// A dataset normally holds at least one sample; Dataset::Empty(d) builds a
// zero-row dataset that the model treats as contributing no loss term.
class Dataset {
 public:
  Dataset() = default;
  // Throws std::invalid_argument if shapes disagree, a label is not +/-1, or
  // there are no rows.
  Dataset(Matrix features, Eigen::VectorXi labels);
  static Dataset FromSamples(std::span<const Sample> samples);
  static Dataset Empty(int dimension);

  int size() const { return static_cast<int>(features_.rows()); }
  int dimension() const { return static_cast<int>(features_.cols()); }
  bool empty() const { return features_.rows() == 0; }

  const Matrix& features() const { return features_; }
  const Eigen::VectorXi& labels() const { return labels_; }
  Sample sample(int i) const;

  // Rows in `indices`, in that order.
  Dataset Subset(std::span<const int> indices) const;
  // Copy with row `i` replaced by `s`. Used for neighboring-dataset checks.
  Dataset WithReplaced(int i, const Sample& s) const;

 private:
  Matrix features_;
  Eigen::VectorXi labels_;
};

Dataset Concatenate(std::span<const Dataset> parts);

// Reads a headered comma-separated file. Every column except `label_column`
// must parse as a real number; the label column must contain exactly two
// distinct values, `positive_value` mapping to +1 and the other to -1.
// Throws std::runtime_error naming the row and column of any bad cell.
Dataset LoadCsv(const std::filesystem::path& path,
                const std::string& label_column,
                const std::string& positive_value);

// Per-column divisors (max absolute value, or 1 for all-zero columns).
struct ColumnScaling {
  Vector divisors;
};

ColumnScaling FitColumnScaling(const Dataset& raw);

// Divides each column by its divisor, then projects every sample with L2
// norm above 1 back onto the unit sphere.
Dataset ApplyScaling(const Dataset& raw, const ColumnScaling& scaling);

// FitColumnScaling followed by ApplyScaling on the same data.
Dataset Preprocess(const Dataset& raw);

struct PartitionPlan {
  int num_agents = 0;
  std::uint64_t seed = 0;
  // assignment[k] is the agent owning sample k.
  std::vector<int> assignment;

  // Sample indices of each agent, in permutation order.
  std::vector<std::vector<int>> Blocks() const;
};

// Seeded random permutation cut into `num_agents` contiguous blocks whose
// sizes differ by at most one (larger blocks first).
PartitionPlan Partition(const Dataset& data, int num_agents,
                        std::uint64_t seed);

std::vector<Dataset> ApplyPartition(const Dataset& data,
                                    const PartitionPlan& plan);

// Seeded split into (train, test); the test part has
// round(test_fraction * n) rows, clamped so both parts are nonempty.
std::pair<Dataset, Dataset> TrainTestSplit(const Dataset& data,
                                           double test_fraction,
                                           std::uint64_t seed);

// Two isotropic unit-variance Gaussian clusters with means at
// +/- separation/2 along the all-ones direction (scaled to unit length),
// labels alternating +1/-1, then preprocessed.
Dataset SyntheticBlobs(int n, int d, double separation, std::uint64_t seed);

}  // namespace padmm

#endif  // PADMM_DATA_H_
