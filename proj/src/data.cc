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
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "padmm/noise.h"

namespace padmm {
namespace {

// Stream ids for data-side randomness, disjoint from the per-agent noise
// streams (which are small integers).
constexpr std::uint64_t kPartitionStream = 0xD47A000000000001ULL;
constexpr std::uint64_t kSplitStream = 0xD47A000000000002ULL;
constexpr std::uint64_t kBlobStream = 0xD47A000000000003ULL;

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string Trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

// Fisher-Yates driven by the unbiased index sampler.
std::vector<int> Permutation(int n, RngStream& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.UniformIndex(i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

}  // namespace

Dataset::Dataset(Matrix features, Eigen::VectorXi labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
  if (features_.rows() == 0) {
    throw std::invalid_argument("Dataset: no samples");
  }
  if (features_.cols() == 0) {
    throw std::invalid_argument("Dataset: dimension must be positive");
  }
  if (labels_.size() != features_.rows()) {
    throw std::invalid_argument("Dataset: label count does not match rows");
  }
  for (int i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != 1 && labels_[i] != -1) {
      throw std::invalid_argument("Dataset: label at row " +
                                  std::to_string(i) + " is not -1 or +1");
    }
  }
}

Dataset Dataset::FromSamples(std::span<const Sample> samples) {
  if (samples.empty()) throw std::invalid_argument("Dataset: no samples");
  const auto d = samples.front().features.size();
  Matrix x(samples.size(), d);
  Eigen::VectorXi y(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].features.size() != d) {
      throw std::invalid_argument("Dataset: sample " + std::to_string(i) +
                                  " has a different dimension");
    }
    x.row(i) = samples[i].features.transpose();
    y[i] = samples[i].label;
  }
  return Dataset(std::move(x), std::move(y));
}

Dataset Dataset::Empty(int dimension) {
  if (dimension < 1) throw std::invalid_argument("Dataset: bad dimension");
  Dataset out;
  out.features_.resize(0, dimension);
  out.labels_.resize(0);
  return out;
}

Sample Dataset::sample(int i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("Dataset::sample");
  return Sample{features_.row(i).transpose(), labels_[i]};
}

Dataset Dataset::Subset(std::span<const int> indices) const {
  Matrix x(indices.size(), dimension());
  Eigen::VectorXi y(indices.size());
  for (size_t k = 0; k < indices.size(); ++k) {
    const int i = indices[k];
    if (i < 0 || i >= size()) throw std::out_of_range("Dataset::Subset");
    x.row(k) = features_.row(i);
    y[k] = labels_[i];
  }
  return Dataset(std::move(x), std::move(y));
}

Dataset Dataset::WithReplaced(int i, const Sample& s) const {
  if (i < 0 || i >= size()) throw std::out_of_range("Dataset::WithReplaced");
  if (s.features.size() != dimension()) {
    throw std::invalid_argument("Dataset::WithReplaced: dimension mismatch");
  }
  Matrix x = features_;
  Eigen::VectorXi y = labels_;
  x.row(i) = s.features.transpose();
  y[i] = s.label;
  return Dataset(std::move(x), std::move(y));
}

Dataset Concatenate(std::span<const Dataset> parts) {
  if (parts.empty()) throw std::invalid_argument("Concatenate: no parts");
  Eigen::Index rows = 0;
  for (const auto& p : parts) {
    if (p.dimension() != parts.front().dimension()) {
      throw std::invalid_argument("Concatenate: dimension mismatch");
    }
    rows += p.size();
  }
  Matrix x(rows, parts.front().dimension());
  Eigen::VectorXi y(rows);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    x.middleRows(at, p.size()) = p.features();
    y.segment(at, p.size()) = p.labels();
    at += p.size();
  }
  return Dataset(std::move(x), std::move(y));
}

Dataset LoadCsv(const std::filesystem::path& path,
                const std::string& label_column,
                const std::string& positive_value) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error(path.string() + ": empty file");
  }
  std::vector<std::string> header = SplitLine(line);
  for (auto& h : header) h = Trim(h);
  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end()) {
    throw std::runtime_error(path.string() + ": no column named '" +
                             label_column + "'");
  }
  const auto label_index =
      static_cast<size_t>(std::distance(header.begin(), label_it));
  const size_t d = header.size() - 1;
  if (d == 0) throw std::runtime_error(path.string() + ": no feature columns");

  std::vector<double> values;
  std::vector<std::string> raw_labels;
  std::map<std::string, int> distinct;
  int row = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const auto cells = SplitLine(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error(path.string() + ": row " + std::to_string(row) +
                               " has " + std::to_string(cells.size()) +
                               " cells, expected " +
                               std::to_string(header.size()));
    }
    for (size_t c = 0; c < cells.size(); ++c) {
      const std::string cell = Trim(cells[c]);
      if (c == label_index) {
        raw_labels.push_back(cell);
        distinct.emplace(cell, 0);
        continue;
      }
      double v = 0.0;
      const auto [end, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || end != cell.data() + cell.size() ||
          cell.empty() || !std::isfinite(v)) {
        throw std::runtime_error(path.string() + ": row " +
                                 std::to_string(row) + ", column '" +
                                 header[c] + "': cannot parse '" + cell +
                                 "' as a number");
      }
      values.push_back(v);
    }
  }
  if (raw_labels.empty()) {
    throw std::runtime_error(path.string() + ": no data rows");
  }
  if (distinct.size() > 2) {
    throw std::runtime_error(path.string() + ": label column '" +
                             label_column + "' has " +
                             std::to_string(distinct.size()) +
                             " distinct values, expected 2");
  }

  const auto n = static_cast<Eigen::Index>(raw_labels.size());
  Matrix x = Eigen::Map<Matrix>(values.data(), n, static_cast<Eigen::Index>(d));
  Eigen::VectorXi y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y[i] = raw_labels[i] == positive_value ? 1 : -1;
  }
  return Dataset(std::move(x), std::move(y));
}

ColumnScaling FitColumnScaling(const Dataset& raw) {
  ColumnScaling s;
  s.divisors = raw.features().cwiseAbs().colwise().maxCoeff().transpose();
  for (auto& v : s.divisors) {
    if (v == 0.0) v = 1.0;
  }
  return s;
}

Dataset ApplyScaling(const Dataset& raw, const ColumnScaling& scaling) {
  if (scaling.divisors.size() != raw.dimension()) {
    throw std::invalid_argument("ApplyScaling: dimension mismatch");
  }
  Matrix x = raw.features();
  for (Eigen::Index j = 0; j < x.cols(); ++j) x.col(j) /= scaling.divisors[j];
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double norm = x.row(i).norm();
    if (norm > 1.0) x.row(i) /= norm;
  }
  return Dataset(std::move(x), raw.labels());
}

Dataset Preprocess(const Dataset& raw) {
  return ApplyScaling(raw, FitColumnScaling(raw));
}

std::vector<std::vector<int>> PartitionPlan::Blocks() const {
  std::vector<std::vector<int>> blocks(num_agents);
  for (size_t k = 0; k < assignment.size(); ++k) {
    blocks[assignment[k]].push_back(static_cast<int>(k));
  }
  return blocks;
}

PartitionPlan Partition(const Dataset& data, int num_agents,
                        std::uint64_t seed) {
  const int n = data.size();
  if (num_agents < 1 || num_agents > n) {
    throw std::invalid_argument("Partition: need 1 <= agents <= " +
                                std::to_string(n) + ", got " +
                                std::to_string(num_agents));
  }
  RngStream rng(seed, kPartitionStream);
  const std::vector<int> perm = Permutation(n, rng);

  PartitionPlan plan{num_agents, seed, std::vector<int>(n, 0)};
  const int base = n / num_agents;
  const int extra = n % num_agents;
  int at = 0;
  for (int a = 0; a < num_agents; ++a) {
    const int len = base + (a < extra ? 1 : 0);
    for (int k = 0; k < len; ++k) plan.assignment[perm[at++]] = a;
  }
  return plan;
}

std::vector<Dataset> ApplyPartition(const Dataset& data,
                                    const PartitionPlan& plan) {
  if (static_cast<int>(plan.assignment.size()) != data.size()) {
    throw std::invalid_argument("ApplyPartition: plan size mismatch");
  }
  std::vector<Dataset> parts;
  for (const auto& block : plan.Blocks()) parts.push_back(data.Subset(block));
  return parts;
}

std::pair<Dataset, Dataset> TrainTestSplit(const Dataset& data,
                                           double test_fraction,
                                           std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("TrainTestSplit: fraction must be in (0, 1)");
  }
  const int n = data.size();
  if (n < 2) throw std::invalid_argument("TrainTestSplit: need >= 2 samples");
  int n_test = static_cast<int>(std::lround(test_fraction * n));
  n_test = std::clamp(n_test, 1, n - 1);

  RngStream rng(seed, kSplitStream);
  std::vector<int> perm = Permutation(n, rng);
  std::vector<int> test(perm.begin(), perm.begin() + n_test);
  std::vector<int> train(perm.begin() + n_test, perm.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  return {data.Subset(train), data.Subset(test)};
}

Dataset SyntheticBlobs(int n, int d, double separation, std::uint64_t seed) {
  if (n < 2 || d < 1) {
    throw std::invalid_argument("SyntheticBlobs: need n >= 2 and d >= 1");
  }
  RngStream rng(seed, kBlobStream);
  const Vector direction = Vector::Ones(d) / std::sqrt(static_cast<double>(d));
  Matrix x(n, d);
  Eigen::VectorXi y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = (i % 2 == 0) ? 1 : -1;
    for (int j = 0; j < d; ++j) x(i, j) = rng.StandardNormal();
    x.row(i) += (0.5 * separation * y[i]) * direction.transpose();
  }
  return Preprocess(Dataset(std::move(x), std::move(y)));
}

}  // namespace padmm
