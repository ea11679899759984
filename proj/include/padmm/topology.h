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

#ifndef PADMM_TOPOLOGY_H_
#define PADMM_TOPOLOGY_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace padmm {

using Edge = std::pair<int, int>;

// Undirected, loop-free, connected communication graph.
class Graph {
 public:
  // Throws std::invalid_argument on self-loops, out-of-range endpoints or a
  // disconnected result. Duplicate edges are merged. n = 1 is allowed and
  // has no edges.
  static Graph FromEdges(int n, std::span<const Edge> edges);
  static Graph Ring(int n);      // n >= 3
  static Graph Complete(int n);  // n >= 2

  // Erdos-Renyi G(n, p), redrawn up to 100 times until connected; after that
  // a random spanning tree is overlaid on the last draw.
  static Graph RandomConnected(int n, double edge_prob, std::uint64_t seed);

  int size() const { return static_cast<int>(adjacency_.size()); }
  // Sorted ascending. Throws std::out_of_range for a bad id.
  const std::vector<int>& Neighbors(int i) const;
  int Degree(int i) const { return static_cast<int>(Neighbors(i).size()); }
  std::vector<int> Degrees() const;
  // Each edge once with first < second, sorted.
  std::vector<Edge> Edges() const;
  int num_edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  explicit Graph(std::vector<std::vector<int>> adjacency)
      : adjacency_(std::move(adjacency)) {}

  std::vector<std::vector<int>> adjacency_;
};

bool IsConnected(int n, std::span<const Edge> edges);

}  // namespace padmm

#endif  // PADMM_TOPOLOGY_H_
