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

#include "padmm/topology.h"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "padmm/noise.h"

namespace padmm {
namespace {

constexpr int kConnectivityRetries = 100;
constexpr std::uint64_t kTopologyStream = 0x70B0000000000001ULL;

std::vector<std::vector<int>> BuildAdjacency(int n,
                                             std::span<const Edge> edges) {
  std::vector<std::set<int>> sets(n);
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw std::invalid_argument("edge (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ") out of range");
    }
    if (a == b) {
      throw std::invalid_argument("self-loop at " + std::to_string(a));
    }
    sets[a].insert(b);
    sets[b].insert(a);
  }
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) adj[i].assign(sets[i].begin(), sets[i].end());
  return adj;
}

bool Connected(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (const int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n;
}

}  // namespace

bool IsConnected(int n, std::span<const Edge> edges) {
  return Connected(BuildAdjacency(n, edges));
}

Graph Graph::FromEdges(int n, std::span<const Edge> edges) {
  if (n < 1) throw std::invalid_argument("Graph: need at least one agent");
  auto adj = BuildAdjacency(n, edges);
  if (!Connected(adj)) throw std::invalid_argument("Graph: not connected");
  return Graph(std::move(adj));
}

Graph Graph::Ring(int n) {
  if (n < 3) throw std::invalid_argument("Ring: need n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return FromEdges(n, edges);
}

Graph Graph::Complete(int n) {
  if (n < 2) throw std::invalid_argument("Complete: need n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return FromEdges(n, edges);
}

Graph Graph::RandomConnected(int n, double edge_prob, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("RandomConnected: need n >= 2");
  if (!(edge_prob > 0.0 && edge_prob <= 1.0)) {
    throw std::invalid_argument("RandomConnected: edge_prob must be in (0, 1]");
  }
  RngStream rng(seed, kTopologyStream);
  std::vector<Edge> edges;
  for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
    edges.clear();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.Uniform() < edge_prob) edges.emplace_back(i, j);
      }
    }
    if (IsConnected(n, edges)) return FromEdges(n, edges);
  }
  // Random spanning tree: attach each vertex of a shuffled order to a
  // uniformly chosen earlier one.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng.UniformIndex(i + 1)]);
  }
  for (int k = 1; k < n; ++k) {
    edges.emplace_back(order[k], order[rng.UniformIndex(k)]);
  }
  return FromEdges(n, edges);
}

const std::vector<int>& Graph::Neighbors(int i) const {
  if (i < 0 || i >= size()) {
    throw std::out_of_range("Graph: agent " + std::to_string(i) +
                            " out of range");
  }
  return adjacency_[i];
}

std::vector<int> Graph::Degrees() const {
  std::vector<int> out;
  for (const auto& a : adjacency_) out.push_back(static_cast<int>(a.size()));
  return out;
}

std::vector<Edge> Graph::Edges() const {
  std::vector<Edge> out;
  for (int i = 0; i < size(); ++i) {
    for (const int j : adjacency_[i]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

int Graph::num_edges() const { return static_cast<int>(Edges().size()); }

}  // namespace padmm
