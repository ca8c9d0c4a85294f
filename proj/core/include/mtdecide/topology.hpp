// Copyright 2026 The mtdecide Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mtdecide/agent_matrix.hpp"

namespace mtdecide {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

double distance(Point2 a, Point2 b);

/// Raised when no connected graph honouring the degree cap could be built.
class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undirected communication graph with self-loops. Neighborhoods are closed
/// (agent k is a member of its own neighborhood) and sorted ascending, so the
/// neighborhood size n_k counts k itself.
class Topology {
 public:
  Topology() = default;

  /// Builds from an undirected edge list (self-loops are added implicitly;
  /// duplicate and reversed edges are merged).
  Topology(std::vector<Point2> positions,
           std::span<const std::pair<AgentId, AgentId>> edges);

  std::size_t size() const { return neighbors_.size(); }

  std::span<const AgentId> neighbors(AgentId k) const { return neighbors_[k]; }
  std::size_t degree(AgentId k) const { return neighbors_[k].size(); }
  std::size_t max_degree() const;

  bool linked(AgentId a, AgentId b) const;

  const std::vector<Point2>& positions() const { return positions_; }

  /// Links with a < b, in lexicographic order.
  std::vector<std::pair<AgentId, AgentId>> edges() const;

  /// Dense 0/1 adjacency, entry (l, k) at l * N + k, with unit diagonal.
  std::vector<std::uint8_t> dense_adjacency() const;

  bool operator==(const Topology&) const = default;

 private:
  std::vector<Point2> positions_;
  std::vector<std::vector<AgentId>> neighbors_;
};

bool is_connected(const Topology& topology);

/// Hop distance from `source`; -1 for unreachable agents.
std::vector<int> bfs_depths(const Topology& topology, AgentId source);

struct TopologyParams {
  std::size_t n_agents = 80;
  /// Cap on the closed neighborhood size n_k.
  std::size_t max_degree = 7;
  /// Link distance on the unit square.
  double radius = 0.18;
  std::size_t max_attempts = 200;
};

/// Random geometric graph on the unit square, pruned so that no closed
/// neighborhood exceeds max_degree. Longest links are dropped first, never
/// disconnecting the graph. Throws TopologyError when the cap or the radius
/// make a connected graph unattainable within max_attempts placements.
Topology generate_topology(const TopologyParams& params, std::uint64_t seed);

/// Radius graph over the given positions with the degree cap enforced by
/// dropping each over-full agent's longest links (agents visited in index
/// order), skipping links whose removal would split a component. Only when
/// that cannot meet the cap are bridges dropped too, so the result may be
/// disconnected.
Topology rebuild_topology(std::span<const Point2> positions, double radius,
                          std::size_t max_degree);

}  // namespace mtdecide
