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
#include <vector>

#include "mtdecide/agent_matrix.hpp"
#include "mtdecide/topology.hpp"

namespace mtdecide {

/// Substitute motion law for mobile swarms: each agent heads for the 2-D
/// point given by its desired estimate, aligned with its neighbors and
/// pushed apart at short range. Distances are in body lengths.
struct MotionParams {
  double goal_gain = 0.6;
  double align_gain = 0.3;
  double repel_gain = 0.1;
  double max_speed = 1.0;
  double repel_radius = 1.0;
  double comm_radius = 4.0;
  /// Side of the square, centred on the origin, where agents start.
  double spawn_extent = 20.0;
  /// First iteration at which agents move. Until then the swarm holds its
  /// spawn positions so the decision can settle on a connected graph;
  /// agents heading for different estimates would otherwise drift out of
  /// range of each other before disagreeing.
  std::size_t start_iteration = 800;
  bool operator==(const MotionParams&) const = default;
};

struct MotionState {
  std::vector<Point2> positions;
  std::vector<Point2> velocities;
  bool operator==(const MotionState&) const = default;
};

/// Uniform start positions in the spawn square (side `extent`, centred on
/// the origin), zero velocity. Placements are redrawn until the capped radius
/// graph is connected; throws TopologyError after max_attempts.
MotionState spawn_swarm(std::size_t n_agents, double extent, double comm_radius,
                        std::size_t max_degree, std::uint64_t seed,
                        std::size_t max_attempts = 1000);

/// One motion step toward `targets` (N x 2). The heading blends the unit
/// vector to the target, the mean velocity of the open neighborhood and a
/// repulsion term; the speed is min(max_speed, distance to target). All
/// agents read the previous step's positions and velocities.
void step_motion(MotionState& state, const AgentMatrix& targets, const Topology& topology,
                 const MotionParams& params);

}  // namespace mtdecide
