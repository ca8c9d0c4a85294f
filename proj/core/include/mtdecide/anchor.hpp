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

#include <optional>
#include <vector>

#include "mtdecide/agent_matrix.hpp"
#include "mtdecide/decision.hpp"
#include "mtdecide/topology.hpp"

namespace mtdecide {

/// Relayed copies of the target agent's intermediate estimate. `source[k]`
/// is the neighbor agent k refreshes its anchor from; empty until the anchor
/// reaches k.
struct AnchorState {
  AgentId target = 0;
  AgentMatrix anchor;
  std::vector<std::optional<AgentId>> source;

  static AnchorState init(std::size_t n_agents, std::size_t dim, AgentId target);

  /// Number of agents with an established source.
  std::size_t coverage() const;
};

/// One synchronous spreading round. Neighbors of the target copy psi_target
/// directly; agents without a source latch onto the lowest-index neighbor
/// that had one last round; agents with a source refresh from its
/// previous-round anchor while it remains a neighbor. All reads use the
/// previous round's anchors and sources.
void spread_anchor(AnchorState& state, const AgentMatrix& psi, const Topology& topology);

/// H from source-established pairs (agents still without a source keep a
/// self-only column), G uniform on H, and the A_dot / A_ddot split against
/// each agent's anchor.
void update_follow_matrices(const AnchorState& state, const AgentMatrix& psi,
                            const Topology& topology, double beta, DesiredMatrices& out);
DesiredMatrices update_follow_matrices(const AnchorState& state, const AgentMatrix& psi,
                                       const Topology& topology, double beta);

}  // namespace mtdecide
