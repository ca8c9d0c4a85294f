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
#include "mtdecide/labeling.hpp"
#include "mtdecide/neighbor_matrix.hpp"
#include "mtdecide/rng.hpp"
#include "mtdecide/topology.hpp"

namespace mtdecide {

enum class SwitchCase {
  kKeep,               // k already in the majority, or nothing to break
  kAdoptMajority,      // k outside Q_k: copy a majority member
  kBreakEquilibrium,   // k in Q_k with exactly two desired models around
};

struct SwitchResult {
  SwitchCase kind = SwitchCase::kKeep;
  /// Agent whose previous desired estimate k adopts (k itself when kept).
  AgentId adopt_from = 0;

  bool changes_source(AgentId k) const { return adopt_from != k; }
};

/// Switching rule for an agent whose agreement degree is below one. Agents in
/// agreement always keep their estimate. The majority representative is the
/// lowest-index member of Q_k; the equilibrium-breaking draw is uniform over
/// the whole closed neighborhood, which favours the more repeated model.
SwitchResult switch_decision(const LabelView& view, Rng& rng, bool equilibrium_breaking = true);

/// H, G and the split of G into A_dot (combine phi) and A_ddot (combine w).
struct DesiredMatrices {
  RelationMatrix h;
  WeightMatrix g;
  WeightMatrix a_dot;
  WeightMatrix a_ddot;

  /// All four equal to the identity on the topology's support.
  static DesiredMatrices identity(const Topology& topology);
  /// Re-shapes storage to `topology` when its size or support changed.
  void reshape(const Topology& topology);
};

/// G uniform over each column's H support, then g_lk goes to A_dot when
/// ||reference_k - psi_l||^2 <= beta and to A_ddot otherwise. Every column of
/// H must contain at least the self entry.
void split_desired_weights(DesiredMatrices& dm, const AgentMatrix& reference,
                           const AgentMatrix& psi, double beta);

/// h_lk = [||w_k - w_l||^2 <= beta] on N_k from the post-switch estimates,
/// then the split with reference w_k.
void update_desired_matrices(const AgentMatrix& w_prev, const AgentMatrix& psi,
                             const Topology& topology, double beta, DesiredMatrices& out);
DesiredMatrices update_desired_matrices(const AgentMatrix& w_prev, const AgentMatrix& psi,
                                        const Topology& topology, double beta);

/// w_k = sum_l a_dot_lk phi_l + sum_l a_ddot_lk w_prev_l.
void update_estimate(const AgentMatrix& w_prev, const AgentMatrix& phi,
                     const DesiredMatrices& dm, AgentMatrix& w);
AgentMatrix update_estimate(const AgentMatrix& w_prev, const AgentMatrix& phi,
                            const DesiredMatrices& dm);

}  // namespace mtdecide
