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

#include "mtdecide/anchor.hpp"

#include <algorithm>

namespace mtdecide {

AnchorState AnchorState::init(std::size_t n_agents, std::size_t dim, AgentId target) {
  return {target, AgentMatrix(n_agents, dim), std::vector<std::optional<AgentId>>(n_agents)};
}

std::size_t AnchorState::coverage() const {
  return static_cast<std::size_t>(
      std::count_if(source.begin(), source.end(), [](const auto& s) { return s.has_value(); }));
}

void spread_anchor(AnchorState& state, const AgentMatrix& psi, const Topology& topology) {
  const AgentMatrix prev_anchor = state.anchor;
  const auto prev_source = state.source;
  const AgentId m = state.target;
  for (AgentId k = 0; k < topology.size(); ++k) {
    if (topology.linked(m, k)) {
      state.anchor.set_row(k, psi.row(m));
      state.source[k] = m;
      continue;
    }
    if (!prev_source[k]) {
      for (AgentId l : topology.neighbors(k)) {
        if (prev_source[l]) {
          state.anchor.set_row(k, prev_anchor.row(l));
          state.source[k] = l;
          break;
        }
      }
      continue;
    }
    const AgentId l = *prev_source[k];
    if (topology.linked(l, k)) state.anchor.set_row(k, prev_anchor.row(l));
  }
}

void update_follow_matrices(const AnchorState& state, const AgentMatrix& psi,
                            const Topology& topology, double beta, DesiredMatrices& out) {
  out.reshape(topology);
  for (AgentId k = 0; k < topology.size(); ++k) {
    const auto rows = out.h.rows(k);
    auto h = out.h.column(k);
    const bool informed = state.source[k].has_value();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const AgentId l = rows[i];
      h[i] = (l == k || (informed && state.source[l].has_value())) ? 1 : 0;
    }
  }
  split_desired_weights(out, state.anchor, psi, beta);
}

DesiredMatrices update_follow_matrices(const AnchorState& state, const AgentMatrix& psi,
                                       const Topology& topology, double beta) {
  DesiredMatrices dm = DesiredMatrices::identity(topology);
  update_follow_matrices(state, psi, topology, beta, dm);
  return dm;
}

}  // namespace mtdecide
