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

#include "mtdecide/decision.hpp"

#include <cassert>
#include <algorithm>
#include <random>

namespace mtdecide {

SwitchResult switch_decision(const LabelView& view, Rng& rng, bool equilibrium_breaking) {
  const AgentId k = view.agent;
  if (view.agreed()) return {SwitchCase::kKeep, k};
  if (!view.self_in_majority()) return {SwitchCase::kAdoptMajority, view.majority.front()};
  if (equilibrium_breaking && view.model_count == 2) {
    std::uniform_int_distribution<std::size_t> pick(0, view.size() - 1);
    return {SwitchCase::kBreakEquilibrium, view.members[pick(rng)]};
  }
  return {SwitchCase::kKeep, k};
}

DesiredMatrices DesiredMatrices::identity(const Topology& topology) {
  return {RelationMatrix::identity(topology), WeightMatrix::identity(topology),
          WeightMatrix::identity(topology), WeightMatrix(topology)};
}

void DesiredMatrices::reshape(const Topology& topology) {
  bool same = h.size() == topology.size();
  for (AgentId k = 0; same && k < topology.size(); ++k) {
    const auto a = h.rows(k);
    const auto b = topology.neighbors(k);
    same = std::equal(a.begin(), a.end(), b.begin(), b.end());
  }
  if (!same) *this = identity(topology);
}

void split_desired_weights(DesiredMatrices& dm, const AgentMatrix& reference,
                           const AgentMatrix& psi, double beta) {
  for (AgentId k = 0; k < dm.h.size(); ++k) {
    const auto rows = dm.h.rows(k);
    const auto h = dm.h.column(k);
    auto g = dm.g.column(k);
    uniform_column(h, g);
    auto dot = dm.a_dot.column(k);
    auto ddot = dm.a_ddot.column(k);
    const auto ref = reference.row(k);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const bool observes = g[i] != 0.0 && squared_distance(ref, psi.row(rows[i])) <= beta;
      dot[i] = observes ? g[i] : 0.0;
      ddot[i] = observes ? 0.0 : g[i];
    }
  }
}

void update_desired_matrices(const AgentMatrix& w_prev, const AgentMatrix& psi,
                             const Topology& topology, double beta, DesiredMatrices& out) {
  out.reshape(topology);
  for (AgentId k = 0; k < topology.size(); ++k) {
    const auto rows = out.h.rows(k);
    auto h = out.h.column(k);
    const auto wk = w_prev.row(k);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      h[i] = rows[i] == k || squared_distance(wk, w_prev.row(rows[i])) <= beta ? 1 : 0;
    }
  }
  split_desired_weights(out, w_prev, psi, beta);
}

DesiredMatrices update_desired_matrices(const AgentMatrix& w_prev, const AgentMatrix& psi,
                                        const Topology& topology, double beta) {
  DesiredMatrices dm = DesiredMatrices::identity(topology);
  update_desired_matrices(w_prev, psi, topology, beta, dm);
  return dm;
}

void update_estimate(const AgentMatrix& w_prev, const AgentMatrix& phi,
                     const DesiredMatrices& dm, AgentMatrix& w) {
  assert(&w != &w_prev && &w != &phi);
  if (w.rows() != w_prev.rows() || w.dim() != w_prev.dim()) {
    w = AgentMatrix(w_prev.rows(), w_prev.dim());
  }
  for (AgentId k = 0; k < w.rows(); ++k) {
    auto out = w.row(k);
    std::fill(out.begin(), out.end(), 0.0);
    const auto rows = dm.g.rows(k);
    const auto dot = dm.a_dot.column(k);
    const auto ddot = dm.a_ddot.column(k);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (dot[i] != 0.0) {
        const auto x = phi.row(rows[i]);
        for (std::size_t m = 0; m < out.size(); ++m) out[m] += dot[i] * x[m];
      }
      if (ddot[i] != 0.0) {
        const auto x = w_prev.row(rows[i]);
        for (std::size_t m = 0; m < out.size(); ++m) out[m] += ddot[i] * x[m];
      }
    }
  }
}

AgentMatrix update_estimate(const AgentMatrix& w_prev, const AgentMatrix& phi,
                            const DesiredMatrices& dm) {
  AgentMatrix w;
  update_estimate(w_prev, phi, dm, w);
  return w;
}

}  // namespace mtdecide
