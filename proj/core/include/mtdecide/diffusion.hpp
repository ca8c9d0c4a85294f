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
#include <vector>

#include "mtdecide/agent_matrix.hpp"
#include "mtdecide/models.hpp"
#include "mtdecide/neighbor_matrix.hpp"
#include "mtdecide/topology.hpp"

namespace mtdecide {

/// Raised by the adaptation step when an iterate leaves the divergence bound.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(AgentId agent, double norm, double bound);
  AgentId agent() const { return agent_; }

 private:
  AgentId agent_;
};

/// Adaptation/aggregation iterates. phi_prev keeps phi from the previous
/// round for the proximity test of the clustering step.
struct DiffusionState {
  AgentMatrix psi;
  AgentMatrix phi;
  AgentMatrix phi_prev;
  std::vector<double> step_sizes;

  static DiffusionState zeros(std::size_t n_agents, std::size_t dim, double step_size);
};

/// One LMS step: psi += mu u^T (d - u psi).
void adapt_agent(std::span<double> psi, double step_size, const DataSample& sample);

/// LMS step for every agent. Throws DivergenceError naming the first agent
/// whose ||psi|| exceeds `divergence_bound`.
void adapt(DiffusionState& state, std::span<const DataSample> samples, double divergence_bound);

/// Proximity (B), smoothed (F) and belief (E) matrices, dense N x N with entry
/// (l, k) at l * N + k. Off-neighborhood entries of B and E are zero; F keeps
/// its history for links that come and go in mobile runs.
struct ClusterMatrices {
  std::size_t n = 0;
  double alpha = 0.04;
  double nu = 0.995;
  std::vector<std::uint8_t> b;
  std::vector<double> f;
  std::vector<std::uint8_t> e;

  /// B = F = E = I.
  static ClusterMatrices identity(std::size_t n_agents, double alpha, double nu);

  std::uint8_t proximity(AgentId l, AgentId k) const { return b[l * n + k]; }
  double smoothed(AgentId l, AgentId k) const { return f[l * n + k]; }
  std::uint8_t belief(AgentId l, AgentId k) const { return e[l * n + k]; }
};

/// Nearest-integer rounding of a smoothed belief in [0, 1]; 0.5 rounds to 1.
constexpr std::uint8_t round_belief(double f) { return f >= 0.5 ? 1 : 0; }

/// For every k and l in N_k: b = [||psi_l - phi_prev_k||^2 <= alpha],
/// f = nu f + (1 - nu) b, e = round(f). The self entries stay at one.
void update_cluster_matrices(ClusterMatrices& cm, const AgentMatrix& psi,
                             const AgentMatrix& phi_prev, const Topology& topology);

/// Uniform combination column over a believed neighborhood mask.
std::vector<double> build_combination_weights(std::span<const std::uint8_t> believed);

/// A with column k uniform over {l in N_k : e_lk = 1}.
void combination_from_beliefs(const ClusterMatrices& cm, const Topology& topology,
                              WeightMatrix& a);
WeightMatrix combination_from_beliefs(const ClusterMatrices& cm, const Topology& topology);

/// phi_k = sum_l a_lk psi_l.
void aggregate(const AgentMatrix& psi, const WeightMatrix& a, AgentMatrix& phi);
AgentMatrix aggregate(const AgentMatrix& psi, const WeightMatrix& a);

}  // namespace mtdecide
