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

#include "mtdecide/diffusion.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

namespace mtdecide {

DivergenceError::DivergenceError(AgentId agent, double norm, double bound)
    : std::runtime_error("adaptation diverged at agent " + std::to_string(agent + 1) +
                         ": ||psi|| = " + std::to_string(norm) + " exceeds " +
                         std::to_string(bound) + " (step size too large?)"),
      agent_(agent) {}

DiffusionState DiffusionState::zeros(std::size_t n_agents, std::size_t dim, double step_size) {
  return {AgentMatrix(n_agents, dim), AgentMatrix(n_agents, dim), AgentMatrix(n_agents, dim),
          std::vector<double>(n_agents, step_size)};
}

void adapt_agent(std::span<double> psi, double step_size, const DataSample& sample) {
  assert(sample.u.size() == psi.size());
  double prediction = 0.0;
  for (std::size_t m = 0; m < psi.size(); ++m) prediction += sample.u[m] * psi[m];
  const double gain = step_size * (sample.d - prediction);
  for (std::size_t m = 0; m < psi.size(); ++m) psi[m] += gain * sample.u[m];
}

void adapt(DiffusionState& state, std::span<const DataSample> samples, double divergence_bound) {
  assert(samples.size() == state.psi.rows());
  const double bound2 = divergence_bound * divergence_bound;
  for (AgentId k = 0; k < state.psi.rows(); ++k) {
    auto psi = state.psi.row(k);
    adapt_agent(psi, state.step_sizes[k], samples[k]);
    const double n2 = squared_norm(psi);
    if (!(n2 <= bound2)) throw DivergenceError(k, std::sqrt(n2), divergence_bound);
  }
}

ClusterMatrices ClusterMatrices::identity(std::size_t n_agents, double alpha, double nu) {
  ClusterMatrices cm;
  cm.n = n_agents;
  cm.alpha = alpha;
  cm.nu = nu;
  cm.b.assign(n_agents * n_agents, 0);
  cm.f.assign(n_agents * n_agents, 0.0);
  cm.e.assign(n_agents * n_agents, 0);
  for (AgentId k = 0; k < n_agents; ++k) {
    cm.b[k * n_agents + k] = 1;
    cm.f[k * n_agents + k] = 1.0;
    cm.e[k * n_agents + k] = 1;
  }
  return cm;
}

void update_cluster_matrices(ClusterMatrices& cm, const AgentMatrix& psi,
                             const AgentMatrix& phi_prev, const Topology& topology) {
  const std::size_t n = cm.n;
  assert(topology.size() == n);
  // Links dropped since the last round must read as zero.
  std::fill(cm.b.begin(), cm.b.end(), std::uint8_t{0});
  std::fill(cm.e.begin(), cm.e.end(), std::uint8_t{0});
  for (AgentId k = 0; k < n; ++k) {
    const auto phi_k = phi_prev.row(k);
    for (AgentId l : topology.neighbors(k)) {
      const std::size_t at = l * n + k;
      if (l == k) {
        cm.b[at] = 1;
        cm.f[at] = 1.0;
        cm.e[at] = 1;
        continue;
      }
      const std::uint8_t close = squared_distance(psi.row(l), phi_k) <= cm.alpha ? 1 : 0;
      cm.b[at] = close;
      cm.f[at] = cm.nu * cm.f[at] + (1.0 - cm.nu) * close;
      cm.e[at] = round_belief(cm.f[at]);
    }
  }
}

std::vector<double> build_combination_weights(std::span<const std::uint8_t> believed) {
  std::vector<double> w(believed.size(), 0.0);
  uniform_column(believed, w);
  return w;
}

void uniform_column(std::span<const std::uint8_t> mask, std::span<double> weights) {
  assert(mask.size() == weights.size());
  std::size_t count = 0;
  for (auto m : mask) count += m ? 1 : 0;
  assert(count > 0);
  const double w = 1.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < mask.size(); ++i) weights[i] = mask[i] ? w : 0.0;
}

void combination_from_beliefs(const ClusterMatrices& cm, const Topology& topology,
                              WeightMatrix& a) {
  if (a.size() != topology.size()) a = WeightMatrix(topology);
  std::vector<std::uint8_t> mask;
  for (AgentId k = 0; k < topology.size(); ++k) {
    const auto rows = a.rows(k);
    mask.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      mask[i] = rows[i] == k ? 1 : cm.belief(rows[i], k);
    }
    uniform_column(mask, a.column(k));
  }
}

WeightMatrix combination_from_beliefs(const ClusterMatrices& cm, const Topology& topology) {
  WeightMatrix a(topology);
  combination_from_beliefs(cm, topology, a);
  return a;
}

void combine(const WeightMatrix& weights, const AgentMatrix& x, AgentMatrix& out) {
  assert(weights.size() == x.rows());
  if (out.rows() != x.rows() || out.dim() != x.dim()) out = AgentMatrix(x.rows(), x.dim());
  for (AgentId k = 0; k < weights.size(); ++k) {
    auto o = out.row(k);
    std::fill(o.begin(), o.end(), 0.0);
    const auto rows = weights.rows(k);
    const auto col = weights.column(k);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (col[i] == 0.0) continue;
      const auto xl = x.row(rows[i]);
      for (std::size_t m = 0; m < o.size(); ++m) o[m] += col[i] * xl[m];
    }
  }
}

void aggregate(const AgentMatrix& psi, const WeightMatrix& a, AgentMatrix& phi) {
  combine(a, psi, phi);
}

AgentMatrix aggregate(const AgentMatrix& psi, const WeightMatrix& a) {
  AgentMatrix phi;
  combine(a, psi, phi);
  return phi;
}

}  // namespace mtdecide
