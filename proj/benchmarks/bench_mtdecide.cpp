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

// Microbenchmarks for the per-round hot paths: one full simulation round,
// a single agent's label view, the cluster-belief update and topology
// generation.

#include <benchmark/benchmark.h>

#include <random>

#include "mtdecide/diffusion.hpp"
#include "mtdecide/labeling.hpp"
#include "mtdecide/monte_carlo.hpp"
#include "mtdecide/rng.hpp"
#include "mtdecide/simulation.hpp"
#include "mtdecide/topology.hpp"

namespace {

using namespace mtdecide;

AgentMatrix random_estimates(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  AgentMatrix m(n, 2);
  for (AgentId a = 0; a < n; ++a) m.set_row(a, std::vector<double>{coord(rng), coord(rng)});
  return m;
}

// Whole trials divided by their length: the cost of one synchronous round.
void BM_DecisionRound(benchmark::State& state) {
  ExperimentConfig c = default_config(Mode::kDecide);
  c.n_models = static_cast<std::size_t>(state.range(0));
  c.max_iters = 200;
  const std::uint64_t seed = trial_seed(1, 0);
  for (auto _ : state) {
    RunRecord r = run_trial(c, make_trial_setup(c, seed), seed);
    benchmark::DoNotOptimize(r.rows.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.max_iters));
}
BENCHMARK(BM_DecisionRound)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_FollowRound(benchmark::State& state) {
  ExperimentConfig c = default_config(Mode::kFollow);
  c.max_iters = 200;
  c.reassign_at.clear();
  const std::uint64_t seed = trial_seed(1, 0);
  for (auto _ : state) {
    RunRecord r = run_trial(c, make_trial_setup(c, seed), seed);
    benchmark::DoNotOptimize(r.rows.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.max_iters));
}
BENCHMARK(BM_FollowRound)->Unit(benchmark::kMillisecond);

void BM_LabelView(benchmark::State& state) {
  const Topology t = generate_topology(TopologyParams{}, 3);
  const AgentMatrix w = random_estimates(t.size(), 4);
  LabelView view;
  AgentId k = 0;
  for (auto _ : state) {
    build_label_view(k, w, t, 0.08, view);
    benchmark::DoNotOptimize(view.agreement);
    k = (k + 1) % t.size();
  }
}
BENCHMARK(BM_LabelView);

void BM_ClusterUpdate(benchmark::State& state) {
  const Topology t = generate_topology(TopologyParams{}, 3);
  const AgentMatrix psi = random_estimates(t.size(), 5);
  const AgentMatrix phi = random_estimates(t.size(), 6);
  ClusterMatrices cm = ClusterMatrices::identity(t.size(), 0.04, 0.995);
  for (auto _ : state) {
    update_cluster_matrices(cm, psi, phi, t);
    benchmark::DoNotOptimize(cm.e.data());
  }
}
BENCHMARK(BM_ClusterUpdate);

void BM_GenerateTopology(benchmark::State& state) {
  TopologyParams p;
  p.n_agents = static_cast<std::size_t>(state.range(0));
  p.radius = 0.18 * std::sqrt(80.0 / static_cast<double>(p.n_agents));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    Topology t = generate_topology(p, seed++);
    benchmark::DoNotOptimize(t.size());
  }
}
BENCHMARK(BM_GenerateTopology)->Arg(80)->Arg(320)->Unit(benchmark::kMicrosecond);

void BM_RebuildTopology(benchmark::State& state) {
  const MotionState s = spawn_swarm(80, 20.0, 4.0, 7, 9);
  for (auto _ : state) {
    Topology t = rebuild_topology(s.positions, 4.0, 7);
    benchmark::DoNotOptimize(t.size());
  }
}
BENCHMARK(BM_RebuildTopology)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
