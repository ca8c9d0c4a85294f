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
#include <optional>
#include <span>

#include "mtdecide/anchor.hpp"
#include "mtdecide/config.hpp"
#include "mtdecide/decision.hpp"
#include "mtdecide/diffusion.hpp"
#include "mtdecide/labeling.hpp"
#include "mtdecide/metrics.hpp"
#include "mtdecide/mobility.hpp"
#include "mtdecide/models.hpp"
#include "mtdecide/topology.hpp"

namespace mtdecide {

/// Network, ground truth and noise for one trial.
struct TrialSetup {
  Topology topology;
  ModelSet models;
  NoiseProfile noise;
  /// Start state of a mobile swarm; the topology is then rebuilt from it.
  std::optional<MotionState> motion;
};

/// Draws the topology (or swarm), models, assignment and noise profile from
/// the trial seed using the fixed construction streams in rng.hpp.
TrialSetup make_trial_setup(const ExperimentConfig& config, std::uint64_t trial_seed);

/// Read-only view of a finished round, handed to observers.
struct RoundView {
  std::size_t iteration = 0;
  const Topology& topology;
  const ModelSet& models;
  const DiffusionState& diffusion;
  const ClusterMatrices& clusters;
  const WeightMatrix& combination;
  std::span<const LabelView> labels;
  /// Desired estimates tested this round, after switching (w_{i-1}).
  const AgentMatrix& w_prev;
  const DesiredMatrices& desired;
  /// Updated desired estimates w_i.
  const AgentMatrix& w;
  const AnchorState* anchor = nullptr;
  const MotionState* motion = nullptr;
};

class RoundObserver {
 public:
  virtual ~RoundObserver() = default;
  virtual void on_round(const RoundView& round) = 0;
};

/// Runs one trial: adapt, cluster and combine, label, then either switch
/// (decision rule) or spread the anchor (follow rule), build H/G/A_dot/A_ddot
/// and update w; mobile runs then move agents and rebuild the topology.
/// A divergence aborts the trial and is recorded in RunRecord::failure.
RunRecord run_trial(const ExperimentConfig& config, TrialSetup setup, std::uint64_t trial_seed,
                    RoundObserver* observer = nullptr);

}  // namespace mtdecide
