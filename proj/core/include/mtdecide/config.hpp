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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtdecide/agent_matrix.hpp"
#include "mtdecide/mobility.hpp"
#include "mtdecide/models.hpp"

namespace mtdecide {

enum class Mode {
  kDecide,  // network-wide agreement by local majority switching
  kFollow,  // follow the observed model of one designated agent
  kMobile,  // decision making while agents move toward their estimates
};

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  Mode mode = Mode::kDecide;

  std::size_t n_agents = 80;
  std::size_t dim = 2;
  std::size_t n_models = 3;
  std::size_t max_degree = 7;
  /// Link distance of the static topology on the unit square.
  double radius = 0.18;
  Interval model_range{-1.0, 1.0};
  NoiseBounds noise;

  double alpha = 0.04;  // clustering proximity threshold
  double beta = 0.08;   // desired-model threshold
  /// Memory weight of the belief smoothing f = nu f + (1 - nu) b; the new
  /// proximity test enters with weight 1 - nu = 0.005.
  double nu = 0.995;
  double mu = 0.01;     // LMS step size

  std::size_t max_iters = 1000;
  std::size_t n_trials = 100;
  std::uint64_t seed = 1;

  /// Designated agent (zero-based) in follow mode; in mobile mode it turns
  /// the decision rule into the follow rule.
  std::optional<AgentId> target_agent;
  /// Iterations at which agents are reassigned to models at random.
  std::vector<std::size_t> reassign_at;

  MotionParams motion;
  /// Iterations whose positions are exported in mobile runs.
  std::vector<std::size_t> trajectory_iters{1, 200, 500, 1000};

  /// Iteration whose psi seeds the desired estimates w; labeling, switching
  /// and the w-update run from this iteration on. Earlier rounds only adapt
  /// and cluster.
  std::size_t decision_start = 1;
  bool equilibrium_breaking = true;
  /// Consecutive fully agreed iterations required at the end of a run.
  std::size_t hold_window = 50;
  /// psi may not exceed this multiple of the largest model norm (at least 1).
  double divergence_factor = 1e3;
  /// Worker threads for Monte Carlo trials; 0 uses the hardware count.
  std::size_t threads = 0;

  /// Models closer than this (squared distance) are redrawn: 4 * beta.
  double separation_floor() const { return 4.0 * beta; }
  /// The follow rule is active (follow mode, or mobile with a target).
  bool follows() const { return mode == Mode::kFollow || (mode == Mode::kMobile && target_agent); }
};

/// Defaults per mode. Follow mode: four models, agent 10 (one-based) as the
/// target, 1200 iterations with a reassignment at 600. Mobile mode: four
/// sources in [-50, 50]^2, thresholds scaled with the source range.
ExperimentConfig default_config(Mode mode);

/// Throws ConfigError naming the first offending field.
void validate(const ExperimentConfig& config);

}  // namespace mtdecide
