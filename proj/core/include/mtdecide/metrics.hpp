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
#include <span>
#include <string>
#include <vector>

#include "mtdecide/agent_matrix.hpp"
#include "mtdecide/config.hpp"
#include "mtdecide/models.hpp"

namespace mtdecide {

/// One row of a run's learning curves.
struct IterationRow {
  std::size_t iteration = 0;
  /// MSD of phi against each observed model; empty when the model has no
  /// followers.
  std::vector<std::optional<double>> msd_observed;
  /// MSD of w against the agreed model; only at fully agreed iterations.
  /// The agreed model is fixed when an agreement episode begins (the model
  /// nearest the mean estimate) and released when agreement is lost or the
  /// assignment changes. Under the follow rule it is the target's model.
  std::optional<double> msd_desired;
  std::size_t distinct_desired = 0;
  bool all_agreed = false;
  /// Agents holding an anchor source (follow rule only).
  std::optional<std::size_t> coverage;

  bool operator==(const IterationRow&) const = default;
};

struct TrajectoryPoint {
  std::size_t iteration = 0;
  AgentId agent = 0;
  double x = 0.0;
  double y = 0.0;
  /// One-based model within beta of the agent's desired estimate, 0 if none.
  std::size_t desired_label = 0;

  bool operator==(const TrajectoryPoint&) const = default;
};

/// Everything a finished trial reports. Success is recomputed from this
/// record alone (see evaluate_success).
struct RunRecord {
  Mode mode = Mode::kDecide;
  double beta = 0.0;
  std::size_t hold_window = 0;
  AgentMatrix models;
  /// Observed-model assignment in force at the end of the run.
  std::vector<std::size_t> assignment;
  std::optional<AgentId> target_agent;
  AgentMatrix final_w;
  std::vector<double> final_agreement;
  std::vector<std::size_t> switch_counts;
  std::vector<IterationRow> rows;
  std::optional<std::size_t> first_agreement;
  std::vector<TrajectoryPoint> trajectory;
  /// Divergence diagnostic when the run was aborted.
  std::optional<std::string> failure;
  double wall_seconds = 0.0;
};

/// MSD_j = mean over followers of model j of ||z_j - phi_k||^2.
std::vector<std::optional<double>> msd_observed(const AgentMatrix& phi, const ModelSet& models);

/// MSD_d = mean over all agents of ||z_d - w_k||^2.
double msd_desired(const AgentMatrix& w, std::span<const double> z_d);

/// Number of connected components of the graph linking agents whose desired
/// estimates are within beta (squared distance).
std::size_t count_desired_classes(const AgentMatrix& w, double beta);

struct SuccessVerdict {
  bool success = false;
  /// Zero-based model all agents settled on, when one exists.
  std::optional<std::size_t> model;
};

/// Success iff the last `hold_window` rows are fully agreed and every final
/// desired estimate is within beta of one common model (the target's
/// observed model under the follow rule).
SuccessVerdict evaluate_success(const RunRecord& record);

}  // namespace mtdecide
