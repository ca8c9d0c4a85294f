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

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtdecide/config.hpp"
#include "mtdecide/metrics.hpp"
#include "mtdecide/models.hpp"
#include "mtdecide/monte_carlo.hpp"
#include "mtdecide/simulation.hpp"
#include "mtdecide/topology.hpp"

namespace mtdecide {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-iteration CSV:
//   iter,msd_1,...,msd_C,msd_d,distinct_desired,all_agreed,coverage
// Empty cells are missing values. Reals are written in shortest round-trip
// form, so parsing a written file reproduces the rows exactly.
void write_rows_csv(std::ostream& out, std::span<const IterationRow> rows, std::size_t n_models);
std::vector<IterationRow> read_rows_csv(std::istream& in);

// Trajectory CSV: iter,agent,x,y,desired_label (agents one-based).
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> points);

/// Trial record without its rows (those live in the CSV): mode, beta, hold
/// window, models, assignment, target, final estimates, agreement, switch
/// counts, first agreement and failure. Agents and models are one-based.
std::string record_to_json(const RunRecord& record);
/// Inverse of record_to_json; rows are attached separately.
RunRecord record_from_json(std::string_view json, std::vector<IterationRow> rows = {});

/// Topology and ground truth: {agents[], links[], models[], assignment[]}.
std::string network_to_json(const Topology& topology, const ModelSet& models);

/// Aggregate summary, schema version MonteCarloSummary::kSchemaVersion.
std::string summary_to_json(const MonteCarloSummary& summary);

std::string config_to_json(const ExperimentConfig& config);

/// Debug snapshot of one round's state.
std::string snapshot_to_json(const RoundView& round);

}  // namespace mtdecide
