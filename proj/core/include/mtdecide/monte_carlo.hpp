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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mtdecide/config.hpp"
#include "mtdecide/metrics.hpp"
#include "mtdecide/simulation.hpp"

namespace mtdecide {

/// Per-iteration statistics of one curve across trials. Entries are empty at
/// iterations where no trial produced a value.
struct SeriesBand {
  std::vector<std::optional<double>> mean;
  std::vector<std::optional<double>> p10;
  std::vector<std::optional<double>> p50;
  std::vector<std::optional<double>> p90;
  std::vector<std::size_t> samples;

  bool operator==(const SeriesBand&) const = default;
};

struct TrialSummary {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool success = false;
  std::optional<std::size_t> model;  // zero-based
  std::size_t switches = 0;
  std::optional<std::size_t> first_agreement;
  bool diverged = false;

  bool operator==(const TrialSummary&) const = default;
};

struct MonteCarloSummary {
  static constexpr int kSchemaVersion = 1;

  ExperimentConfig config;
  std::vector<TrialSummary> trials;
  std::size_t successes = 0;
  double success_rate = 0.0;
  std::vector<SeriesBand> msd_observed;  // one per model
  SeriesBand msd_desired;
};

/// Seed of trial t under the master seed.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial);

/// Builds the setup of a trial; defaults to make_trial_setup.
using SetupFactory = std::function<TrialSetup(const ExperimentConfig&, std::uint64_t trial_seed)>;
/// Receives each finished trial. Calls are serialized but arrive in
/// completion order.
using TrialSink = std::function<void(std::size_t trial, const RunRecord& record)>;

/// Runs config.n_trials independent trials on config.threads workers and
/// aggregates them. The summary depends only on the master seed: trials are
/// seeded by index and reduced in index order.
MonteCarloSummary run_monte_carlo(const ExperimentConfig& config, const TrialSink& sink = {},
                                  const SetupFactory& factory = {});

/// Aggregation of finished records (record t is trial t).
MonteCarloSummary summarize(const ExperimentConfig& config, std::span<const RunRecord> records);

}  // namespace mtdecide
