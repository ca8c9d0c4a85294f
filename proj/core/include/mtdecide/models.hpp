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
#include <vector>

#include "mtdecide/agent_matrix.hpp"
#include "mtdecide/rng.hpp"

namespace mtdecide {

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
  bool operator==(const Interval&) const = default;
};

/// Ground-truth models z_1..z_C and the observed-model assignment of every
/// agent (w°_k = models.row(assignment[k])).
struct ModelSet {
  AgentMatrix models;                   // C x M
  std::vector<std::size_t> assignment;  // agent -> model index
  /// Squared pairwise distances between models, C x C row-major.
  std::vector<double> separations;

  std::size_t count() const { return models.rows(); }
  std::size_t dim() const { return models.dim(); }
  std::size_t agents() const { return assignment.size(); }

  std::span<const double> model(std::size_t j) const { return models.row(j); }
  std::span<const double> observed(AgentId k) const { return models.row(assignment[k]); }

  /// w° stacked agent by agent, length M * N.
  std::vector<double> stacked() const;

  /// Agents observing model j, ascending.
  std::vector<AgentId> followers(std::size_t j) const;

  /// Index of the model nearest to v in squared distance (lowest index on ties).
  std::size_t nearest(std::span<const double> v) const;

  double min_separation() const;
};

/// Draws n_models vectors with entries uniform on `range`. Draws are repeated
/// while some pair is within `separation_floor` (squared distance); after
/// max_attempts the best-separated draw is kept.
ModelSet generate_models(std::size_t n_models, std::size_t dim, Interval range,
                         double separation_floor, std::uint64_t seed,
                         std::size_t max_attempts = 10000);

/// Builds a model set from explicit vectors (C x M), with no assignment yet.
ModelSet make_model_set(AgentMatrix models);

/// Uniform random assignment of n_agents to the models; resampled until
/// every model has at least one follower.
ModelSet assign_agents(ModelSet models, std::size_t n_agents, std::uint64_t seed);

struct NoiseBounds {
  double noise_variance_lo = 1e-3;
  double noise_variance_hi = 1e-2;
  double regressor_variance_lo = 0.8;
  double regressor_variance_hi = 1.2;
  bool operator==(const NoiseBounds&) const = default;
};

/// Per-agent noise variance sigma_v^2 and diagonal regressor covariance R_u.
struct NoiseProfile {
  std::vector<double> noise_variance;  // N
  AgentMatrix regressor_variance;      // N x M, diagonal of R_u,k

  static NoiseProfile uniform(std::size_t n_agents, std::size_t dim, double noise_variance,
                              double regressor_variance);
};

/// sigma_v^2 log-uniform and R_u diagonal entries uniform within `bounds`.
NoiseProfile make_noise_profile(std::size_t n_agents, std::size_t dim, const NoiseBounds& bounds,
                                std::uint64_t seed);

struct DataSample {
  double d = 0.0;
  double v = 0.0;
  std::vector<double> u;
};

/// Draws (d, u) for agent k with d = u w°_k + v. `out.u` is reused.
void sample_data(AgentId k, const ModelSet& models, const NoiseProfile& noise, Rng& rng,
                 DataSample& out);
DataSample sample_data(AgentId k, const ModelSet& models, const NoiseProfile& noise, Rng& rng);

}  // namespace mtdecide
