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

#include "mtdecide/config.hpp"

#include <algorithm>
#include <cmath>

#include "mtdecide/labeling.hpp"

namespace mtdecide {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kDecide: return "decide";
    case Mode::kFollow: return "follow";
    case Mode::kMobile: return "mobile";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "decide") return Mode::kDecide;
  if (name == "follow") return Mode::kFollow;
  if (name == "mobile") return Mode::kMobile;
  return std::nullopt;
}

ExperimentConfig default_config(Mode mode) {
  ExperimentConfig c;
  c.mode = mode;
  switch (mode) {
    case Mode::kDecide:
      break;
    case Mode::kFollow:
      c.n_models = 4;
      c.target_agent = 9;
      c.max_iters = 1200;
      c.reassign_at = {600};
      break;
    case Mode::kMobile:
      c.n_models = 4;
      c.model_range = {-50.0, 50.0};
      // Thresholds scale with the squared source range (50^2).
      c.alpha = 100.0;
      c.beta = 200.0;
      c.max_iters = 1000;
      break;
  }
  return c;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

void validate(const ExperimentConfig& c) {
  require(c.n_agents >= 2, "n_agents must be at least 2");
  require(c.dim >= 1, "dim must be at least 1");
  require(c.n_models >= 1, "n_models must be at least 1");
  require(c.n_models <= c.n_agents, "n_models must not exceed n_agents");
  require(c.max_degree >= 2, "max_degree must be at least 2");
  require(c.max_degree <= kMaxNeighborhood, "max_degree must not exceed 64");
  require(c.radius > 0.0 && std::isfinite(c.radius), "radius must be positive");
  require(c.model_range.lo < c.model_range.hi, "model range must be nonempty");
  require(c.alpha > 0.0, "alpha must be positive");
  require(c.beta > 0.0, "beta must be positive");
  require(c.nu >= 0.0 && c.nu <= 1.0, "nu must lie in [0, 1]");
  require(c.mu > 0.0, "mu must be positive");
  require(c.max_iters >= 1, "max_iters must be at least 1");
  require(c.decision_start >= 1, "decision_start must be at least 1");
  require(c.n_trials >= 1, "n_trials must be at least 1");
  require(c.noise.noise_variance_lo > 0.0 && c.noise.noise_variance_lo <= c.noise.noise_variance_hi,
          "noise variance bounds must satisfy 0 < lo <= hi");
  require(c.noise.regressor_variance_lo > 0.0 &&
              c.noise.regressor_variance_lo <= c.noise.regressor_variance_hi,
          "regressor variance bounds must satisfy 0 < lo <= hi");
  require(c.divergence_factor > 0.0, "divergence_factor must be positive");
  if (c.mode == Mode::kFollow) require(c.target_agent.has_value(), "follow mode needs a target agent");
  if (c.target_agent) require(*c.target_agent < c.n_agents, "target agent out of range");
  if (c.mode == Mode::kMobile) {
    require(c.dim == 2, "mobile mode requires dim = 2");
    const auto& m = c.motion;
    require(m.max_speed > 0.0, "motion max_speed must be positive");
    require(m.comm_radius > 0.0, "motion comm_radius must be positive");
    require(m.spawn_extent > 0.0, "motion spawn_extent must be positive");
    require(m.goal_gain >= 0.0 && m.align_gain >= 0.0 && m.repel_gain >= 0.0,
            "motion gains must be nonnegative");
  }
  for (auto it : c.reassign_at) require(it >= 1, "reassignment iterations start at 1");
}

}  // namespace mtdecide
