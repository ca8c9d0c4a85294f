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

#include "doctest.h"
#include "mtdecide/config.hpp"

using namespace mtdecide;

TEST_SUITE("config") {
  TEST_CASE("decision defaults") {
    const ExperimentConfig c = default_config(Mode::kDecide);
    CHECK(c.n_agents == 80);
    CHECK(c.dim == 2);
    CHECK(c.max_degree == 7);
    CHECK(c.alpha == 0.04);
    CHECK(c.beta == 0.08);
    CHECK(1.0 - c.nu == doctest::Approx(0.005));
    CHECK(c.mu == 0.01);
    CHECK(c.hold_window == 50);
    CHECK_FALSE(c.follows());
    CHECK_NOTHROW(validate(c));
  }

  TEST_CASE("follow defaults") {
    const ExperimentConfig c = default_config(Mode::kFollow);
    CHECK(c.n_models == 4);
    CHECK(c.target_agent == AgentId{9});
    CHECK(c.reassign_at == std::vector<std::size_t>{600});
    CHECK(c.max_iters == 1200);
    CHECK(c.follows());
    CHECK_NOTHROW(validate(c));
  }

  TEST_CASE("mobile defaults") {
    ExperimentConfig c = default_config(Mode::kMobile);
    CHECK(c.n_models == 4);
    CHECK(c.model_range.lo == -50.0);
    CHECK(c.model_range.hi == 50.0);
    CHECK(c.motion.goal_gain == 0.6);
    CHECK(c.motion.align_gain == 0.3);
    CHECK(c.motion.repel_gain == 0.1);
    CHECK(c.motion.max_speed == 1.0);
    CHECK_FALSE(c.follows());
    c.target_agent = 0;
    CHECK(c.follows());
    CHECK_NOTHROW(validate(c));
  }

  TEST_CASE("mode names round-trip") {
    for (Mode m : {Mode::kDecide, Mode::kFollow, Mode::kMobile}) CHECK(parse_mode(to_string(m)) == m);
    CHECK_FALSE(parse_mode("sweep").has_value());
  }

  TEST_CASE("invalid settings are rejected") {
    auto rejects = [](auto mutate) {
      ExperimentConfig c = default_config(Mode::kDecide);
      mutate(c);
      CHECK_THROWS_AS(validate(c), ConfigError);
    };
    rejects([](ExperimentConfig& c) { c.alpha = 0.0; });
    rejects([](ExperimentConfig& c) { c.beta = -0.1; });
    rejects([](ExperimentConfig& c) { c.nu = 1.5; });
    rejects([](ExperimentConfig& c) { c.nu = -0.1; });
    rejects([](ExperimentConfig& c) { c.mu = 0.0; });
    rejects([](ExperimentConfig& c) { c.n_models = 81; });
    rejects([](ExperimentConfig& c) { c.max_degree = 65; });
    rejects([](ExperimentConfig& c) { c.max_iters = 0; });
    rejects([](ExperimentConfig& c) { c.decision_start = 0; });
    rejects([](ExperimentConfig& c) { c.target_agent = 80; });
    rejects([](ExperimentConfig& c) { c.reassign_at = {0}; });
    rejects([](ExperimentConfig& c) { c.mode = Mode::kFollow; });
    rejects([](ExperimentConfig& c) {
      c.mode = Mode::kMobile;
      c.dim = 3;
    });
    rejects([](ExperimentConfig& c) {
      c.mode = Mode::kMobile;
      c.motion.max_speed = 0.0;
    });
  }

  TEST_CASE("boundary smoothing weights are valid") {
    ExperimentConfig c = default_config(Mode::kDecide);
    c.nu = 0.0;
    CHECK_NOTHROW(validate(c));
    c.nu = 1.0;
    CHECK_NOTHROW(validate(c));
  }
}
