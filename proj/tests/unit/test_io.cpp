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

#include <limits>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mtdecide/io.hpp"
#include "mtdecide/monte_carlo.hpp"
#include "test_support.hpp"

using namespace mtdecide;

TEST_SUITE("io") {
  TEST_CASE("rows survive a CSV round trip exactly") {
    std::vector<IterationRow> rows(3);
    rows[0] = {1, {0.1, std::nullopt}, std::nullopt, 2, false, std::nullopt};
    rows[1] = {2, {1.0 / 3.0, 2e-17}, 0.125, 1, true, 5};
    rows[2] = {3, {std::numeric_limits<double>::denorm_min(), 123456.789}, 0.0, 1, true, 30};
    std::stringstream buf;
    write_rows_csv(buf, rows, 2);
    CHECK(read_rows_csv(buf) == rows);
  }

  TEST_CASE("the CSV header names every column") {
    std::stringstream buf;
    write_rows_csv(buf, {}, 3);
    std::string header;
    std::getline(buf, header);
    CHECK(header == "iter,msd_1,msd_2,msd_3,msd_d,distinct_desired,all_agreed,coverage");
  }

  TEST_CASE("malformed CSV is rejected") {
    std::stringstream bad("iter,msd_1,msd_d,distinct_desired,all_agreed,coverage\n1,x,,1,1,\n");
    CHECK_THROWS_AS(read_rows_csv(bad), FormatError);
  }

  TEST_CASE("simulated rows and success replay from serialized output") {
    const ExperimentConfig c = testing::small_config();
    for (std::size_t t = 0; t < 3; ++t) {
      const std::uint64_t seed = trial_seed(c.seed, t);
      const RunRecord original = run_trial(c, make_trial_setup(c, seed), seed);
      std::stringstream csv;
      write_rows_csv(csv, original.rows, original.models.rows());
      const std::vector<IterationRow> rows = read_rows_csv(csv);
      CHECK(rows == original.rows);

      const RunRecord replay = record_from_json(record_to_json(original), rows);
      CHECK(replay.final_w == original.final_w);
      CHECK(replay.assignment == original.assignment);
      CHECK(replay.switch_counts == original.switch_counts);
      const SuccessVerdict a = evaluate_success(original);
      const SuccessVerdict b = evaluate_success(replay);
      CHECK(a.success == b.success);
      CHECK(a.model == b.model);
    }
  }

  TEST_CASE("record JSON is one-based and reports the verdict") {
    RunRecord r;
    r.mode = Mode::kFollow;
    r.beta = 0.08;
    r.hold_window = 1;
    r.models = testing::rows({{0.0, 0.0}, {1.0, 1.0}});
    r.assignment = {1, 0};
    r.target_agent = 0;
    r.final_w = testing::rows({{1.0, 1.0}, {1.0, 1.0}});
    r.rows.push_back(IterationRow{1, {}, 0.0, 1, true, 2});
    const auto j = nlohmann::json::parse(record_to_json(r));
    CHECK(j["assignment"] == nlohmann::json({2, 1}));
    CHECK(j["target_agent"] == 1);
    CHECK(j["success"] == true);
    CHECK(j["final_label"] == 2);
    CHECK_THROWS_AS(record_from_json("{not json"), FormatError);
  }

  TEST_CASE("summary JSON carries the schema version and rates") {
    ExperimentConfig c = testing::small_config();
    c.n_trials = 2;
    const MonteCarloSummary s = run_monte_carlo(c);
    const auto j = nlohmann::json::parse(summary_to_json(s));
    CHECK(j["schema_version"] == MonteCarloSummary::kSchemaVersion);
    CHECK(j["successes"] == s.successes);
    CHECK(j["trials"].size() == 2);
    CHECK(j["config"]["n_agents"] == 30);
  }

  TEST_CASE("network JSON lists agents, links and models") {
    const ExperimentConfig c = testing::small_config();
    const TrialSetup setup = make_trial_setup(c, 5);
    const auto j = nlohmann::json::parse(network_to_json(setup.topology, setup.models));
    CHECK(j["agents"].size() == 30);
    CHECK(j["links"].size() == setup.topology.edges().size());
    CHECK(j["models"].size() == c.n_models);
  }
}
