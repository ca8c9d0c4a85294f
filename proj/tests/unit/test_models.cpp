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

#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "mtdecide/models.hpp"
#include "mtdecide/rng.hpp"
#include "test_support.hpp"

using namespace mtdecide;

TEST_SUITE("models") {
  TEST_CASE("a single model is followed by every agent") {
    const ModelSet m = assign_agents(generate_models(1, 2, {-1.0, 1.0}, 0.32, 5), 80, 6);
    CHECK(m.count() == 1);
    CHECK(m.followers(0).size() == 80);
  }

  TEST_CASE("entries stay inside the interval and models are separated") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const ModelSet m = generate_models(3, 2, {-1.0, 1.0}, 0.32, seed);
      REQUIRE(m.count() == 3);
      CHECK(m.dim() == 2);
      for (double x : m.models.data()) {
        CHECK(x >= -1.0);
        CHECK(x <= 1.0);
      }
      CHECK(m.min_separation() > 0.32);
    }
  }

  TEST_CASE("mobile source layout uses the wide interval") {
    const ModelSet m = generate_models(4, 2, {-50.0, 50.0}, 800.0, 9);
    for (double x : m.models.data()) CHECK(std::abs(x) <= 50.0);
    CHECK(m.min_separation() > 800.0);
  }

  TEST_CASE("separations are the squared pairwise distances") {
    const ModelSet m = make_model_set(testing::rows({{0.0, 0.0}, {3.0, 4.0}, {0.0, 1.0}}));
    CHECK(m.separations[0 * 3 + 1] == doctest::Approx(25.0));
    CHECK(m.separations[2 * 3 + 1] == doctest::Approx(18.0));
    CHECK(m.min_separation() == doctest::Approx(1.0));
    CHECK(m.nearest(std::vector<double>{2.9, 3.5}) == 1);
  }

  TEST_CASE("an unreachable floor keeps the best-separated draw") {
    const ModelSet m = generate_models(5, 1, {0.0, 1.0}, 10.0, 3, 50);
    CHECK(m.count() == 5);
  }

  TEST_CASE("assignments cover every model") {
    for (std::size_t c : {2u, 3u, 4u, 5u}) {
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ModelSet m = assign_agents(generate_models(c, 2, {-1.0, 1.0}, 0.32, seed), 80, seed);
        CHECK(m.agents() == 80);
        std::set<std::size_t> used(m.assignment.begin(), m.assignment.end());
        CHECK(used.size() == c);
      }
    }
    // Nearly as many models as agents forces the fallback path.
    const ModelSet tight = assign_agents(generate_models(9, 2, {-1.0, 1.0}, 0.0, 1), 10, 2);
    std::set<std::size_t> used(tight.assignment.begin(), tight.assignment.end());
    CHECK(used.size() == 9);
  }

  TEST_CASE("stacked vector follows agent order") {
    ModelSet m = make_model_set(testing::rows({{1.0, 2.0}, {3.0, 4.0}}));
    m.assignment = {1, 0, 1};
    CHECK(m.stacked() == std::vector<double>{3.0, 4.0, 1.0, 2.0, 3.0, 4.0});
  }

  TEST_CASE("noiseless data satisfies the regression exactly") {
    ModelSet m = make_model_set(testing::rows({{0.3, -0.7}, {1.5, 0.25}}));
    m.assignment = {0, 1};
    const NoiseProfile quiet = NoiseProfile::uniform(2, 2, 0.0, 1.0);
    Rng rng(17);
    for (int t = 0; t < 10000; ++t) {
      const AgentId k = static_cast<AgentId>(t % 2);
      const DataSample s = sample_data(k, m, quiet, rng);
      const auto w = m.observed(k);
      CHECK(s.v == 0.0);
      CHECK(s.d - (s.u[0] * w[0] + s.u[1] * w[1]) == doctest::Approx(0.0).epsilon(1e-15));
    }
  }

  TEST_CASE("data equals regression plus the reported noise") {
    ModelSet m = make_model_set(testing::rows({{0.5, 0.5}}));
    m.assignment = {0};
    const NoiseProfile noisy = NoiseProfile::uniform(1, 2, 0.01, 1.0);
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
      const DataSample s = sample_data(0, m, noisy, rng);
      CHECK(s.d == doctest::Approx(0.5 * s.u[0] + 0.5 * s.u[1] + s.v));
    }
  }

  TEST_CASE("regressors are zero mean") {
    ModelSet m = make_model_set(testing::rows({{1.0, -1.0}}));
    m.assignment = {0};
    const NoiseProfile p = NoiseProfile::uniform(1, 2, 1e-3, 1.0);
    Rng rng(2024);
    const int n = 100000;
    double sum0 = 0.0, sum1 = 0.0;
    for (int t = 0; t < n; ++t) {
      const DataSample s = sample_data(0, m, p, rng);
      sum0 += s.u[0];
      sum1 += s.u[1];
    }
    const double bound = 3.0 * 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(sum0 / n) < bound);
    CHECK(std::abs(sum1 / n) < bound);
  }

  TEST_CASE("noise profile respects its bounds") {
    const NoiseBounds b;
    const NoiseProfile p = make_noise_profile(80, 2, b, 8);
    for (double s : p.noise_variance) {
      CHECK(s >= b.noise_variance_lo);
      CHECK(s <= b.noise_variance_hi);
    }
    for (double r : p.regressor_variance.data()) {
      CHECK(r >= b.regressor_variance_lo);
      CHECK(r <= b.regressor_variance_hi);
    }
    NoiseBounds bad;
    bad.noise_variance_lo = 0.0;
    CHECK_THROWS_AS(make_noise_profile(2, 2, bad, 1), std::invalid_argument);
  }

  TEST_CASE("same seeds give the same draws") {
    const ModelSet a = assign_agents(generate_models(4, 2, {-1.0, 1.0}, 0.32, 77), 80, 78);
    const ModelSet b = assign_agents(generate_models(4, 2, {-1.0, 1.0}, 0.32, 77), 80, 78);
    CHECK(a.models == b.models);
    CHECK(a.assignment == b.assignment);
    Rng r1(5), r2(5);
    for (int t = 0; t < 100; ++t) {
      const DataSample s1 = sample_data(3, a, make_noise_profile(80, 2, {}, 1), r1);
      const DataSample s2 = sample_data(3, b, make_noise_profile(80, 2, {}, 1), r2);
      CHECK(s1.d == s2.d);
      CHECK(s1.u == s2.u);
    }
  }

  TEST_CASE("bad arguments are rejected") {
    CHECK_THROWS_AS(generate_models(0, 2, {-1.0, 1.0}, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_models(2, 0, {-1.0, 1.0}, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(assign_agents(generate_models(5, 2, {-1.0, 1.0}, 0.0, 1), 3, 1),
                    std::invalid_argument);
  }
}
