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

// Acceptance suite. Prints one PASS/FAIL line per criterion followed by the
// measurements behind it, and exits nonzero if any criterion fails. All
// tolerances, trial counts and run lengths are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "invariant_observer.hpp"
#include "mtdecide/io.hpp"
#include "mtdecide/labeling.hpp"
#include "mtdecide/monte_carlo.hpp"
#include "mtdecide/rng.hpp"
#include "mtdecide/simulation.hpp"
#include "test_support.hpp"

using namespace mtdecide;

namespace {

// 1. Success-rate table.
constexpr std::size_t kTableTrials = 100;
constexpr std::size_t kTableIters = 10000;
constexpr double kTableMinRate = 0.95;
// 2. Following a designated agent.
constexpr std::size_t kFollowTrials = 100;
constexpr double kFollowMinRate = 0.98;
constexpr double kSpikeMinDb = 10.0;
constexpr double kReconvergeMaxDb = 3.0;
// 3. Learning curves.
constexpr double kLearningMinDropDb = 20.0;
constexpr double kDesiredFloorMaxDb = 6.0;
constexpr std::size_t kSteadyWindow = 500;
// 4. Labeling oracle.
constexpr std::size_t kOracleInstances = 1000;
// 5. Invariants.
constexpr std::size_t kInvariantDecideTrials = 3;
constexpr std::size_t kInvariantFollowTrials = 2;
// 6. Deadlock.
constexpr std::size_t kDeadlockTrials = 100;
constexpr std::size_t kDeadlockIters = 2000;
constexpr std::size_t kDeadlockMinSuccesses = 95;
// 7. Mobile swarm.
constexpr std::size_t kMobileTrials = 100;
constexpr std::size_t kMobileCheckIter = 1000;
constexpr double kCaptureRadius = 5.0;
constexpr double kMobileMinRate = 0.90;
// 8. Determinism.
constexpr std::size_t kDeterminismTrials = 8;
// Reported only.
constexpr std::size_t kMajorityTrials = 100;
constexpr std::size_t kMajorityIters = 3000;
constexpr std::size_t kLiteralTrials = 20;

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double db(double ratio) { return 10.0 * std::log10(ratio); }

// Median of the defined entries of `series` over iterations [first, last]
// (one-based, inclusive).
std::optional<double> window_median(const std::vector<std::optional<double>>& series,
                                    std::size_t first, std::size_t last) {
  std::vector<double> v;
  for (std::size_t i = first; i <= last && i <= series.size(); ++i) {
    if (series[i - 1]) v.push_back(*series[i - 1]);
  }
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

ExperimentConfig table_config(std::size_t models) {
  ExperimentConfig c = default_config(Mode::kDecide);
  c.n_models = models;
  c.max_iters = kTableIters;
  c.n_trials = kTableTrials;
  return c;
}

// ---------------------------------------------------------------------------

Outcome table_reproduction(std::map<std::size_t, MonteCarloSummary>& summaries) {
  Outcome o{true, "", {}};
  for (std::size_t models : {2, 3, 4, 5}) {
    const MonteCarloSummary s = run_monte_carlo(table_config(models));
    o.pass = o.pass && s.success_rate >= kTableMinRate;
    o.summary += fmt("%sC=%zu %zu/%zu", o.summary.empty() ? "" : ", ", models, s.successes,
                     s.trials.size());
    std::size_t agreed_wrong = 0;
    for (const auto& t : s.trials) agreed_wrong += !t.success && t.first_agreement.has_value();
    o.details.push_back(fmt("C=%zu: %zu/%zu successful over %zu iterations", models, s.successes,
                            s.trials.size(), kTableIters));
    summaries.emplace(models, std::move(s));
  }
  o.summary += fmt(" (need >= %.0f%% each)", 100 * kTableMinRate);

  // The smoothing weight enters the belief update as 1 - nu; with nu itself
  // set to 0.005 beliefs carry no memory. Reported for comparison only.
  ExperimentConfig literal = table_config(3);
  literal.nu = 0.005;
  literal.n_trials = kLiteralTrials;
  const MonteCarloSummary s = run_monte_carlo(literal);
  o.details.push_back(fmt("info: C=3 with memory weight nu=0.005 (innovation 0.995): %zu/%zu",
                          s.successes, s.trials.size()));
  return o;
}

Outcome follow_agent() {
  const ExperimentConfig c = [] {
    ExperimentConfig c = default_config(Mode::kFollow);
    c.n_trials = kFollowTrials;
    return c;
  }();
  const MonteCarloSummary s = run_monte_carlo(c);
  const std::size_t change = c.reassign_at.front();
  const auto& msd = s.msd_desired.mean;
  const auto floor = window_median(msd, change - 100, change - 1);
  std::optional<double> peak;
  for (std::size_t i = change; i < change + 20 && i <= msd.size(); ++i) {
    if (msd[i - 1]) peak = std::max(peak.value_or(0.0), *msd[i - 1]);
  }
  const auto settled = window_median(msd, c.max_iters - 50, c.max_iters);

  const bool rate_ok = s.success_rate >= kFollowMinRate;
  const bool spike_ok = floor && peak && db(*peak / *floor) >= kSpikeMinDb;
  const bool settle_ok = floor && settled && db(*settled / *floor) <= kReconvergeMaxDb;
  Outcome o;
  o.pass = rate_ok && spike_ok && settle_ok;
  o.summary = fmt("%zu/%zu successful (need >= %.0f%%); spike %s, re-convergence %s",
                  s.successes, s.trials.size(), 100 * kFollowMinRate, spike_ok ? "ok" : "missing",
                  settle_ok ? "ok" : "missing");
  if (floor && peak && settled) {
    o.details.push_back(fmt("mean MSD_d: floor before %zu = %.3g, peak after = %.3g (%+.1f dB), "
                            "final = %.3g (%+.1f dB, need <= %.0f dB)",
                            change, *floor, *peak, db(*peak / *floor), *settled,
                            db(*settled / *floor), kReconvergeMaxDb));
  }
  const auto settled_p50 = window_median(s.msd_desired.p50, c.max_iters - 50, c.max_iters);
  const auto floor_p50 = window_median(s.msd_desired.p50, change - 100, change - 1);
  if (settled_p50 && floor_p50) {
    o.details.push_back(fmt("info: per-iteration median over trials: floor %.3g, final %.3g",
                            *floor_p50, *settled_p50));
  }
  return o;
}

Outcome learning_curves(const MonteCarloSummary& s) {
  Outcome o{true, "", {}};
  const std::size_t last = s.msd_desired.mean.size();
  const std::size_t from = last - kSteadyWindow + 1;
  std::optional<double> best;
  double worst_drop = 1e9;
  for (std::size_t j = 0; j < s.msd_observed.size(); ++j) {
    const auto& m = s.msd_observed[j].mean;
    const auto start = m.front();
    const auto steady = window_median(m, from, last);
    if (!start || !steady) {
      o.pass = false;
      continue;
    }
    const double drop = db(*start / *steady);
    worst_drop = std::min(worst_drop, drop);
    o.pass = o.pass && drop >= kLearningMinDropDb;
    best = std::min(best.value_or(*steady), *steady);
    o.details.push_back(fmt("MSD_%zu: %.3g at i=1 -> %.3g steady (%.1f dB drop)", j + 1, *start,
                            *steady, drop));
  }
  // MSD_d uses the per-iteration median over trials: the few trials that
  // never agree carry a large MSD_d and would dominate a mean.
  const auto desired = window_median(s.msd_desired.p50, from, last);
  double gap = 1e9;
  if (desired && best) {
    gap = db(*desired / *best);
    o.details.push_back(fmt("MSD_d steady median %.3g vs best MSD_j floor %.3g (%+.1f dB)",
                            *desired, *best, gap));
  }
  if (const auto mean = window_median(s.msd_desired.mean, from, last); mean && best) {
    o.details.push_back(fmt("info: mean MSD_d over trials %.3g (%+.1f dB)", *mean, db(*mean / *best)));
  }
  o.pass = o.pass && desired && std::abs(gap) <= kDesiredFloorMaxDb;
  o.summary = fmt("C=3: smallest drop %.1f dB (need >= %.0f), MSD_d within %.1f dB of the floor "
                  "(need <= %.0f)",
                  worst_drop, kLearningMinDropDb, std::abs(gap), kDesiredFloorMaxDb);
  return o;
}

Outcome labeling_oracle() {
  std::size_t mismatches = 0;
  std::size_t views = 0;
  Rng rng(2718);
  const AgentMatrix models = testing::rows({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}});
  for (std::size_t instance = 0; instance < kOracleInstances; ++instance) {
    const std::size_t n = 2 + instance % 5;
    std::bernoulli_distribution link(0.6);
    std::vector<std::pair<AgentId, AgentId>> edges;
    for (AgentId a = 0; a < n; ++a) {
      for (AgentId b = a + 1; b < n; ++b) {
        if (link(rng)) edges.emplace_back(a, b);
      }
    }
    const Topology t = testing::graph(n, edges);
    std::uniform_int_distribution<int> pick(0, 1 + static_cast<int>(instance % 3));
    std::vector<int> model_of(n);
    AgentMatrix w(n, 2);
    for (AgentId a = 0; a < n; ++a) {
      model_of[a] = pick(rng);
      w.set_row(a, models.row(model_of[a]));
    }
    for (AgentId k = 0; k < n; ++k) {
      ++views;
      const LabelView v = build_label_view(k, w, t, 0.08);
      // Exhaustive pairwise classes.
      const auto nb = t.neighbors(k);
      std::vector<std::vector<AgentId>> classes;
      for (AgentId a : nb) {
        auto it = std::find_if(classes.begin(), classes.end(), [&](const auto& c) {
          return squared_distance(w.row(c.front()), w.row(a)) <= 0.08;
        });
        if (it == classes.end()) {
          classes.push_back({a});
        } else {
          it->push_back(a);
        }
      }
      std::size_t largest = 0;
      for (const auto& c : classes) largest = std::max(largest, c.size());
      std::vector<AgentId> expected;
      for (const auto& c : classes) {
        const bool own = std::find(c.begin(), c.end(), k) != c.end();
        if (c.size() == largest && own) expected = c;
      }
      if (expected.empty()) {
        for (const auto& c : classes) {
          if (c.size() == largest) {
            expected = c;
            break;
          }
        }
      }
      std::size_t own_size = 0;
      for (const auto& c : classes) {
        if (std::find(c.begin(), c.end(), k) != c.end()) own_size = c.size();
      }
      const double p = static_cast<double>(own_size) / static_cast<double>(nb.size());
      if (v.majority != expected || v.model_count != classes.size() || v.agreement != p) {
        ++mismatches;
      }
    }
  }

  // Six members k, l, m, n, o, q as agents 0..5.
  LabelView worked;
  worked.members = {0, 1, 2, 3, 4, 5};
  worked.y = {1, 0, 0, 1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0,
              1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1};
  derive_labels(worked);
  std::map<std::size_t, std::vector<AgentId>> groups;
  for (std::size_t i = 0; i < 6; ++i) groups[worked.label_class[i]].push_back(worked.members[i]);
  std::vector<std::vector<AgentId>> got;
  for (auto& [_, g] : groups) got.push_back(g);
  const bool worked_ok = got == std::vector<std::vector<AgentId>>{{0, 3, 5}, {1, 2}, {4}} &&
                         worked.majority == std::vector<AgentId>{0, 3, 5} &&
                         worked.agreement == 0.5 &&
                         worked.labels == std::vector<Label>{37, 24, 24, 37, 2, 37};

  Outcome o;
  o.pass = mismatches == 0 && worked_ok;
  o.summary = fmt("%zu instances / %zu views, %zu mismatches; worked example %s", kOracleInstances,
                  views, mismatches, worked_ok ? "ok" : "wrong");
  o.details.push_back("worked example classes {k,n,q} {l,m} {o}, labels 37 24 24 37 2 37, p_k = 0.5");
  return o;
}

Outcome invariants() {
  testing::InvariantObserver obs;
  auto run = [&](const ExperimentConfig& c, std::size_t trials) {
    for (std::size_t t = 0; t < trials; ++t) {
      obs.next_trial();
      const std::uint64_t seed = trial_seed(c.seed, t);
      run_trial(c, make_trial_setup(c, seed), seed, &obs);
    }
  };
  run(default_config(Mode::kDecide), kInvariantDecideTrials);
  run(default_config(Mode::kFollow), kInvariantFollowTrials);
  Outcome o;
  o.pass = obs.violations() == 0;
  o.summary = fmt("%zu rounds checked (decision and follow runs), %zu violations", obs.rounds(),
                  obs.violations());
  for (const auto& e : obs.examples()) o.details.push_back(e);
  return o;
}

// Two four-agent cliques joined by the links 0-4 and 1-5; each clique
// observes its own model.
TrialSetup deadlock_setup(const ExperimentConfig& c, std::uint64_t seed) {
  TrialSetup s;
  std::vector<std::pair<AgentId, AgentId>> edges;
  for (AgentId base : {0u, 4u}) {
    for (AgentId a = 0; a < 4; ++a) {
      for (AgentId b = a + 1; b < 4; ++b) edges.emplace_back(base + a, base + b);
    }
  }
  edges.emplace_back(0, 4);
  edges.emplace_back(1, 5);
  s.topology = testing::graph(8, edges);
  s.models = make_model_set(testing::rows({{0.5, 0.5}, {-0.5, -0.5}}));
  s.models.assignment = {0, 0, 0, 0, 1, 1, 1, 1};
  s.noise = make_noise_profile(8, 2, c.noise, derive_seed(seed, streams::kNoise));
  return s;
}

Outcome equilibrium_breaking() {
  ExperimentConfig c = default_config(Mode::kDecide);
  c.n_agents = 8;
  c.n_models = 2;
  c.max_iters = kDeadlockIters;
  c.n_trials = kDeadlockTrials;
  c.equilibrium_breaking = false;
  const MonteCarloSummary off = run_monte_carlo(c, {}, deadlock_setup);
  c.equilibrium_breaking = true;
  const MonteCarloSummary on = run_monte_carlo(c, {}, deadlock_setup);
  Outcome o;
  o.pass = off.successes == 0 && on.successes >= kDeadlockMinSuccesses;
  o.summary = fmt("without breaking %zu/%zu reach consensus (need 0), with breaking %zu/%zu "
                  "(need >= %zu)",
                  off.successes, off.trials.size(), on.successes, on.trials.size(),
                  kDeadlockMinSuccesses);
  return o;
}

Outcome mobile_swarm() {
  ExperimentConfig c = default_config(Mode::kMobile);
  c.trajectory_iters = {kMobileCheckIter};
  testing::InvariantObserver speed(c.motion.max_speed);
  std::size_t captured = 0;
  std::size_t decided = 0;
  for (std::size_t t = 0; t < kMobileTrials; ++t) {
    speed.next_trial();
    const std::uint64_t seed = trial_seed(c.seed, t);
    const RunRecord r = run_trial(c, make_trial_setup(c, seed), seed, &speed);
    decided += evaluate_success(r).success;
    for (std::size_t j = 0; j < r.models.rows(); ++j) {
      bool all = !r.trajectory.empty();
      for (const auto& p : r.trajectory) {
        all = all && std::hypot(p.x - r.models(j, 0), p.y - r.models(j, 1)) <= kCaptureRadius;
      }
      if (all) {
        ++captured;
        break;
      }
    }
  }
  const double rate = static_cast<double>(captured) / kMobileTrials;
  Outcome o;
  o.pass = rate >= kMobileMinRate && speed.violations() == 0;
  o.summary = fmt("%zu/%zu swarms within %.0f body lengths of one source at i=%zu (need >= "
                  "%.0f%%); %zu speed-cap violations",
                  captured, kMobileTrials, kCaptureRadius, kMobileCheckIter, 100 * kMobileMinRate,
                  speed.violations());
  o.details.push_back(fmt("info: %zu/%zu runs also meet the estimate-based success rule", decided,
                          kMobileTrials));
  return o;
}

Outcome determinism() {
  ExperimentConfig c = default_config(Mode::kDecide);
  c.n_trials = kDeterminismTrials;
  c.threads = 1;
  const std::string a = summary_to_json(run_monte_carlo(c));
  const std::string b = summary_to_json(run_monte_carlo(c));
  c.threads = 4;
  const std::string p = summary_to_json(run_monte_carlo(c));
  c.seed = 2;
  const std::string other = summary_to_json(run_monte_carlo(c));
  Outcome o;
  o.pass = a == b && a == p && a != other;
  o.summary = fmt("serial rerun %s, 4 threads %s, different seed %s", a == b ? "identical" : "DIFFERS",
                  a == p ? "identical" : "DIFFERS", a != other ? "differs" : "IDENTICAL");
  return o;
}

// A 70/10 split between two models; reported, not asserted.
std::string majority_measurement() {
  ExperimentConfig c = default_config(Mode::kDecide);
  c.n_models = 2;
  c.max_iters = kMajorityIters;
  c.n_trials = kMajorityTrials;
  auto factory = [](const ExperimentConfig& cfg, std::uint64_t seed) {
    TrialSetup s = make_trial_setup(cfg, seed);
    std::vector<std::size_t> a(cfg.n_agents, 0);
    std::fill(a.end() - 10, a.end(), 1);
    Rng rng(derive_seed(seed, streams::kAssignment));
    std::shuffle(a.begin(), a.end(), rng);
    s.models.assignment = a;
    return s;
  };
  const MonteCarloSummary s = run_monte_carlo(c, {}, factory);
  std::size_t majority = 0;
  std::size_t minority = 0;
  for (const auto& t : s.trials) {
    if (t.success && t.model == std::size_t{0}) ++majority;
    if (t.success && t.model == std::size_t{1}) ++minority;
  }
  return fmt("info: C=2 with 70/10 followers: %zu/%zu on the majority model, %zu on the minority",
             majority, kMajorityTrials, minority);
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  std::map<std::size_t, MonteCarloSummary> table;
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"Success-rate table", [&] { return table_reproduction(table); }},
      {"Following a designated agent", follow_agent},
      {"Learning curves", [&] { return learning_curves(table.at(3)); }},
      {"Labeling oracle", labeling_oracle},
      {"Round invariants", invariants},
      {"Equilibrium breaking", equilibrium_breaking},
      {"Mobile swarm", mobile_swarm},
      {"Determinism", determinism},
  };
  std::size_t failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = clock::now();
    const Outcome o = criteria[i].run();
    failed += !o.pass;
    std::printf("[%s] %zu. %s: %s (%.0f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.summary.c_str(), std::chrono::duration<double>(clock::now() - t0).count());
    for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
    std::fflush(stdout);
  }
  std::printf("       %s\n", majority_measurement().c_str());
  std::printf("%zu/%zu criteria passed in %.0f s\n", criteria.size() - failed, criteria.size(),
              std::chrono::duration<double>(clock::now() - start).count());
  return failed == 0 ? 0 : 1;
}
