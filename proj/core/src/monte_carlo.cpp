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

#include "mtdecide/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "mtdecide/rng.hpp"

namespace mtdecide {

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial) {
  return derive_seed(master_seed, trial);
}

namespace {

// Nearest-rank percentile of a sorted sample.
double percentile(const std::vector<double>& sorted, double q) {
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

template <class Get>
SeriesBand band(std::span<const RunRecord> records, std::size_t length, Get get) {
  SeriesBand b;
  b.mean.resize(length);
  b.p10.resize(length);
  b.p50.resize(length);
  b.p90.resize(length);
  b.samples.assign(length, 0);
  std::vector<double> values;
  for (std::size_t i = 0; i < length; ++i) {
    values.clear();
    for (const auto& r : records) {
      if (i >= r.rows.size()) continue;
      if (const std::optional<double> v = get(r.rows[i])) values.push_back(*v);
    }
    if (values.empty()) continue;
    b.samples[i] = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    b.mean[i] = sum / static_cast<double>(values.size());
    std::sort(values.begin(), values.end());
    b.p10[i] = percentile(values, 0.10);
    b.p50[i] = percentile(values, 0.50);
    b.p90[i] = percentile(values, 0.90);
  }
  return b;
}

}  // namespace

MonteCarloSummary summarize(const ExperimentConfig& config, std::span<const RunRecord> records) {
  MonteCarloSummary s;
  s.config = config;
  std::size_t length = 0;
  std::size_t n_models = 0;
  for (std::size_t t = 0; t < records.size(); ++t) {
    const RunRecord& r = records[t];
    const SuccessVerdict verdict = evaluate_success(r);
    TrialSummary ts;
    ts.index = t;
    ts.seed = trial_seed(config.seed, t);
    ts.success = verdict.success;
    ts.model = verdict.model;
    ts.switches = std::accumulate(r.switch_counts.begin(), r.switch_counts.end(), std::size_t{0});
    ts.first_agreement = r.first_agreement;
    ts.diverged = r.failure.has_value();
    s.trials.push_back(ts);
    if (ts.success) ++s.successes;
    length = std::max(length, r.rows.size());
    n_models = std::max(n_models, r.models.rows());
  }
  s.success_rate = records.empty() ? 0.0
                                   : static_cast<double>(s.successes) /
                                         static_cast<double>(records.size());
  for (std::size_t j = 0; j < n_models; ++j) {
    s.msd_observed.push_back(band(records, length, [j](const IterationRow& row) {
      return j < row.msd_observed.size() ? row.msd_observed[j] : std::nullopt;
    }));
  }
  s.msd_desired = band(records, length, [](const IterationRow& row) { return row.msd_desired; });
  return s;
}

MonteCarloSummary run_monte_carlo(const ExperimentConfig& config, const TrialSink& sink,
                                  const SetupFactory& factory) {
  validate(config);
  const std::size_t n = config.n_trials;
  std::vector<RunRecord> records(n);
  std::atomic<std::size_t> next{0};
  std::mutex sink_mutex;
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (std::size_t t = next++; t < n; t = next++) {
      try {
        const std::uint64_t seed = trial_seed(config.seed, t);
        TrialSetup setup = factory ? factory(config, seed) : make_trial_setup(config, seed);
        records[t] = run_trial(config, std::move(setup), seed);
        if (sink) {
          std::lock_guard lock(sink_mutex);
          sink(t, records[t]);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };

  std::size_t threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, n);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return summarize(config, records);
}

}  // namespace mtdecide
