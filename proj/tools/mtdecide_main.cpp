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

// mtdecide: run decision-making experiments over multi-task diffusion
// networks from the command line.
//
//   mtdecide decide --models 3 --trials 100
//   mtdecide follow --target-agent 10 --reassign-at 600
//   mtdecide mobile --trials 20
//   mtdecide sweep --sweep-models 2,3,4,5
//
// Every ExperimentConfig field has a flag; `--config FILE` reads the same
// keys from a TOML/INI file (key = value). The output directory may also be
// set through MTDECIDE_OUTPUT_DIR.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mtdecide/config.hpp"
#include "mtdecide/io.hpp"
#include "mtdecide/monte_carlo.hpp"
#include "mtdecide/simulation.hpp"

namespace fs = std::filesystem;
using namespace mtdecide;

namespace {

struct CliOptions {
  ExperimentConfig config;
  std::size_t target_agent = 0;  // one-based, 0 = unset
  std::string out_dir = "results";
  bool no_trial_files = false;
  bool export_network = false;
  std::size_t snapshot_every = 0;
  std::vector<std::size_t> sweep_models{2, 3, 4, 5};
  std::string sweep_mode = "decide";
  bool quiet = false;
};

std::string trial_stem(std::size_t t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "trial_%04zu", t + 1);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

class SnapshotWriter : public RoundObserver {
 public:
  SnapshotWriter(const fs::path& path, std::size_t every) : out_(path), every_(every) {}
  void on_round(const RoundView& round) override {
    if (round.iteration % every_ == 0 || round.iteration == 1) out_ << snapshot_to_json(round) << '\n';
  }

 private:
  std::ofstream out_;
  std::size_t every_;
};

MonteCarloSummary run_experiment(const ExperimentConfig& config, const CliOptions& opts,
                                 const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path trials_dir = dir / "trials";
  if (!opts.no_trial_files) fs::create_directories(trials_dir);

  if (opts.snapshot_every > 0) {
    const std::uint64_t seed = trial_seed(config.seed, 0);
    SnapshotWriter writer(dir / "snapshots_trial_0001.jsonl", opts.snapshot_every);
    run_trial(config, make_trial_setup(config, seed), seed, &writer);
  }
  if (opts.export_network) {
    for (std::size_t t = 0; t < config.n_trials; ++t) {
      const TrialSetup setup = make_trial_setup(config, trial_seed(config.seed, t));
      write_file(dir / (trial_stem(t) + "_network.json"), network_to_json(setup.topology, setup.models));
    }
  }

  std::size_t done = 0;
  auto sink = [&](std::size_t t, const RunRecord& record) {
    ++done;
    if (!opts.quiet) {
      std::cerr << "\r  " << to_string(config.mode) << ": " << done << "/" << config.n_trials
                << " trials" << std::flush;
    }
    if (opts.no_trial_files) return;
    const std::string stem = trial_stem(t);
    std::ofstream csv(trials_dir / (stem + ".csv"));
    write_rows_csv(csv, record.rows, record.models.rows());
    write_file(trials_dir / (stem + ".json"), record_to_json(record));
    if (!record.trajectory.empty()) {
      std::ofstream traj(trials_dir / (stem + "_trajectory.csv"));
      write_trajectory_csv(traj, record.trajectory);
    }
  };
  MonteCarloSummary summary = run_monte_carlo(config, sink);
  if (!opts.quiet) std::cerr << '\n';
  write_file(dir / "summary.json", summary_to_json(summary));
  return summary;
}

void add_options(CLI::App& app, CliOptions& o) {
  ExperimentConfig& c = o.config;
  app.add_option("--agents", c.n_agents, "Number of agents N");
  app.add_option("--dim", c.dim, "Model dimension M");
  app.add_option("--models", c.n_models, "Number of ground-truth models C");
  app.add_option("--max-degree", c.max_degree, "Cap on the closed neighborhood size n_k");
  app.add_option("--radius", c.radius, "Static link radius on the unit square");
  app.add_option("--range-lo", c.model_range.lo, "Lower bound of model entries");
  app.add_option("--range-hi", c.model_range.hi, "Upper bound of model entries");
  app.add_option("--noise-min", c.noise.noise_variance_lo, "Smallest noise variance");
  app.add_option("--noise-max", c.noise.noise_variance_hi, "Largest noise variance");
  app.add_option("--regressor-min", c.noise.regressor_variance_lo, "Smallest regressor variance");
  app.add_option("--regressor-max", c.noise.regressor_variance_hi, "Largest regressor variance");
  app.add_option("--alpha", c.alpha, "Clustering threshold");
  app.add_option("--beta", c.beta, "Desired-model threshold");
  app.add_option("--nu", c.nu, "Belief smoothing factor");
  app.add_option("--mu", c.mu, "LMS step size");
  app.add_option("--iters", c.max_iters, "Iterations per trial");
  app.add_option("--trials", c.n_trials, "Monte Carlo trials");
  app.add_option("--seed", c.seed, "Master seed");
  app.add_option("--target-agent", o.target_agent, "Agent to follow (one-based)");
  app.add_option("--reassign-at", c.reassign_at, "Iterations with a random model reassignment");
  app.add_option("--decision-start", c.decision_start,
                 "Iteration from which agents label, switch and update w")
      ->check(CLI::PositiveNumber);
  app.add_option("--hold-window", c.hold_window, "Agreed iterations required at the end");
  app.add_flag("!--no-equilibrium-breaking", c.equilibrium_breaking,
               "Disable the random switch between two remaining models");
  app.add_option("--threads", c.threads, "Trial worker threads (0 = all cores)");
  app.add_option("--goal-gain", c.motion.goal_gain, "Motion: weight of the goal heading");
  app.add_option("--align-gain", c.motion.align_gain, "Motion: weight of neighbor alignment");
  app.add_option("--repel-gain", c.motion.repel_gain, "Motion: weight of short-range repulsion");
  app.add_option("--max-speed", c.motion.max_speed, "Motion: speed cap (body lengths/step)");
  app.add_option("--repel-radius", c.motion.repel_radius, "Motion: repulsion range");
  app.add_option("--comm-radius", c.motion.comm_radius, "Motion: communication radius");
  app.add_option("--spawn-extent", c.motion.spawn_extent, "Motion: side of the start square");
  app.add_option("--motion-start", c.motion.start_iteration,
                 "Motion: first iteration at which agents move");
  app.add_option("--trajectory-iters", c.trajectory_iters, "Motion: iterations to export");
  app.add_option("--out-dir", o.out_dir, "Output directory")->envname("MTDECIDE_OUTPUT_DIR");
  app.add_flag("--no-trial-files", o.no_trial_files, "Only write summary.json");
  app.add_flag("--export-network", o.export_network, "Write each trial's topology and models");
  app.add_option("--snapshot-every", o.snapshot_every, "Dump trial 1 state every N iterations");
  app.add_flag("-q,--quiet", o.quiet, "No progress output");
}

void print_summary(const MonteCarloSummary& s) {
  std::printf("%s C=%zu: %zu/%zu successful (%.1f%%)\n", std::string(to_string(s.config.mode)).c_str(),
              s.config.n_models, s.successes, s.trials.size(), 100.0 * s.success_rate);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision making over multi-task diffusion networks"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  CliOptions opts;
  add_options(app, opts);
  auto* decide = app.add_subcommand("decide", "Agree on one observed model network-wide")->fallthrough();
  auto* follow = app.add_subcommand("follow", "Follow the observed model of one agent")->fallthrough();
  auto* mobile = app.add_subcommand("mobile", "Decision making in a moving swarm")->fallthrough();
  auto* sweep = app.add_subcommand("sweep", "Success rate for several model counts")->fallthrough();
  sweep->add_option("--sweep-models", opts.sweep_models, "Model counts to sweep");
  sweep->add_option("--sweep-mode", opts.sweep_mode, "Mode for each sweep point")
      ->check(CLI::IsMember({"decide", "follow", "mobile"}));

  // Mode defaults must be in place before the command line overrides them.
  Mode mode = Mode::kDecide;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (auto m = parse_mode(arg)) {
      mode = *m;
      break;
    }
    if (arg == "sweep") {
      for (int j = i + 1; j + 1 < argc; ++j) {
        if (std::string(argv[j]) == "--sweep-mode" && parse_mode(argv[j + 1])) mode = *parse_mode(argv[j + 1]);
      }
      break;
    }
  }
  opts.config = default_config(mode);
  if (opts.config.target_agent) opts.target_agent = *opts.config.target_agent + 1;

  CLI11_PARSE(app, argc, argv);

  ExperimentConfig& config = opts.config;
  config.target_agent.reset();
  if (opts.target_agent > 0) config.target_agent = opts.target_agent - 1;
  if (mode == Mode::kMobile && !follow->parsed() && opts.target_agent == 0) config.target_agent.reset();

  try {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    const fs::path dir(opts.out_dir);
    if (*sweep) {
      nlohmann::json table = nlohmann::json::array();
      for (std::size_t c : opts.sweep_models) {
        ExperimentConfig point = config;
        point.n_models = c;
        validate(point);
        const MonteCarloSummary s = run_experiment(point, opts, dir / ("C" + std::to_string(c)));
        print_summary(s);
        table.push_back({{"n_models", c}, {"successes", s.successes},
                         {"n_trials", s.trials.size()}, {"success_rate", s.success_rate}});
      }
      write_file(dir / "sweep.json",
                 nlohmann::json{{"schema_version", MonteCarloSummary::kSchemaVersion},
                                {"mode", to_string(config.mode)},
                                {"points", table}}.dump(2));
    } else {
      print_summary(run_experiment(config, opts, dir));
    }
    if (!opts.quiet) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::cerr << "done in " << secs << " s, results in " << dir << '\n';
    }
    (void)decide;
    (void)mobile;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
