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

#include "mtdecide/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "mtdecide/rng.hpp"

namespace mtdecide {

TrialSetup make_trial_setup(const ExperimentConfig& config, std::uint64_t trial_seed) {
  validate(config);
  TrialSetup setup;
  ModelSet models = generate_models(config.n_models, config.dim, config.model_range,
                                    config.separation_floor(),
                                    derive_seed(trial_seed, streams::kModels));
  setup.models = assign_agents(std::move(models), config.n_agents,
                               derive_seed(trial_seed, streams::kAssignment));
  setup.noise = make_noise_profile(config.n_agents, config.dim, config.noise,
                                   derive_seed(trial_seed, streams::kNoise));
  if (config.mode == Mode::kMobile) {
    setup.motion = spawn_swarm(config.n_agents, config.motion.spawn_extent,
                               config.motion.comm_radius, config.max_degree,
                               derive_seed(trial_seed, streams::kSpawn));
    setup.topology = rebuild_topology(setup.motion->positions, config.motion.comm_radius,
                                      config.max_degree);
  } else {
    TopologyParams params;
    params.n_agents = config.n_agents;
    params.max_degree = config.max_degree;
    params.radius = config.radius;
    setup.topology = generate_topology(params, derive_seed(trial_seed, streams::kTopology));
  }
  return setup;
}

namespace {

class Simulator {
 public:
  Simulator(const ExperimentConfig& config, TrialSetup setup, std::uint64_t trial_seed,
            RoundObserver* observer)
      : config_(config),
        seed_(trial_seed),
        observer_(observer),
        topology_(std::move(setup.topology)),
        models_(std::move(setup.models)),
        noise_(std::move(setup.noise)),
        motion_(std::move(setup.motion)),
        n_(models_.agents()),
        dim_(models_.dim()),
        diffusion_(DiffusionState::zeros(n_, dim_, config.mu)),
        clusters_(ClusterMatrices::identity(n_, config.alpha, config.nu)),
        combination_(WeightMatrix::identity(topology_)),
        w_prev_(n_, dim_),
        w_(n_, dim_),
        desired_(DesiredMatrices::identity(topology_)),
        labels_(n_),
        samples_(n_) {
    data_rngs_.reserve(n_);
    switch_rngs_.reserve(n_);
    for (AgentId k = 0; k < n_; ++k) {
      data_rngs_.push_back(make_rng(seed_, streams::kAgentData + k));
      switch_rngs_.push_back(make_rng(seed_, streams::kAgentSwitch + k));
    }
    if (config_.follows()) anchor_ = AnchorState::init(n_, dim_, *config_.target_agent);

    double max_norm = 1.0;
    for (std::size_t j = 0; j < models_.count(); ++j) {
      max_norm = std::max(max_norm, std::sqrt(squared_norm(models_.model(j))));
    }
    divergence_bound_ = config_.divergence_factor * max_norm;

    record_.mode = config_.mode;
    record_.beta = config_.beta;
    record_.hold_window = config_.hold_window;
    record_.models = models_.models;
    record_.target_agent = config_.follows() ? config_.target_agent : std::nullopt;
    record_.switch_counts.assign(n_, 0);
    record_.rows.reserve(config_.max_iters);
  }

  RunRecord run() {
    const auto start = std::chrono::steady_clock::now();
    try {
      for (std::size_t i = 1; i <= config_.max_iters; ++i) round(i);
    } catch (const DivergenceError& e) {
      record_.failure = e.what();
    }
    record_.assignment = models_.assignment;
    record_.final_w = w_prev_;
    record_.final_agreement.resize(n_);
    for (AgentId k = 0; k < n_; ++k) record_.final_agreement[k] = labels_[k].agreement;
    record_.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(record_);
  }

 private:
  void round(std::size_t i) {
    if (std::find(config_.reassign_at.begin(), config_.reassign_at.end(), i) !=
        config_.reassign_at.end()) {
      models_ = assign_agents(std::move(models_), n_,
                              derive_seed(seed_, streams::kReassignment + i));
      agreed_model_.reset();
    }

    // Adaptation.
    for (AgentId k = 0; k < n_; ++k) sample_data(k, models_, noise_, data_rngs_[k], samples_[k]);
    adapt(diffusion_, samples_, divergence_bound_);
    const bool deciding = i >= config_.decision_start;
    if (i == config_.decision_start) w_prev_ = diffusion_.psi;

    // Clustering and aggregation; phi still holds phi_{i-1} for the test.
    update_cluster_matrices(clusters_, diffusion_.psi, diffusion_.phi, topology_);
    combination_from_beliefs(clusters_, topology_, combination_);
    std::swap(diffusion_.phi_prev, diffusion_.phi);
    aggregate(diffusion_.psi, combination_, diffusion_.phi);

    // Local labeling on the pre-switch estimates.
    bool all_agreed = true;
    for (AgentId k = 0; k < n_; ++k) {
      build_label_view(k, w_prev_, topology_, config_.beta, labels_[k]);
      all_agreed = all_agreed && labels_[k].agreed();
    }

    if (anchor_) spread_anchor(*anchor_, diffusion_.psi, topology_);
    if (!deciding) {
      w_ = diffusion_.psi;
      all_agreed = false;
    } else if (anchor_) {
      update_follow_matrices(*anchor_, diffusion_.psi, topology_, config_.beta, desired_);
    } else {
      apply_switches();
      update_desired_matrices(w_prev_, diffusion_.psi, topology_, config_.beta, desired_);
    }
    if (deciding) update_estimate(w_prev_, diffusion_.phi, desired_, w_);

    record_row(i, all_agreed);

    if (observer_) {
      observer_->on_round(RoundView{i, topology_, models_, diffusion_, clusters_, combination_,
                                    labels_, w_prev_, desired_, w_,
                                    anchor_ ? &*anchor_ : nullptr,
                                    motion_ ? &*motion_ : nullptr});
    }
    std::swap(w_prev_, w_);

    if (motion_ && deciding && i >= config_.motion.start_iteration) {
      step_motion(*motion_, w_prev_, topology_, config_.motion);
      topology_ = rebuild_topology(motion_->positions, config_.motion.comm_radius,
                                   config_.max_degree);
      record_trajectory(i);
    }
  }

  // All decisions read the pre-switch estimates; results publish together.
  void apply_switches() {
    switch_source_ = w_prev_;
    for (AgentId k = 0; k < n_; ++k) {
      if (labels_[k].agreed()) continue;
      const SwitchResult r =
          switch_decision(labels_[k], switch_rngs_[k], config_.equilibrium_breaking);
      if (r.changes_source(k)) {
        w_prev_.set_row(k, switch_source_.row(r.adopt_from));
        ++record_.switch_counts[k];
      }
    }
  }

  void record_row(std::size_t i, bool all_agreed) {
    IterationRow row;
    row.iteration = i;
    row.msd_observed = msd_observed(diffusion_.phi, models_);
    row.all_agreed = all_agreed;
    row.distinct_desired = count_desired_classes(w_, config_.beta);
    if (anchor_) row.coverage = anchor_->coverage();
    if (!all_agreed) agreed_model_.reset();
    if (all_agreed) {
      if (!record_.first_agreement) record_.first_agreement = i;
      if (anchor_) {
        agreed_model_ = models_.assignment[anchor_->target];
      } else if (!agreed_model_) {
        std::vector<double> mean(dim_, 0.0);
        for (AgentId k = 0; k < n_; ++k) {
          for (std::size_t m = 0; m < dim_; ++m) mean[m] += w_(k, m) / static_cast<double>(n_);
        }
        agreed_model_ = models_.nearest(mean);
      }
      row.msd_desired = msd_desired(w_, models_.model(*agreed_model_));
    }
    record_.rows.push_back(std::move(row));
  }

  void record_trajectory(std::size_t i) {
    if (std::find(config_.trajectory_iters.begin(), config_.trajectory_iters.end(), i) ==
        config_.trajectory_iters.end()) {
      return;
    }
    for (AgentId k = 0; k < n_; ++k) {
      const auto w = w_prev_.row(k);
      const std::size_t j = models_.nearest(w);
      const bool close = squared_distance(w, models_.model(j)) <= config_.beta;
      record_.trajectory.push_back(
          {i, k, motion_->positions[k].x, motion_->positions[k].y, close ? j + 1 : 0});
    }
  }

  const ExperimentConfig& config_;
  std::uint64_t seed_;
  RoundObserver* observer_;

  Topology topology_;
  ModelSet models_;
  NoiseProfile noise_;
  std::optional<MotionState> motion_;
  std::size_t n_;
  std::size_t dim_;
  double divergence_bound_ = 0.0;

  DiffusionState diffusion_;
  ClusterMatrices clusters_;
  WeightMatrix combination_;
  AgentMatrix w_prev_;
  AgentMatrix w_;
  AgentMatrix switch_source_;
  DesiredMatrices desired_;
  std::optional<AnchorState> anchor_;
  std::vector<LabelView> labels_;
  std::vector<DataSample> samples_;
  std::vector<Rng> data_rngs_;
  std::vector<Rng> switch_rngs_;
  std::optional<std::size_t> agreed_model_;

  RunRecord record_;
};

}  // namespace

RunRecord run_trial(const ExperimentConfig& config, TrialSetup setup, std::uint64_t trial_seed,
                    RoundObserver* observer) {
  validate(config);
  if (setup.models.agents() != setup.topology.size()) {
    throw ConfigError("trial setup: assignment and topology disagree on the number of agents");
  }
  if (config.follows() && *config.target_agent >= setup.topology.size()) {
    throw ConfigError("trial setup: target agent outside the network");
  }
  Simulator sim(config, std::move(setup), trial_seed, observer);
  return sim.run();
}

}  // namespace mtdecide
