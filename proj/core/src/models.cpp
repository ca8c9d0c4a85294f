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

#include "mtdecide/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mtdecide {

std::vector<double> ModelSet::stacked() const {
  std::vector<double> out;
  out.reserve(agents() * dim());
  for (AgentId k = 0; k < agents(); ++k) {
    const auto w = observed(k);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

std::vector<AgentId> ModelSet::followers(std::size_t j) const {
  std::vector<AgentId> out;
  for (AgentId k = 0; k < assignment.size(); ++k) {
    if (assignment[k] == j) out.push_back(k);
  }
  return out;
}

std::size_t ModelSet::nearest(std::span<const double> v) const {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < count(); ++j) {
    const double d = squared_distance(v, model(j));
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

double ModelSet::min_separation() const {
  double m = std::numeric_limits<double>::infinity();
  const std::size_t c = count();
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = a + 1; b < c; ++b) m = std::min(m, separations[a * c + b]);
  }
  return m;
}

ModelSet make_model_set(AgentMatrix models) {
  ModelSet set;
  const std::size_t c = models.rows();
  set.separations.assign(c * c, 0.0);
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = 0; b < c; ++b) {
      set.separations[a * c + b] = squared_distance(models.row(a), models.row(b));
    }
  }
  set.models = std::move(models);
  return set;
}

ModelSet generate_models(std::size_t n_models, std::size_t dim, Interval range,
                         double separation_floor, std::uint64_t seed, std::size_t max_attempts) {
  if (n_models < 1 || dim < 1) throw std::invalid_argument("generate_models: need n_models, dim >= 1");
  if (!(range.lo < range.hi)) throw std::invalid_argument("generate_models: empty range");
  Rng rng(seed);
  std::uniform_real_distribution<double> entry(range.lo, range.hi);

  ModelSet best;
  double best_sep = -1.0;
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(max_attempts, 1); ++attempt) {
    AgentMatrix z(n_models, dim);
    for (std::size_t j = 0; j < n_models; ++j) {
      for (std::size_t m = 0; m < dim; ++m) z(j, m) = entry(rng);
    }
    ModelSet candidate = make_model_set(std::move(z));
    const double sep = candidate.min_separation();
    if (sep > separation_floor) return candidate;
    if (sep > best_sep) {
      best_sep = sep;
      best = std::move(candidate);
    }
  }
  return best;
}

ModelSet assign_agents(ModelSet models, std::size_t n_agents, std::uint64_t seed) {
  const std::size_t c = models.count();
  if (c == 0) throw std::invalid_argument("assign_agents: empty model set");
  if (c > n_agents) throw std::invalid_argument("assign_agents: more models than agents");
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, c - 1);
  std::vector<std::size_t> assignment(n_agents);
  std::vector<std::size_t> counts(c);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::fill(counts.begin(), counts.end(), 0);
    for (auto& a : assignment) {
      a = pick(rng);
      ++counts[a];
    }
    if (std::find(counts.begin(), counts.end(), 0) == counts.end()) {
      models.assignment = std::move(assignment);
      return models;
    }
  }
  // Nearly one follower per model: seed every model once, fill the rest.
  std::vector<AgentId> order(n_agents);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < n_agents; ++i) assignment[order[i]] = i < c ? i : pick(rng);
  models.assignment = std::move(assignment);
  return models;
}

NoiseProfile NoiseProfile::uniform(std::size_t n_agents, std::size_t dim, double noise_variance,
                                   double regressor_variance) {
  NoiseProfile p;
  p.noise_variance.assign(n_agents, noise_variance);
  p.regressor_variance = AgentMatrix(n_agents, dim, regressor_variance);
  return p;
}

NoiseProfile make_noise_profile(std::size_t n_agents, std::size_t dim, const NoiseBounds& bounds,
                                std::uint64_t seed) {
  if (!(bounds.noise_variance_lo > 0.0) || bounds.noise_variance_hi < bounds.noise_variance_lo ||
      !(bounds.regressor_variance_lo > 0.0) ||
      bounds.regressor_variance_hi < bounds.regressor_variance_lo) {
    throw std::invalid_argument("make_noise_profile: variances must be positive, lo <= hi");
  }
  Rng rng(seed);
  std::uniform_real_distribution<double> log_noise(std::log(bounds.noise_variance_lo),
                                                   std::log(bounds.noise_variance_hi));
  std::uniform_real_distribution<double> regressor(bounds.regressor_variance_lo,
                                                   bounds.regressor_variance_hi);
  NoiseProfile p;
  p.noise_variance.resize(n_agents);
  p.regressor_variance = AgentMatrix(n_agents, dim);
  for (AgentId k = 0; k < n_agents; ++k) {
    p.noise_variance[k] = std::exp(log_noise(rng));
    for (std::size_t m = 0; m < dim; ++m) p.regressor_variance(k, m) = regressor(rng);
  }
  return p;
}

void sample_data(AgentId k, const ModelSet& models, const NoiseProfile& noise, Rng& rng,
                 DataSample& out) {
  const auto w = models.observed(k);
  const auto r = noise.regressor_variance.row(k);
  std::normal_distribution<double> gauss(0.0, 1.0);
  out.u.resize(w.size());
  double d = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m) {
    out.u[m] = std::sqrt(r[m]) * gauss(rng);
    d += out.u[m] * w[m];
  }
  const double sigma2 = noise.noise_variance[k];
  out.v = sigma2 > 0.0 ? std::sqrt(sigma2) * gauss(rng) : 0.0;
  out.d = d + out.v;
}

DataSample sample_data(AgentId k, const ModelSet& models, const NoiseProfile& noise, Rng& rng) {
  DataSample s;
  sample_data(k, models, noise, rng, s);
  return s;
}

}  // namespace mtdecide
