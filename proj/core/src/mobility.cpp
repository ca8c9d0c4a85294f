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

#include "mtdecide/mobility.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "mtdecide/rng.hpp"

namespace mtdecide {

MotionState spawn_swarm(std::size_t n_agents, double extent, double comm_radius,
                        std::size_t max_degree, std::uint64_t seed, std::size_t max_attempts) {
  Rng rng(seed);
  std::uniform_real_distribution<double> coord(-extent / 2.0, extent / 2.0);
  MotionState s;
  s.positions.resize(n_agents);
  s.velocities.assign(n_agents, Point2{});
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (auto& p : s.positions) {
      p.x = coord(rng);
      p.y = coord(rng);
    }
    if (is_connected(rebuild_topology(s.positions, comm_radius, max_degree))) return s;
  }
  throw TopologyError("spawn_swarm: no connected start within " + std::to_string(max_attempts) +
                      " placements; widen comm_radius or shrink spawn_extent");
}

void step_motion(MotionState& state, const AgentMatrix& targets, const Topology& topology,
                 const MotionParams& params) {
  if (targets.dim() != 2) throw std::invalid_argument("step_motion: targets must be 2-D");
  const std::size_t n = state.positions.size();
  assert(targets.rows() == n && topology.size() == n);
  const auto pos = state.positions;
  const auto vel = state.velocities;

  for (AgentId k = 0; k < n; ++k) {
    const Point2 target{targets(k, 0), targets(k, 1)};
    const double dx = target.x - pos[k].x;
    const double dy = target.y - pos[k].y;
    const double gap = std::hypot(dx, dy);
    Point2 goal{};
    if (gap > 0.0) goal = {dx / gap, dy / gap};

    Point2 align{};
    Point2 repel{};
    std::size_t others = 0;
    for (AgentId l : topology.neighbors(k)) {
      if (l == k) continue;
      ++others;
      align.x += vel[l].x;
      align.y += vel[l].y;
      const double rx = pos[k].x - pos[l].x;
      const double ry = pos[k].y - pos[l].y;
      const double r = std::hypot(rx, ry);
      if (r > 0.0 && r < params.repel_radius) {
        const double push = (1.0 - r / params.repel_radius) / r;
        repel.x += push * rx;
        repel.y += push * ry;
      }
    }
    if (others > 0) {
      align.x /= static_cast<double>(others) * params.max_speed;
      align.y /= static_cast<double>(others) * params.max_speed;
    }

    const double hx = params.goal_gain * goal.x + params.align_gain * align.x +
                      params.repel_gain * repel.x;
    const double hy = params.goal_gain * goal.y + params.align_gain * align.y +
                      params.repel_gain * repel.y;
    const double heading = std::hypot(hx, hy);
    const double speed = std::min(params.max_speed, gap);
    Point2 v{};
    if (heading > 0.0 && speed > 0.0) v = {speed * hx / heading, speed * hy / heading};
    state.velocities[k] = v;
    state.positions[k].x += v.x;
    state.positions[k].y += v.y;
  }
}

}  // namespace mtdecide
