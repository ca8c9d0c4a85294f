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

#include "mtdecide/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>

#include "mtdecide/rng.hpp"

namespace mtdecide {

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Topology::Topology(std::vector<Point2> positions,
                   std::span<const std::pair<AgentId, AgentId>> edges)
    : positions_(std::move(positions)), neighbors_(positions_.size()) {
  const std::size_t n = positions_.size();
  for (AgentId k = 0; k < n; ++k) neighbors_[k].push_back(k);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw std::out_of_range("edge endpoint outside topology");
    if (a == b) continue;
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
  }
  for (auto& nb : neighbors_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
}

std::size_t Topology::max_degree() const {
  std::size_t m = 0;
  for (const auto& nb : neighbors_) m = std::max(m, nb.size());
  return m;
}

bool Topology::linked(AgentId a, AgentId b) const {
  const auto& nb = neighbors_[b];
  return std::binary_search(nb.begin(), nb.end(), a);
}

std::vector<std::pair<AgentId, AgentId>> Topology::edges() const {
  std::vector<std::pair<AgentId, AgentId>> out;
  for (AgentId a = 0; a < size(); ++a) {
    for (AgentId b : neighbors_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::uint8_t> Topology::dense_adjacency() const {
  const std::size_t n = size();
  std::vector<std::uint8_t> adj(n * n, 0);
  for (AgentId k = 0; k < n; ++k) {
    for (AgentId l : neighbors_[k]) adj[l * n + k] = 1;
  }
  return adj;
}

std::vector<int> bfs_depths(const Topology& topology, AgentId source) {
  std::vector<int> depth(topology.size(), -1);
  std::deque<AgentId> queue{source};
  depth[source] = 0;
  while (!queue.empty()) {
    const AgentId k = queue.front();
    queue.pop_front();
    for (AgentId l : topology.neighbors(k)) {
      if (depth[l] < 0) {
        depth[l] = depth[k] + 1;
        queue.push_back(l);
      }
    }
  }
  return depth;
}

bool is_connected(const Topology& topology) {
  if (topology.size() == 0) return true;
  const auto depth = bfs_depths(topology, 0);
  return std::none_of(depth.begin(), depth.end(), [](int d) { return d < 0; });
}

namespace {

// Open adjacency lists used while pruning.
using Links = std::vector<std::vector<AgentId>>;

Links radius_links(std::span<const Point2> positions, double radius) {
  Links links(positions.size());
  for (AgentId a = 0; a < positions.size(); ++a) {
    for (AgentId b = a + 1; b < positions.size(); ++b) {
      if (distance(positions[a], positions[b]) <= radius) {
        links[a].push_back(b);
        links[b].push_back(a);
      }
    }
  }
  return links;
}

void drop_link(Links& links, AgentId a, AgentId b) {
  std::erase(links[a], b);
  std::erase(links[b], a);
}

// Whether b stays reachable from a once the link a-b is removed.
bool has_detour(const Links& links, AgentId a, AgentId b) {
  std::vector<char> seen(links.size(), 0);
  std::deque<AgentId> queue{a};
  seen[a] = 1;
  while (!queue.empty()) {
    const AgentId k = queue.front();
    queue.pop_front();
    for (AgentId l : links[k]) {
      if ((k == a && l == b) || (k == b && l == a) || seen[l]) continue;
      if (l == b) return true;
      seen[l] = 1;
      queue.push_back(l);
    }
  }
  return false;
}

// Candidate links of agent k, longest first (ties by neighbor index).
std::vector<AgentId> longest_first(const Links& links, std::span<const Point2> positions,
                                   AgentId k) {
  std::vector<AgentId> order = links[k];
  std::stable_sort(order.begin(), order.end(), [&](AgentId a, AgentId b) {
    return distance(positions[k], positions[a]) > distance(positions[k], positions[b]);
  });
  return order;
}

// Prunes links so every closed neighborhood fits in max_degree without
// splitting any component. Returns false if some agent could not be brought
// under the cap that way.
bool prune_preserving(Links& links, std::span<const Point2> positions,
                      std::size_t max_degree) {
  bool ok = true;
  for (AgentId k = 0; k < links.size(); ++k) {
    if (links[k].size() + 1 <= max_degree) continue;
    for (AgentId j : longest_first(links, positions, k)) {
      if (links[k].size() + 1 <= max_degree) break;
      if (has_detour(links, k, j)) drop_link(links, k, j);
    }
    if (links[k].size() + 1 > max_degree) ok = false;
  }
  return ok;
}

Topology to_topology(std::span<const Point2> positions, const Links& links) {
  std::vector<std::pair<AgentId, AgentId>> edges;
  for (AgentId a = 0; a < links.size(); ++a) {
    for (AgentId b : links[a]) {
      if (a < b) edges.emplace_back(a, b);
    }
  }
  return Topology(std::vector<Point2>(positions.begin(), positions.end()), edges);
}

}  // namespace

Topology generate_topology(const TopologyParams& params, std::uint64_t seed) {
  if (params.n_agents < 2) throw std::invalid_argument("generate_topology: n_agents must be >= 2");
  if (params.max_degree < 2) throw std::invalid_argument("generate_topology: max_degree must be >= 2");
  if (!(params.radius > 0.0)) throw std::invalid_argument("generate_topology: radius must be > 0");

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point2> positions(params.n_agents);
  for (std::size_t attempt = 0; attempt < params.max_attempts; ++attempt) {
    for (auto& p : positions) {
      p.x = unit(rng);
      p.y = unit(rng);
    }
    Links links = radius_links(positions, params.radius);
    if (!prune_preserving(links, positions, params.max_degree)) continue;
    Topology topology = to_topology(positions, links);
    if (is_connected(topology)) return topology;
  }
  throw TopologyError("generate_topology: no connected graph with n_k <= " +
                      std::to_string(params.max_degree) + " at radius " +
                      std::to_string(params.radius) + " after " +
                      std::to_string(params.max_attempts) + " placements");
}

Topology rebuild_topology(std::span<const Point2> positions, double radius,
                          std::size_t max_degree) {
  Links links = radius_links(positions, radius);
  if (prune_preserving(links, positions, max_degree)) return to_topology(positions, links);
  // Some agent sits on bridges only; cap it anyway.
  for (AgentId k = 0; k < links.size(); ++k) {
    if (links[k].size() + 1 <= max_degree) continue;
    for (AgentId j : longest_first(links, positions, k)) {
      if (links[k].size() + 1 <= max_degree) break;
      drop_link(links, k, j);
    }
  }
  return to_topology(positions, links);
}

}  // namespace mtdecide
