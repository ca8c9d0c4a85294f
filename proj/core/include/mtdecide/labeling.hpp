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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mtdecide/agent_matrix.hpp"
#include "mtdecide/topology.hpp"

namespace mtdecide {

/// Label of a neighbor: its column of Y read as a binary number, first row
/// most significant. Neighborhoods are limited to 64 members.
using Label = std::uint64_t;
inline constexpr std::size_t kMaxNeighborhood = 64;

/// Agent k's local picture of which desired models its neighbors hold.
///
/// `members` is N_k in ascending agent order; Y is indexed by member
/// position (row-major, n x n). Equal labels identify neighbors whose Y
/// columns coincide, which is all the majority set, model count and
/// agreement degree depend on.
struct LabelView {
  AgentId agent = 0;
  std::size_t self_index = 0;
  std::vector<AgentId> members;
  std::vector<std::uint8_t> y;
  std::vector<Label> labels;
  /// Class id per member, numbered by first appearance in member order.
  std::vector<std::size_t> label_class;
  std::size_t model_count = 0;      // C_k
  std::size_t majority_class = 0;
  std::vector<AgentId> majority;    // Q_k, ascending
  double agreement = 0.0;           // p_k

  std::size_t size() const { return members.size(); }
  std::uint8_t y_at(std::size_t row, std::size_t col) const { return y[row * size() + col]; }
  bool self_in_majority() const { return label_class[self_index] == majority_class; }
  bool agreed() const { return agreement == 1.0; }
};

Label binary_label(std::span<const std::uint8_t> bits);

/// Y^k from pairwise beta-tests on the previous desired estimates of N_k,
/// followed by labels, C_k, Q_k and p_k. `out` is reused across calls.
void build_label_view(AgentId k, const AgentMatrix& w_prev, const Topology& topology,
                      double beta, LabelView& out);
LabelView build_label_view(AgentId k, const AgentMatrix& w_prev, const Topology& topology,
                           double beta);

/// Completes a view from an explicit Y (members, self position and y set).
void derive_labels(LabelView& view);

/// p_k = (row k of Y) 1 / n_k.
double agreement_degree(const LabelView& view);

}  // namespace mtdecide
