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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "mtdecide/agent_matrix.hpp"
#include "mtdecide/topology.hpp"

namespace mtdecide {

/// N x N matrix whose column k is supported on the closed neighborhood N_k.
/// Entry (l, k) is the weight agent k assigns to neighbor l; entries outside
/// the neighborhood are structurally zero. Storage is column-compressed with
/// rows in the topology's ascending neighbor order.
template <class T>
class NeighborMatrix {
 public:
  NeighborMatrix() = default;

  explicit NeighborMatrix(const Topology& topology, T fill = T{}) : n_(topology.size()) {
    offsets_.reserve(n_ + 1);
    offsets_.push_back(0);
    for (AgentId k = 0; k < n_; ++k) {
      const auto nb = topology.neighbors(k);
      rows_.insert(rows_.end(), nb.begin(), nb.end());
      offsets_.push_back(rows_.size());
    }
    values_.assign(rows_.size(), fill);
  }

  /// Identity on the topology's support (ones on the diagonal).
  static NeighborMatrix identity(const Topology& topology) {
    NeighborMatrix m(topology, T{});
    for (AgentId k = 0; k < m.size(); ++k) m.set(k, k, T{1});
    return m;
  }

  std::size_t size() const { return n_; }

  std::span<const AgentId> rows(AgentId k) const {
    return {rows_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
  }
  std::span<T> column(AgentId k) {
    return {values_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
  }
  std::span<const T> column(AgentId k) const {
    return {values_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
  }

  /// Entry (l, k); zero when l is not a neighbor of k.
  T at(AgentId l, AgentId k) const {
    const auto r = rows(k);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] == l) return column(k)[i];
    }
    return T{};
  }

  /// Sets entry (l, k); returns false when l is outside the support.
  bool set(AgentId l, AgentId k, T value) {
    const auto r = rows(k);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] == l) {
        column(k)[i] = value;
        return true;
      }
    }
    return false;
  }

  void fill(T value) { std::fill(values_.begin(), values_.end(), value); }

  double column_sum(AgentId k) const {
    const auto c = column(k);
    return std::accumulate(c.begin(), c.end(), 0.0);
  }

  /// Dense copy, entry (l, k) at l * N + k.
  std::vector<T> dense() const {
    std::vector<T> out(n_ * n_, T{});
    for (AgentId k = 0; k < n_; ++k) {
      const auto r = rows(k);
      const auto c = column(k);
      for (std::size_t i = 0; i < r.size(); ++i) out[r[i] * n_ + k] = c[i];
    }
    return out;
  }

  bool operator==(const NeighborMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<AgentId> rows_;
  std::vector<T> values_;
};

/// Combination-weight matrix (A, G, A_dot, A_ddot).
using WeightMatrix = NeighborMatrix<double>;
/// 0/1 relation matrix (H).
using RelationMatrix = NeighborMatrix<std::uint8_t>;

/// Column k of the result is sum_l W(l, k) * x_l.
void combine(const WeightMatrix& weights, const AgentMatrix& x, AgentMatrix& out);

/// Uniform weights over the entries of `mask` that are set, written to the
/// matching column of `weights`. The column must have a nonzero mask entry.
void uniform_column(std::span<const std::uint8_t> mask, std::span<double> weights);

}  // namespace mtdecide
