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

#include "mtdecide/labeling.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace mtdecide {

Label binary_label(std::span<const std::uint8_t> bits) {
  if (bits.size() > kMaxNeighborhood) throw std::length_error("binary_label: more than 64 bits");
  Label value = 0;
  for (auto bit : bits) value = (value << 1) | (bit ? 1u : 0u);
  return value;
}

double agreement_degree(const LabelView& view) {
  const std::size_t n = view.size();
  std::size_t ones = 0;
  for (std::size_t c = 0; c < n; ++c) ones += view.y_at(view.self_index, c);
  return static_cast<double>(ones) / static_cast<double>(n);
}

void derive_labels(LabelView& view) {
  const std::size_t n = view.size();
  assert(view.y.size() == n * n);
  if (n > kMaxNeighborhood) throw std::length_error("derive_labels: neighborhood exceeds 64");

  view.labels.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    Label value = 0;
    for (std::size_t r = 0; r < n; ++r) value = (value << 1) | view.y_at(r, c);
    view.labels[c] = value;
  }

  // Classes by first appearance; n <= 64 so a quadratic scan is cheapest.
  view.label_class.assign(n, 0);
  std::size_t classes = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t id = classes;
    for (std::size_t p = 0; p < c; ++p) {
      if (view.labels[p] == view.labels[c]) {
        id = view.label_class[p];
        break;
      }
    }
    view.label_class[c] = id;
    if (id == classes) ++classes;
  }
  view.model_count = classes;

  std::size_t counts[kMaxNeighborhood] = {};
  for (std::size_t c = 0; c < n; ++c) ++counts[view.label_class[c]];
  const std::size_t own = view.label_class[view.self_index];
  std::size_t best = own;
  for (std::size_t id = 0; id < classes; ++id) {
    // Strictly larger wins; ties keep k's own class, else the lowest id
    // (the class whose lowest member index is smallest).
    if (counts[id] > counts[best] || (counts[id] == counts[best] && best != own && id < best)) {
      best = id;
    }
  }
  view.majority_class = best;
  view.majority.clear();
  for (std::size_t c = 0; c < n; ++c) {
    if (view.label_class[c] == best) view.majority.push_back(view.members[c]);
  }
  view.agreement = agreement_degree(view);
}

void build_label_view(AgentId k, const AgentMatrix& w_prev, const Topology& topology,
                      double beta, LabelView& out) {
  const auto nb = topology.neighbors(k);
  const std::size_t n = nb.size();
  out.agent = k;
  out.members.assign(nb.begin(), nb.end());
  out.self_index = static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), k) - nb.begin());
  out.y.assign(n * n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    out.y[r * n + r] = 1;
    const auto wr = w_prev.row(nb[r]);
    for (std::size_t c = r + 1; c < n; ++c) {
      const std::uint8_t close = squared_distance(wr, w_prev.row(nb[c])) <= beta ? 1 : 0;
      out.y[r * n + c] = close;
      out.y[c * n + r] = close;
    }
  }
  derive_labels(out);
}

LabelView build_label_view(AgentId k, const AgentMatrix& w_prev, const Topology& topology,
                           double beta) {
  LabelView view;
  build_label_view(k, w_prev, topology, beta, view);
  return view;
}

}  // namespace mtdecide
