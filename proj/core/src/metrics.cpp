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

#include "mtdecide/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mtdecide {

std::vector<std::optional<double>> msd_observed(const AgentMatrix& phi, const ModelSet& models) {
  const std::size_t c = models.count();
  std::vector<double> sum(c, 0.0);
  std::vector<std::size_t> count(c, 0);
  for (AgentId k = 0; k < models.agents(); ++k) {
    const std::size_t j = models.assignment[k];
    sum[j] += squared_distance(models.model(j), phi.row(k));
    ++count[j];
  }
  std::vector<std::optional<double>> out(c);
  for (std::size_t j = 0; j < c; ++j) {
    if (count[j] > 0) out[j] = sum[j] / static_cast<double>(count[j]);
  }
  return out;
}

double msd_desired(const AgentMatrix& w, std::span<const double> z_d) {
  double sum = 0.0;
  for (AgentId k = 0; k < w.rows(); ++k) sum += squared_distance(z_d, w.row(k));
  return sum / static_cast<double>(w.rows());
}

std::size_t count_desired_classes(const AgentMatrix& w, double beta) {
  const std::size_t n = w.rows();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t classes = n;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t ra = find(a);
      const std::size_t rb = find(b);
      if (ra == rb || squared_distance(w.row(a), w.row(b)) > beta) continue;
      parent[std::max(ra, rb)] = std::min(ra, rb);
      --classes;
    }
  }
  return classes;
}

SuccessVerdict evaluate_success(const RunRecord& record) {
  SuccessVerdict verdict;
  if (record.failure || record.final_w.empty() || record.models.empty()) return verdict;

  const ModelSet models = make_model_set(record.models);
  const std::size_t candidate = models.nearest(record.final_w.row(0));
  bool all_close = true;
  for (AgentId k = 0; k < record.final_w.rows(); ++k) {
    if (squared_distance(record.final_w.row(k), models.model(candidate)) > record.beta) {
      all_close = false;
      break;
    }
  }
  if (all_close) verdict.model = candidate;

  const std::size_t hold = record.hold_window;
  bool held = record.rows.size() >= hold;
  for (std::size_t i = record.rows.size() - std::min(hold, record.rows.size());
       held && i < record.rows.size(); ++i) {
    held = record.rows[i].all_agreed;
  }

  bool right_model = true;
  if (record.target_agent && (record.mode == Mode::kFollow || record.mode == Mode::kMobile)) {
    right_model = verdict.model && *verdict.model == record.assignment.at(*record.target_agent);
  }
  verdict.success = held && all_close && right_model;
  return verdict;
}

}  // namespace mtdecide
