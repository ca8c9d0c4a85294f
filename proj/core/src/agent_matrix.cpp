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

#include "mtdecide/agent_matrix.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace mtdecide {

void AgentMatrix::set_row(std::size_t r, std::span<const double> values) {
  assert(values.size() == dim_);
  std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
}

void AgentMatrix::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

bool all_finite(const AgentMatrix& m) {
  return std::all_of(m.data().begin(), m.data().end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace mtdecide
