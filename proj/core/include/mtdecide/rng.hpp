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
#include <random>

namespace mtdecide {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Used to derive independent stream seeds from a
/// master seed so that every stream is reproducible on its own.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of child stream `stream` under `parent`. Trial t of a Monte Carlo run
/// uses derive_seed(master, t); inside a trial the fixed stream ids below
/// select the construction and per-agent streams.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) {
  return mix_seed(mix_seed(parent) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

namespace streams {
inline constexpr std::uint64_t kTopology = 1;
inline constexpr std::uint64_t kModels = 2;
inline constexpr std::uint64_t kAssignment = 3;
inline constexpr std::uint64_t kNoise = 4;
inline constexpr std::uint64_t kSpawn = 5;
inline constexpr std::uint64_t kReassignment = 6;
// Per-agent streams: kAgentData + k and kAgentSwitch + k.
inline constexpr std::uint64_t kAgentData = 1'000'000;
inline constexpr std::uint64_t kAgentSwitch = 2'000'000;
}  // namespace streams

inline Rng make_rng(std::uint64_t parent, std::uint64_t stream) {
  return Rng(derive_seed(parent, stream));
}

}  // namespace mtdecide
