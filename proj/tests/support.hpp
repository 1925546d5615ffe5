// Copyright 2026 The Butterfly Router Authors
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

// Test-only helpers: random instance generators and oracles derived
// directly from definitions, independent of the library code paths.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "butterfly/compiler.hpp"
#include "butterfly/schedule.hpp"

namespace butterfly::testing {

inline std::vector<std::size_t> shuffled(std::size_t n, std::mt19937_64 &rng) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

inline Permutation random_permutation(std::size_t n, std::mt19937_64 &rng) {
  return Permutation(shuffled(n, rng));
}

/// Edge rule evaluated on printed binary words: (w, i) ~ (v, i+1 mod r) iff
/// the words are equal or differ exactly at character i.
inline bool oracle_is_edge(std::size_t r, std::size_t a, std::size_t b) {
  auto word = [&](std::size_t idx) {
    std::string s;
    std::size_t w = idx / r;
    for (std::size_t k = 0; k < r; ++k) s.insert(s.begin(), char('0' + (w >> k & 1)));
    return s;
  };
  auto forward = [&](std::size_t x, std::size_t y) {
    const std::size_t i = x % r;
    if (y % r != (i + 1) % r) return false;
    const std::string wx = word(x), wy = word(y);
    std::size_t diffs = 0;
    bool only_i = true;
    for (std::size_t k = 0; k < r; ++k) {
      if (wx[k] != wy[k]) {
        ++diffs;
        only_i = only_i && k == i;
      }
    }
    return diffs == 0 || (diffs == 1 && only_i);
  };
  return a != b && (forward(a, b) || forward(b, a));
}

/// Q_r built from the Hamming rule.
inline std::vector<std::vector<std::size_t>> hypercube(std::size_t r) {
  const std::size_t m = std::size_t{1} << r;
  std::vector<std::vector<std::size_t>> adj(m);
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) {
      if (std::popcount(u ^ v) == 1) adj[u].push_back(v);
    }
  }
  return adj;
}

/// Random circuit on all n nodes' worth of qubits with up to `max_pairs`
/// two-qubit gates per timestep, plus single-qubit gates on some idle qubits.
inline Circuit random_circuit(std::size_t qubits, std::size_t max_pairs,
                              std::size_t steps, std::mt19937_64 &rng) {
  Circuit c;
  c.qubits = qubits;
  const char *two[] = {"CNOT", "CZ", "ISWAP"};
  const char *one[] = {"H", "T", "S"};
  for (std::size_t t = 0; t < steps; ++t) {
    auto order = shuffled(qubits, rng);
    const std::size_t limit = std::min(max_pairs, qubits / 2);
    const std::size_t pairs = std::uniform_int_distribution<std::size_t>(0, limit)(rng);
    Timestep step;
    for (std::size_t k = 0; k < pairs; ++k) {
      step.push_back({two[rng() % 3], {order[2 * k], order[2 * k + 1]}});
    }
    for (std::size_t k = 2 * pairs; k < qubits; ++k) {
      if (rng() % 4 == 0) step.push_back({one[rng() % 3], {order[k]}});
    }
    c.timesteps.push_back(std::move(step));
  }
  return c;
}

/// Independent replay: positions of tokens after executing every routing
/// layer by plain swaps and simultaneous moves.
inline std::vector<std::size_t> replay_positions(std::size_t n, const Schedule &s) {
  std::vector<std::size_t> at(n);  // token at node
  std::iota(at.begin(), at.end(), std::size_t{0});
  for (const auto &layer : s.layers) {
    if (const auto *sw = std::get_if<SwapLayer>(&layer.body)) {
      for (auto [a, b] : sw->pairs) std::swap(at[a], at[b]);
    } else if (const auto *sh = std::get_if<ShiftLayer>(&layer.body)) {
      auto next = at;
      for (auto [a, b] : sh->moves) next[b] = at[a];
      at = next;
    }
  }
  std::vector<std::size_t> pos(n);
  for (std::size_t v = 0; v < n; ++v) pos[at[v]] = v;
  return pos;
}

}  // namespace butterfly::testing
