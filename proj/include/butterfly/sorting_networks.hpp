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

#pragma once

#include <bit>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace butterfly {

/// Compare-exchange gate. After it fires, the smaller key sits at `low` and
/// the larger at `high`; `low` may be the larger position index.
struct Comparator {
  std::size_t low = 0;
  std::size_t high = 0;

  friend bool operator==(const Comparator &, const Comparator &) = default;
};

enum class HostKind { Path, Hypercube };

struct ComparatorNetwork {
  std::size_t width = 0;
  HostKind host = HostKind::Path;
  std::vector<std::vector<Comparator>> stages;

  std::size_t depth() const noexcept { return stages.size(); }
};

/// Ascending compare-exchange. Equal keys are left in place.
template <typename Key>
constexpr std::pair<Key, Key> comparator(const Key &x, const Key &y) {
  if (y < x) return {y, x};
  return {x, y};
}

/// Pipelined insertion sort on a path of m positions. Comparator (j, j+1)
/// fires at every stage t with j <= t <= 2m - 4 - j and t - j even, giving
/// the diamond pattern of depth 2m - 3.
inline ComparatorNetwork insertion_network(std::size_t m) {
  if (m < 2) throw std::invalid_argument("insertion network needs width >= 2");
  ComparatorNetwork net;
  net.width = m;
  net.host = HostKind::Path;
  const std::size_t depth = 2 * m - 3;
  net.stages.resize(depth);
  for (std::size_t t = 0; t < depth; ++t) {
    for (std::size_t j = t % 2; j + 1 < m; j += 2) {
      if (j <= t && t + j <= 2 * m - 4) net.stages[t].push_back({j, j + 1});
    }
  }
  return net;
}

/// Batcher's bitonic sorter on 2^k positions. Every comparator joins
/// positions differing in a single bit.
inline ComparatorNetwork bitonic_network(std::size_t m) {
  if (m < 2 || !std::has_single_bit(m)) {
    throw std::invalid_argument("bitonic network width must be a power of two >= 2");
  }
  ComparatorNetwork net;
  net.width = m;
  net.host = HostKind::Hypercube;
  for (std::size_t block = 2; block <= m; block <<= 1) {
    for (std::size_t dist = block >> 1; dist > 0; dist >>= 1) {
      std::vector<Comparator> stage;
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t partner = i ^ dist;
        if (partner < i) continue;
        const bool ascending = (i & block) == 0;
        stage.push_back(ascending ? Comparator{i, partner} : Comparator{partner, i});
      }
      net.stages.push_back(std::move(stage));
    }
  }
  return net;
}

/// Keys after the network plus, per stage, the comparators that swapped.
template <typename Key>
struct NetworkRun {
  std::vector<Key> keys;
  std::vector<std::vector<Comparator>> swaps;
};

template <typename Key>
NetworkRun<Key> run_network(const ComparatorNetwork &net, std::vector<Key> keys) {
  if (keys.size() != net.width) {
    throw std::invalid_argument("key count does not match network width");
  }
  NetworkRun<Key> run;
  run.swaps.resize(net.stages.size());
  for (std::size_t s = 0; s < net.stages.size(); ++s) {
    for (const Comparator &c : net.stages[s]) {
      if (keys[c.high] < keys[c.low]) {
        std::swap(keys[c.low], keys[c.high]);
        run.swaps[s].push_back(c);
      }
    }
  }
  run.keys = std::move(keys);
  return run;
}

}  // namespace butterfly
