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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "butterfly/sorting_networks.hpp"

namespace butterfly {
namespace {

bool sorts_all_binary(const ComparatorNetwork &net) {
  for (std::size_t bits = 0; bits < (std::size_t{1} << net.width); ++bits) {
    std::vector<int> keys(net.width);
    for (std::size_t i = 0; i < net.width; ++i) keys[i] = (bits >> i) & 1;
    const auto run = run_network(net, keys);
    if (!std::is_sorted(run.keys.begin(), run.keys.end())) return false;
  }
  return true;
}

bool sorts_all_permutations(const ComparatorNetwork &net) {
  std::vector<int> keys(net.width);
  std::iota(keys.begin(), keys.end(), 0);
  do {
    const auto run = run_network(net, keys);
    if (!std::is_sorted(run.keys.begin(), run.keys.end())) return false;
  } while (std::next_permutation(keys.begin(), keys.end()));
  return true;
}

bool stages_disjoint(const ComparatorNetwork &net) {
  for (const auto &stage : net.stages) {
    std::vector<bool> used(net.width, false);
    for (const auto &c : stage) {
      if (used[c.low] || used[c.high]) return false;
      used[c.low] = used[c.high] = true;
    }
  }
  return true;
}

TEST_CASE("comparator orders ascending", "[sorting]") {
  CHECK(comparator(2, 5) == std::pair{2, 5});
  CHECK(comparator(5, 2) == std::pair{2, 5});
  CHECK(comparator(3, 3) == std::pair{3, 3});
}

TEST_CASE("insertion network depth is 2m - 3", "[sorting]") {
  CHECK(insertion_network(8).depth() == 13);
  CHECK(insertion_network(2).depth() == 1);
  CHECK(insertion_network(2).stages[0] == std::vector<Comparator>{{0, 1}});
  for (std::size_t m = 2; m <= 64; ++m) REQUIRE(insertion_network(m).depth() == 2 * m - 3);
  CHECK_THROWS_AS(insertion_network(1), std::invalid_argument);
}

TEST_CASE("insertion network has the diamond shape", "[sorting]") {
  // Wires (0,1) fire at every even stage; wires (m-2, m-1) only in the middle.
  const auto net = insertion_network(8);
  std::vector<std::size_t> fires(7, 0);
  for (const auto &stage : net.stages) {
    for (const auto &c : stage) {
      REQUIRE(c.high == c.low + 1);
      ++fires[c.low];
    }
  }
  CHECK(fires == std::vector<std::size_t>{7, 6, 5, 4, 3, 2, 1});
  CHECK(stages_disjoint(net));
}

TEST_CASE("insertion network sorts every input", "[sorting]") {
  for (std::size_t m = 2; m <= 12; ++m) REQUIRE(sorts_all_binary(insertion_network(m)));
  for (std::size_t m = 2; m <= 8; ++m) REQUIRE(sorts_all_permutations(insertion_network(m)));
}

TEST_CASE("bitonic network depth and wiring", "[sorting]") {
  CHECK(bitonic_network(8).depth() == 6);
  CHECK(bitonic_network(2).depth() == 1);
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto net = bitonic_network(std::size_t{1} << k);
    REQUIRE(net.depth() == k * (k + 1) / 2);
    REQUIRE(stages_disjoint(net));
    for (const auto &stage : net.stages) {
      for (const auto &c : stage) REQUIRE(std::popcount(c.low ^ c.high) == 1);
    }
  }
  CHECK_THROWS_AS(bitonic_network(6), std::invalid_argument);
  CHECK_THROWS_AS(bitonic_network(1), std::invalid_argument);
}

TEST_CASE("bitonic network sorts every input", "[sorting]") {
  for (std::size_t m : {2, 4, 8}) REQUIRE(sorts_all_binary(bitonic_network(m)));
  REQUIRE(sorts_all_permutations(bitonic_network(8)));
}

TEST_CASE("run_network reports executed swaps", "[sorting]") {
  const auto net = insertion_network(4);
  const auto sorted = run_network(net, std::vector<int>{1, 2, 3, 4});
  for (const auto &stage : sorted.swaps) CHECK(stage.empty());

  const auto reversed = run_network(net, std::vector<int>{4, 3, 2, 1});
  CHECK(reversed.keys == std::vector<int>{1, 2, 3, 4});
  std::size_t total = 0;
  for (const auto &stage : reversed.swaps) total += stage.size();
  CHECK(total == 6);

  CHECK_THROWS_AS(run_network(net, std::vector<int>{1, 2}), std::invalid_argument);
}

TEST_CASE("replaying executed swaps reproduces the output", "[sorting][property]") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> keys(8);
    for (auto &k : keys) k = static_cast<int>(rng() % 100);
    const auto ins = run_network(insertion_network(8), keys);
    const auto bit = run_network(bitonic_network(8), keys);
    REQUIRE(ins.keys == bit.keys);
    auto replay = keys;
    std::size_t swaps = 0;
    for (const auto &stage : ins.swaps) {
      for (const auto &c : stage) {
        std::swap(replay[c.low], replay[c.high]);
        ++swaps;
      }
    }
    REQUIRE(replay == ins.keys);
    // Adjacent transposition sorting performs exactly one swap per inversion.
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      for (std::size_t j = i + 1; j < keys.size(); ++j) inversions += keys[i] > keys[j];
    }
    REQUIRE(swaps == inversions);
  }
}

}  // namespace
}  // namespace butterfly
