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

#include <map>
#include <random>
#include <set>

#include "butterfly/edge_coloring.hpp"
#include "support.hpp"

namespace butterfly {
namespace {

// Properness re-derived by grouping edges by endpoint.
bool independently_proper(const RoutingGraph &rg, const EdgeColoring &c) {
  std::map<std::size_t, std::multiset<std::size_t>> by_src, by_dst;
  for (std::size_t e = 0; e < rg.edges.size(); ++e) {
    by_src[rg.edges[e].source_row].insert(c[e]);
    by_dst[rg.edges[e].dest_row].insert(c[e]);
  }
  for (const auto *side : {&by_src, &by_dst}) {
    for (const auto &[node, colors] : *side) {
      if (std::set<std::size_t>(colors.begin(), colors.end()).size() != colors.size()) {
        return false;
      }
    }
  }
  return true;
}

TEST_CASE("identity permutation gives parallel edges", "[coloring]") {
  const auto rg = build_routing_graph(Permutation::identity(24), 3);
  REQUIRE(rg.edges.size() == 24);
  for (const auto &e : rg.edges) CHECK(e.source_row == e.dest_row);
  const auto c = color_edges(rg);
  CHECK(validate_coloring(rg, c));
  for (std::size_t w = 0; w < 8; ++w) {
    std::set<std::size_t> colors{c[3 * w], c[3 * w + 1], c[3 * w + 2]};
    CHECK(colors.size() == 3);
  }
}

TEST_CASE("row rotation maps u_w to v_{w+1}", "[coloring]") {
  std::vector<NodeIndex> image(24);
  for (NodeIndex a = 0; a < 24; ++a) image[a] = ((a / 3 + 1) % 8) * 3 + a % 3;
  const auto rg = build_routing_graph(Permutation(image), 3);
  for (const auto &e : rg.edges) CHECK(e.dest_row == (e.source_row + 1) % 8);
  CHECK(validate_coloring(rg, color_edges(rg)));
}

TEST_CASE("routing graph is regular on both sides", "[coloring]") {
  std::mt19937_64 rng(11);
  for (std::size_t r = 3; r <= 6; ++r) {
    const std::size_t n = r << r;
    const auto rg = build_routing_graph(testing::random_permutation(n, rng), r);
    std::vector<std::size_t> out(rg.rows, 0), in(rg.rows, 0);
    for (const auto &e : rg.edges) {
      ++out[e.source_row];
      ++in[e.dest_row];
    }
    for (std::size_t w = 0; w < rg.rows; ++w) {
      CHECK(out[w] == r);
      CHECK(in[w] == r);
    }
  }
}

TEST_CASE("size mismatch is rejected", "[coloring]") {
  CHECK_THROWS_AS(build_routing_graph(Permutation::identity(23), 3),
                  std::invalid_argument);
}

TEST_CASE("random routing graphs color properly with r colors", "[coloring]") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rg = build_routing_graph(testing::random_permutation(24, rng), 3);
    const auto c = color_edges(rg);
    REQUIRE(validate_coloring(rg, c));
    REQUIRE(independently_proper(rg, c));
    REQUIRE(std::set<std::size_t>(c.begin(), c.end()) == std::set<std::size_t>{0, 1, 2});
  }
}

TEST_CASE("each color class is a perfect matching", "[coloring]") {
  std::mt19937_64 rng(5);
  for (std::size_t r = 3; r <= 7; ++r) {
    const auto rg = build_routing_graph(testing::random_permutation(r << r, rng), r);
    const auto c = color_edges(rg);
    // Removing the first k classes leaves every node with degree r - k.
    for (std::size_t k = 0; k <= r; ++k) {
      std::vector<std::size_t> out(rg.rows, 0), in(rg.rows, 0);
      for (std::size_t e = 0; e < rg.edges.size(); ++e) {
        if (c[e] < k) continue;
        ++out[rg.edges[e].source_row];
        ++in[rg.edges[e].dest_row];
      }
      for (std::size_t w = 0; w < rg.rows; ++w) {
        REQUIRE(out[w] == r - k);
        REQUIRE(in[w] == r - k);
      }
    }
  }
}

TEST_CASE("1-regular graph takes a single color", "[coloring]") {
  RoutingGraph rg{4, 1, {{0, 2, 0}, {1, 0, 1}, {2, 3, 2}, {3, 1, 3}}};
  const auto c = color_edges(rg);
  CHECK(c == EdgeColoring{0, 0, 0, 0});
  CHECK(validate_coloring(rg, c));
}

TEST_CASE("validate_coloring catches violations", "[coloring]") {
  const auto rg = build_routing_graph(Permutation::identity(24), 3);
  auto c = color_edges(rg);
  auto clash = c;
  clash[1] = clash[0];
  CHECK_FALSE(validate_coloring(rg, clash));
  auto out_of_range = c;
  out_of_range[0] = 3;
  CHECK_FALSE(validate_coloring(rg, out_of_range));
  CHECK_FALSE(validate_coloring(rg, EdgeColoring(5, 0)));
}

TEST_CASE("irregular input reports an internal error", "[coloring]") {
  RoutingGraph rg{2, 2, {{0, 0, 0}, {0, 0, 1}, {1, 1, 2}, {1, 0, 3}}};
  CHECK_THROWS_AS(color_edges(rg), ColoringError);
}

TEST_CASE("coloring is deterministic", "[coloring]") {
  std::mt19937_64 rng(99);
  const auto pi = testing::random_permutation(5 << 5, rng);
  const auto rg = build_routing_graph(pi, 5);
  CHECK(color_edges(rg) == color_edges(rg));
}

}  // namespace
}  // namespace butterfly
