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

#include <random>

#include "butterfly/io.hpp"
#include "support.hpp"

namespace butterfly {
namespace {

TEST_CASE("schedule json round trip preserves verification", "[io]") {
  std::mt19937_64 rng(42);
  const auto g = build_butterfly(4);
  const auto pi = testing::random_permutation(g.size(), rng);
  const auto s = route_permutation(g, pi).schedule;
  const auto text = io::to_json(s).dump();
  const auto back = io::schedule_from_json(io::json::parse(text));
  CHECK(io::to_json(back).dump() == text);
  CHECK(verify_schedule(g, back, pi).passed());
  const auto pi_back = io::permutation_from_json(io::json::parse(io::to_json(pi).dump()));
  CHECK(pi_back == pi);
}

TEST_CASE("schedule json layout", "[io]") {
  Schedule s{3, {{SwapLayer{{{0, 1}}}, Phase::RowSort}, {ShiftLayer{{{1, 2}}}, Phase::ColumnRoute}}};
  const auto j = io::to_json(s);
  CHECK(j.at("r") == 3);
  CHECK(j.at("layers")[0].at("kind") == "swap");
  CHECK(j.at("layers")[0].at("phase") == 1);
  CHECK(j.at("layers")[0].at("moves") == io::json::parse("[[0,1]]"));
  CHECK(j.at("layers")[1].at("kind") == "shift");
}

TEST_CASE("permutation accepts bare arrays and image objects", "[io]") {
  CHECK(io::permutation_from_json(io::json::parse("[1,0,2]")).image() ==
        std::vector<NodeIndex>{1, 0, 2});
  CHECK(io::permutation_from_json(io::json::parse(R"({"image":[2,0,1]})")).image() ==
        std::vector<NodeIndex>{2, 0, 1});
  CHECK_THROWS_AS(io::permutation_from_json(io::json::parse("[1,1]")), std::invalid_argument);
  CHECK_THROWS_AS(io::permutation_from_json(io::json::parse(R"(["a"])")), io::FormatError);
}

TEST_CASE("circuit and program json", "[io]") {
  const auto j = io::json::parse(
      R"({"qubits": 4, "timesteps": [[{"gate":"CNOT","q":[3,1]}, {"gate":"H","q":[0]}]]})");
  const auto c = io::circuit_from_json(j);
  REQUIRE(c.qubits == 4);
  REQUIRE(c.timesteps.size() == 1);
  CHECK(c.timesteps[0][0] == Gate{"CNOT", {3, 1}});
  CHECK(c.timesteps[0][1] == Gate{"H", {0}});

  const auto g = build_butterfly(3);
  const auto p = compile_circuit(g, c);
  const auto pj = io::to_json(p);
  CHECK(pj.at("layers").back().at("kind") == "gate");
  CHECK(pj.at("layers").back().at("gates")[0].at("gate") == "H");
  const auto back = io::program_from_json(io::json::parse(pj.dump()));
  CHECK(io::to_json(back) == pj);
  CHECK(verify_program(g, c, back).passed());
}

TEST_CASE("malformed input raises FormatError", "[io]") {
  CHECK_THROWS_AS(io::schedule_from_json(io::json::parse(R"({"layers": []})")), io::FormatError);
  CHECK_THROWS_AS(io::schedule_from_json(io::json::parse(
                      R"({"r": 3, "layers": [{"kind": "teleport", "moves": []}]})")),
                  io::FormatError);
  CHECK_THROWS_AS(io::circuit_from_json(io::json::parse(R"({"qubits": 2})")), io::FormatError);
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), io::FormatError);
}

TEST_CASE("dot export names nodes by row word and column", "[io]") {
  const auto dot = io::to_dot(build_butterfly(3));
  CHECK(dot.find("\"000:0\" -- \"000:1\"") != std::string::npos);
  CHECK(dot.find("\"000:0\" -- \"100:1\"") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t pos = 0; (pos = dot.find(" -- ", pos)) != std::string::npos; ++pos) ++edges;
  CHECK(edges == 48);
  const auto adj = io::adjacency_json(build_butterfly(3).graph());
  CHECK(adj.at("0").size() == 4);
}

}  // namespace
}  // namespace butterfly
