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

// JSON and DOT interchange formats.
//
//   permutation  [p0, p1, ...]  or  {"image": [...]}
//   schedule     {"r": R, "layers": [{"kind": "swap"|"shift"|"gate",
//                                     "phase": P, "moves": [[a, b], ...]}]}
//   circuit      {"qubits": Q, "timesteps": [[{"gate": "CNOT", "q": [3, 17]}]]}
//   program      schedule plus "qubits", "initial_placement", and gate layers
//                {"kind": "gate", "phase": 0, "timestep": T,
//                 "gates": [{"gate": "CNOT", "nodes": [a, b]}]}

#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "butterfly/benes.hpp"
#include "butterfly/compiler.hpp"
#include "butterfly/router.hpp"
#include "butterfly/schedule.hpp"
#include "butterfly/topology.hpp"

namespace butterfly::io {

using nlohmann::json;

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string &path, const std::string &text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

// Permutation

inline json to_json(const Permutation &p) { return p.image(); }

inline Permutation permutation_from_json(const json &j) {
  const json &arr = j.is_object() ? j.at("image") : j;
  if (!arr.is_array()) throw FormatError("permutation must be a JSON array");
  try {
    return Permutation(arr.get<std::vector<NodeIndex>>());
  } catch (const json::exception &e) {
    throw FormatError(std::string("bad permutation: ") + e.what());
  }
}

// Layers

inline const char *kind_name(const Layer &l) {
  switch (l.body.index()) {
    case 0: return "swap";
    case 1: return "shift";
    default: return "gate";
  }
}

inline json to_json(const Layer &l) {
  json j;
  j["kind"] = kind_name(l);
  j["phase"] = static_cast<int>(l.phase);
  if (const auto *s = std::get_if<SwapLayer>(&l.body)) {
    j["moves"] = s->pairs;
  } else if (const auto *m = std::get_if<ShiftLayer>(&l.body)) {
    j["moves"] = m->moves;
  } else {
    const auto &g = std::get<GateLayer>(l.body);
    j["timestep"] = g.timestep;
    json gates = json::array();
    for (const auto &gate : g.gates) gates.push_back({{"gate", gate.label}, {"nodes", gate.nodes}});
    j["gates"] = std::move(gates);
  }
  return j;
}

inline Layer layer_from_json(const json &j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const int phase = j.value("phase", 0);
    if (phase < 0 || phase > 3) throw FormatError("layer phase out of range");
    Layer layer;
    layer.phase = static_cast<Phase>(phase);
    if (kind == "swap") {
      layer.body = SwapLayer{j.at("moves").get<std::vector<NodePair>>()};
    } else if (kind == "shift") {
      layer.body = ShiftLayer{j.at("moves").get<std::vector<NodePair>>()};
    } else if (kind == "gate") {
      GateLayer g;
      g.timestep = j.value("timestep", std::size_t{0});
      if (j.contains("gates")) {
        for (const auto &gate : j.at("gates")) {
          g.gates.push_back({gate.value("gate", std::string("G")),
                             gate.at("nodes").get<std::vector<NodeIndex>>()});
        }
      } else {
        for (const auto &[a, b] : j.at("moves").get<std::vector<NodePair>>()) {
          g.gates.push_back({"G", {a, b}});
        }
      }
      layer.body = std::move(g);
    } else {
      throw FormatError("unknown layer kind '" + kind + "'");
    }
    return layer;
  } catch (const json::exception &e) {
    throw FormatError(std::string("bad layer: ") + e.what());
  }
}

// Schedule

inline json to_json(const Schedule &s) {
  json layers = json::array();
  for (const auto &l : s.layers) layers.push_back(to_json(l));
  return {{"r", s.dimension}, {"layers", std::move(layers)}};
}

inline Schedule schedule_from_json(const json &j) {
  Schedule s;
  try {
    s.dimension = j.at("r").get<std::size_t>();
    for (const auto &l : j.at("layers")) s.layers.push_back(layer_from_json(l));
  } catch (const json::exception &e) {
    throw FormatError(std::string("bad schedule: ") + e.what());
  }
  return s;
}

// Circuit

inline json to_json(const Circuit &c) {
  json steps = json::array();
  for (const auto &step : c.timesteps) {
    json gates = json::array();
    for (const auto &g : step) gates.push_back({{"gate", g.label}, {"q", g.qubits}});
    steps.push_back(std::move(gates));
  }
  return {{"qubits", c.qubits}, {"timesteps", std::move(steps)}};
}

inline Circuit circuit_from_json(const json &j) {
  Circuit c;
  try {
    c.qubits = j.at("qubits").get<std::size_t>();
    for (const auto &step : j.at("timesteps")) {
      Timestep ts;
      for (const auto &g : step) {
        ts.push_back({g.at("gate").get<std::string>(),
                      g.at("q").get<std::vector<std::size_t>>()});
      }
      c.timesteps.push_back(std::move(ts));
    }
  } catch (const json::exception &e) {
    throw FormatError(std::string("bad circuit: ") + e.what());
  }
  return c;
}

// Program

inline json to_json(const CompiledProgram &p) {
  json layers = json::array();
  for (const auto &l : p.layers) layers.push_back(to_json(l));
  return {{"r", p.dimension},
          {"qubits", p.qubits},
          {"initial_placement", p.initial_placement},
          {"layers", std::move(layers)}};
}

inline CompiledProgram program_from_json(const json &j) {
  CompiledProgram p;
  try {
    p.dimension = j.at("r").get<std::size_t>();
    p.qubits = j.at("qubits").get<std::size_t>();
    p.initial_placement = j.at("initial_placement").get<std::vector<NodeIndex>>();
    for (const auto &l : j.at("layers")) p.layers.push_back(layer_from_json(l));
  } catch (const json::exception &e) {
    throw FormatError(std::string("bad program: ") + e.what());
  }
  return p;
}

// Graph export

inline std::string to_dot(const SimpleGraph &g, const std::vector<std::string> &names,
                          const std::string &title) {
  std::ostringstream out;
  out << "graph \"" << title << "\" {\n";
  for (std::size_t v = 0; v < g.size(); ++v) out << "  \"" << names[v] << "\";\n";
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b : g.adjacency[a]) {
      if (a < b) out << "  \"" << names[a] << "\" -- \"" << names[b] << "\";\n";
    }
  }
  out << "}\n";
  return out.str();
}

inline std::vector<std::string> node_names(const ButterflyGraph &g) {
  std::vector<std::string> names;
  names.reserve(g.size());
  for (NodeIndex v = 0; v < g.size(); ++v) names.push_back(g.node_name(v));
  return names;
}

inline std::string to_dot(const ButterflyGraph &g) {
  return to_dot(g.graph(), node_names(g),
                "butterfly_r" + std::to_string(g.dimension()));
}

/// Adjacency list keyed by canonical index.
inline json adjacency_json(const SimpleGraph &g) {
  json j = json::object();
  for (std::size_t v = 0; v < g.size(); ++v) j[std::to_string(v)] = g.adjacency[v];
  return j;
}

// Routing diagnostics

inline json explain_json(const RoutingResult &res) {
  json edges = json::array();
  for (std::size_t e = 0; e < res.routing_graph.edges.size(); ++e) {
    const auto &edge = res.routing_graph.edges[e];
    edges.push_back({{"qubit", edge.qubit},
                     {"source_row", edge.source_row},
                     {"dest_row", edge.dest_row},
                     {"color", res.coloring[e]}});
  }
  json plans = json::array();
  for (std::size_t c = 0; c < res.column_plans.size(); ++c) {
    const auto &plan = res.column_plans[c];
    json levels = json::array();
    for (const auto &level : plan.levels) {
      std::string bits;
      for (auto f : level.flip) bits.push_back(f ? '1' : '0');
      levels.push_back({{"bit", level.bit}, {"flip", bits}});
    }
    plans.push_back({{"column", c}, {"bit_order", plan.bit_order}, {"levels", levels}});
  }
  json swaps = json::array();
  for (const auto &layer : res.schedule.layers) {
    if (std::holds_alternative<SwapLayer>(layer.body)) swaps.push_back(to_json(layer));
  }
  return {{"routing_graph", std::move(edges)},
          {"column_plans", std::move(plans)},
          {"row_sort_swaps", std::move(swaps)},
          {"phase_depths",
           {{"nominal",
             {res.nominal.row_sort, res.nominal.column_route, res.nominal.row_finish}},
            {"executed",
             {res.executed.row_sort, res.executed.column_route,
              res.executed.row_finish}}}}};
}

}  // namespace butterfly::io
