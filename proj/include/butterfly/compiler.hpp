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

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "butterfly/router.hpp"
#include "butterfly/schedule.hpp"
#include "butterfly/topology.hpp"

namespace butterfly {

/// A logical gate on one or two logical qubits.
struct Gate {
  std::string label;
  std::vector<std::size_t> qubits;

  bool is_two_qubit() const noexcept { return qubits.size() == 2; }
  friend bool operator==(const Gate &, const Gate &) = default;
};

using Timestep = std::vector<Gate>;

struct Circuit {
  std::size_t qubits = 0;
  std::vector<Timestep> timesteps;
};

class CircuitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws CircuitError unless every gate is well formed and no qubit appears
/// twice in one timestep.
inline void validate_circuit(const Circuit &c, std::size_t node_count) {
  if (c.qubits > node_count) {
    throw CircuitError("circuit uses " + std::to_string(c.qubits) +
                       " qubits but the graph has " + std::to_string(node_count) +
                       " nodes");
  }
  for (std::size_t t = 0; t < c.timesteps.size(); ++t) {
    std::vector<bool> busy(c.qubits, false);
    for (const Gate &gate : c.timesteps[t]) {
      if (gate.qubits.empty() || gate.qubits.size() > 2) {
        throw CircuitError("gate " + gate.label + " in timestep " +
                           std::to_string(t) + " must act on one or two qubits");
      }
      for (std::size_t q : gate.qubits) {
        if (q >= c.qubits) {
          throw CircuitError("gate " + gate.label + " uses qubit " +
                             std::to_string(q) + " out of range");
        }
        if (busy[q]) {
          throw CircuitError("qubit " + std::to_string(q) +
                             " used twice in timestep " + std::to_string(t));
        }
        busy[q] = true;
      }
    }
  }
}

/// A maximum set of pairwise disjoint butterfly edges, sorted.
inline std::vector<NodePair> maximum_disjoint_edges(const ButterflyGraph &g) {
  using BoostGraph =
      boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  using Vertex = boost::graph_traits<BoostGraph>::vertex_descriptor;
  BoostGraph bg(g.size());
  for (NodeIndex a = 0; a < g.size(); ++a) {
    for (NodeIndex b : g.neighbors(a)) {
      if (a < b) boost::add_edge(a, b, bg);
    }
  }
  std::vector<Vertex> mate(g.size());
  boost::edmonds_maximum_cardinality_matching(bg, mate.data());
  std::vector<NodePair> edges;
  const Vertex none = boost::graph_traits<BoostGraph>::null_vertex();
  for (NodeIndex a = 0; a < g.size(); ++a) {
    if (mate[a] != none && a < mate[a]) edges.emplace_back(a, mate[a]);
  }
  return edges;
}

/// Where every token currently sits. Tokens 0..q-1 are logical qubits; the
/// rest are blanks filling the unused nodes.
struct TokenPlacement {
  std::vector<NodeIndex> node_of;
  std::vector<std::size_t> token_at;

  static TokenPlacement initial(std::size_t n) {
    TokenPlacement p;
    p.node_of.resize(n);
    p.token_at.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.node_of[i] = p.token_at[i] = i;
    return p;
  }

  /// After routing: the token at node a moves to pi(a).
  void apply(const Permutation &pi) {
    std::vector<std::size_t> next(token_at.size());
    for (NodeIndex a = 0; a < token_at.size(); ++a) next[pi(a)] = token_at[a];
    token_at = std::move(next);
    for (NodeIndex a = 0; a < token_at.size(); ++a) node_of[token_at[a]] = a;
  }
};

namespace detail {

/// Place the gate pairs on free disjoint edges. Returns false if they do
/// not fit. `keep_adjacent` first leaves pairs that are already neighbors in
/// place.
inline bool place_gate_pairs(const ButterflyGraph &g,
                             std::span<const NodePair> disjoint_edges,
                             const TokenPlacement &placement,
                             std::span<const Gate> gates, bool keep_adjacent,
                             std::vector<std::optional<NodeIndex>> &dest,
                             std::vector<bool> &claimed) {
  const std::size_t n = g.size();
  std::vector<std::size_t> edge_at(n, disjoint_edges.size());
  for (std::size_t e = 0; e < disjoint_edges.size(); ++e) {
    edge_at[disjoint_edges[e].first] = e;
    edge_at[disjoint_edges[e].second] = e;
  }
  std::vector<const Gate *> pending;
  for (const Gate &gate : gates) {
    if (!gate.is_two_qubit()) continue;
    const NodeIndex a = placement.node_of[gate.qubits[0]];
    const NodeIndex b = placement.node_of[gate.qubits[1]];
    if (keep_adjacent && g.is_edge(a, b)) {
      dest[gate.qubits[0]] = a;
      dest[gate.qubits[1]] = b;
      claimed[a] = claimed[b] = true;
    } else {
      pending.push_back(&gate);
    }
  }

  auto is_free = [&](std::size_t e) {
    return !claimed[disjoint_edges[e].first] && !claimed[disjoint_edges[e].second];
  };
  std::size_t scan = 0;
  for (const Gate *gate : pending) {
    const NodeIndex a = placement.node_of[gate->qubits[0]];
    const NodeIndex b = placement.node_of[gate->qubits[1]];
    // Prefer an edge touching one operand so that it need not move.
    std::size_t chosen = disjoint_edges.size();
    for (NodeIndex here : {a, b}) {
      const std::size_t e = edge_at[here];
      if (e < disjoint_edges.size() && is_free(e)) {
        chosen = e;
        break;
      }
    }
    if (chosen == disjoint_edges.size()) {
      while (scan < disjoint_edges.size() && !is_free(scan)) ++scan;
      if (scan == disjoint_edges.size()) return false;
      chosen = scan;
    }
    auto [x, y] = disjoint_edges[chosen];
    if (a == y || b == x) std::swap(x, y);
    dest[gate->qubits[0]] = x;
    dest[gate->qubits[1]] = y;
    claimed[x] = claimed[y] = true;
  }
  return true;
}

}  // namespace detail

/// Permutation of nodes that makes every two-qubit gate in `gates` act on
/// neighbors. Idle tokens stay put where possible. Throws CircuitError if
/// there are more gate pairs than disjoint edges.
inline Permutation assign_destinations(const ButterflyGraph &g,
                                       std::span<const NodePair> disjoint_edges,
                                       const TokenPlacement &placement,
                                       std::span<const Gate> gates) {
  const std::size_t n = g.size();
  const auto pairs = static_cast<std::size_t>(std::count_if(
      gates.begin(), gates.end(), [](const Gate &gt) { return gt.is_two_qubit(); }));
  if (pairs > disjoint_edges.size()) {
    throw CircuitError(std::to_string(pairs) + " gate pairs exceed the " +
                       std::to_string(disjoint_edges.size()) +
                       " available disjoint edges");
  }

  std::vector<std::optional<NodeIndex>> dest(n);
  std::vector<bool> claimed(n, false);
  if (!detail::place_gate_pairs(g, disjoint_edges, placement, gates, true, dest,
                                claimed)) {
    std::fill(dest.begin(), dest.end(), std::nullopt);
    std::fill(claimed.begin(), claimed.end(), false);
    if (!detail::place_gate_pairs(g, disjoint_edges, placement, gates, false,
                                  dest, claimed)) {
      throw CircuitError("could not place gate pairs on disjoint edges");
    }
  }

  std::vector<std::size_t> movers;
  for (std::size_t token = 0; token < n; ++token) {
    if (dest[token]) continue;
    const NodeIndex here = placement.node_of[token];
    if (!claimed[here]) {
      dest[token] = here;
      claimed[here] = true;
    } else {
      movers.push_back(token);
    }
  }
  NodeIndex free_node = 0;
  for (std::size_t token : movers) {
    while (claimed[free_node]) ++free_node;
    dest[token] = free_node;
    claimed[free_node] = true;
  }

  std::vector<NodeIndex> image(n);
  for (std::size_t token = 0; token < n; ++token) {
    image[placement.node_of[token]] = *dest[token];
  }
  return Permutation(std::move(image));
}

struct RoundStats {
  std::size_t timestep = 0;
  std::size_t routing_depth = 0;
  PhaseDepths phases;
};

struct CompiledProgram {
  std::size_t dimension = 0;
  std::size_t qubits = 0;
  /// initial_placement[k] is the node holding logical qubit k at the start.
  std::vector<NodeIndex> initial_placement;
  std::vector<Layer> layers;
  std::vector<RoundStats> rounds;

  std::size_t routing_depth() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(layers.begin(), layers.end(), [](const Layer &l) {
          return !l.is_gate() && l.op_count() > 0;
        }));
  }
};

/// Compile `c` for the butterfly: per timestep, move gate operands onto
/// neighboring nodes, route, then emit a gate layer. Timesteps with more
/// pairs than disjoint edges are split into consecutive rounds.
inline CompiledProgram compile_circuit(const ButterflyGraph &g, const Circuit &c,
                                       RouterOptions options = {}) {
  validate_circuit(c, g.size());
  const auto disjoint = maximum_disjoint_edges(g);
  if (disjoint.empty()) throw CircuitError("graph has no edges");

  CompiledProgram program;
  program.dimension = g.dimension();
  program.qubits = c.qubits;
  program.initial_placement.resize(c.qubits);
  for (std::size_t k = 0; k < c.qubits; ++k) program.initial_placement[k] = k;

  TokenPlacement placement = TokenPlacement::initial(g.size());
  for (std::size_t t = 0; t < c.timesteps.size(); ++t) {
    const Timestep &step = c.timesteps[t];
    if (step.empty()) continue;
    std::vector<Gate> singles;
    std::vector<std::vector<Gate>> rounds(1);
    for (const Gate &gate : step) {
      if (!gate.is_two_qubit()) {
        singles.push_back(gate);
        continue;
      }
      if (rounds.back().size() == disjoint.size()) rounds.emplace_back();
      rounds.back().push_back(gate);
    }
    for (std::size_t k = 0; k < rounds.size(); ++k) {
      const Permutation pi = assign_destinations(g, disjoint, placement, rounds[k]);
      RoundStats stats{t, 0, {}};
      if (!pi.is_identity()) {
        RoutingResult routed = route_permutation(g, pi, options);
        stats.phases = routed.executed;
        stats.routing_depth = routed.depth_post_elision();
        for (auto &layer : routed.schedule.layers) program.layers.push_back(std::move(layer));
        placement.apply(pi);
      }
      GateLayer gates;
      gates.timestep = t;
      auto bind = [&](const Gate &gate) {
        BoundGate bound{gate.label, {}};
        for (std::size_t q : gate.qubits) bound.nodes.push_back(placement.node_of[q]);
        gates.gates.push_back(std::move(bound));
      };
      if (k == 0) std::for_each(singles.begin(), singles.end(), bind);
      std::for_each(rounds[k].begin(), rounds[k].end(), bind);
      program.layers.push_back(Layer{std::move(gates), Phase::Gate});
      program.rounds.push_back(stats);
    }
  }
  return program;
}

struct ProgramReport {
  bool routing_valid = true;   // every routing layer obeys the layer rules
  bool gates_local = true;     // gates act on adjacent nodes holding operands
  bool order_preserved = true; // gates appear in circuit timestep order
  bool depth_within_bound = true;
  std::size_t peak_occupancy = 0;
  std::size_t boundary_occupancy = 0;
  std::size_t max_round_depth = 0;
  std::size_t gate_count = 0;
  std::vector<Violation> violations;

  bool passed() const noexcept {
    return routing_valid && gates_local && order_preserved && depth_within_bound;
  }
};

/// Replay a compiled program and check it against its source circuit.
inline ProgramReport verify_program(const ButterflyGraph &g, const Circuit &c,
                                    const CompiledProgram &p) {
  ProgramReport report;
  const std::size_t n = g.size();
  auto fail = [&](bool &flag, std::size_t layer, std::string msg) {
    flag = false;
    report.violations.push_back({layer, std::move(msg)});
  };

  if (p.dimension != g.dimension() || p.qubits != c.qubits ||
      p.initial_placement.size() != c.qubits) {
    fail(report.routing_valid, 0, "program header does not match graph or circuit");
    return report;
  }

  // Logical qubits at their initial nodes, blanks fill the rest in order.
  Placement placement(n);
  for (std::size_t k = 0; k < c.qubits; ++k) {
    const NodeIndex v = p.initial_placement[k];
    if (v >= n || placement[v]) {
      fail(report.routing_valid, 0, "initial placement is not injective");
      return report;
    }
    placement[v] = k;
  }
  std::size_t blank = c.qubits;
  for (auto &slot : placement) {
    if (!slot) slot = blank++;
  }

  // Outstanding gates of each timestep, keyed by (label, operands).
  std::vector<std::multimap<std::vector<std::size_t>, std::string>> pending(
      c.timesteps.size());
  for (std::size_t t = 0; t < c.timesteps.size(); ++t) {
    for (const Gate &gate : c.timesteps[t]) pending[t].emplace(gate.qubits, gate.label);
  }

  const std::size_t bound = depth_bound(g.dimension()).worst_case;
  std::size_t current = 0;
  std::size_t round_depth = 0;
  for (std::size_t li = 0; li < p.layers.size(); ++li) {
    const Layer &layer = p.layers[li];
    LayerInspection check = inspect_layer(placement, layer, g);
    report.peak_occupancy = std::max(report.peak_occupancy, check.peak_occupancy);
    report.boundary_occupancy =
        std::max(report.boundary_occupancy, check.boundary_occupancy);
    if (!check.problems.empty()) {
      for (auto &prob : check.problems) {
        bool &flag = layer.is_gate() ? report.gates_local : report.routing_valid;
        fail(flag, li, std::move(prob.message));
      }
      return report;
    }
    if (!layer.is_gate()) {
      apply_layer(placement, layer, g);
      if (layer.op_count() > 0) ++round_depth;
      continue;
    }

    report.max_round_depth = std::max(report.max_round_depth, round_depth);
    if (round_depth > bound) {
      fail(report.depth_within_bound, li,
           "routing depth " + std::to_string(round_depth) + " exceeds " +
               std::to_string(bound));
    }
    round_depth = 0;

    const auto &gl = std::get<GateLayer>(layer.body);
    if (gl.timestep >= c.timesteps.size()) {
      fail(report.order_preserved, li, "gate layer names unknown timestep");
      continue;
    }
    if (gl.timestep < current) {
      fail(report.order_preserved, li,
           "timestep " + std::to_string(gl.timestep) + " gates after timestep " +
               std::to_string(current));
      continue;
    }
    for (; current < gl.timestep; ++current) {
      if (!pending[current].empty()) {
        fail(report.order_preserved, li,
             "timestep " + std::to_string(current) + " has unexecuted gates");
      }
    }
    for (const BoundGate &bound_gate : gl.gates) {
      ++report.gate_count;
      std::vector<std::size_t> operands;
      for (NodeIndex v : bound_gate.nodes) operands.push_back(*placement[v]);
      auto [lo, hi] = pending[current].equal_range(operands);
      auto match = std::find_if(lo, hi, [&](const auto &entry) {
        return entry.second == bound_gate.label;
      });
      if (match == hi) {
        std::string ops;
        for (std::size_t q : operands) ops += " " + std::to_string(q);
        fail(report.gates_local, li,
             "gate " + bound_gate.label + " acts on tokens" + ops +
                 ", not a pending gate of timestep " + std::to_string(current));
        continue;
      }
      pending[current].erase(match);
    }
  }
  if (round_depth > 0) report.max_round_depth = std::max(report.max_round_depth, round_depth);
  for (std::size_t t = 0; t < pending.size(); ++t) {
    if (!pending[t].empty()) {
      fail(report.order_preserved, p.layers.size(),
           "timestep " + std::to_string(t) + " has unexecuted gates");
    }
  }
  return report;
}

/// Smallest r >= 3 with r * 2^r >= qubits.
inline std::size_t minimal_dimension(std::size_t qubits) {
  std::size_t r = kMinDimension;
  while (r * (std::size_t{1} << r) < qubits) ++r;
  return r;
}

}  // namespace butterfly
