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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "butterfly/topology.hpp"

namespace butterfly {

/// Bijection on canonical node indices: the qubit at node a travels to
/// node image[a].
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<NodeIndex> image) : image_(std::move(image)) {
    std::vector<bool> hit(image_.size(), false);
    for (NodeIndex v : image_) {
      if (v >= image_.size() || hit[v]) {
        throw std::invalid_argument("permutation image is not a bijection");
      }
      hit[v] = true;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<NodeIndex> image(n);
    for (std::size_t i = 0; i < n; ++i) image[i] = i;
    return Permutation(std::move(image));
  }

  std::size_t size() const noexcept { return image_.size(); }
  NodeIndex operator()(NodeIndex a) const { return image_.at(a); }
  const std::vector<NodeIndex> &image() const noexcept { return image_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (image_[i] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    std::vector<NodeIndex> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
    return Permutation(std::move(inv));
  }

  friend bool operator==(const Permutation &, const Permutation &) = default;

 private:
  std::vector<NodeIndex> image_;
};

/// Disjoint SWAPs along graph edges.
struct SwapLayer {
  std::vector<NodePair> pairs;
};

/// Simultaneous one-step moves (from, to). A node may receive a qubit into
/// its ancilla while its own qubit departs in the same step.
struct ShiftLayer {
  std::vector<NodePair> moves;
};

/// A logical gate bound to the physical nodes holding its operands.
struct BoundGate {
  std::string label;
  std::vector<NodeIndex> nodes;  // one or two entries

  friend bool operator==(const BoundGate &, const BoundGate &) = default;
};

struct GateLayer {
  std::size_t timestep = 0;
  std::vector<BoundGate> gates;
};

enum class Phase : int { Gate = 0, RowSort = 1, ColumnRoute = 2, RowFinish = 3 };

struct Layer {
  std::variant<SwapLayer, ShiftLayer, GateLayer> body;
  Phase phase = Phase::Gate;

  bool is_gate() const noexcept {
    return std::holds_alternative<GateLayer>(body);
  }

  /// Number of swaps, moves or gates carried by the layer.
  std::size_t op_count() const noexcept {
    return std::visit(
        [](const auto &l) -> std::size_t {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, SwapLayer>) return l.pairs.size();
          else if constexpr (std::is_same_v<T, ShiftLayer>) return l.moves.size();
          else return l.gates.size();
        },
        body);
  }
};

struct Schedule {
  std::size_t dimension = 0;
  std::vector<Layer> layers;

  /// Routing depth: non-empty swap and shift layers. Gate layers and empty
  /// layers do not count.
  std::size_t depth() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(layers.begin(), layers.end(), [](const Layer &l) {
          return !l.is_gate() && l.op_count() > 0;
        }));
  }

  void append(const Schedule &other) {
    layers.insert(layers.end(), other.layers.begin(), other.layers.end());
  }
};

/// Node -> resident token. Between layers each node holds at most one token.
using Placement = std::vector<std::optional<std::size_t>>;

inline Placement identity_placement(std::size_t n) {
  Placement p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

enum class ProblemKind { Locality, Occupancy };

struct LayerProblem {
  ProblemKind kind;
  std::string message;
};

/// Result of checking one layer against a placement.
struct LayerInspection {
  std::vector<LayerProblem> problems;
  std::size_t peak_occupancy = 0;      // qubits on the busiest node mid-layer
  std::size_t boundary_occupancy = 0;  // qubits on the busiest node afterwards
};

namespace detail {

inline void check_node(const ButterflyGraph &g, NodeIndex a,
                       std::vector<LayerProblem> &problems) {
  if (a >= g.size()) {
    problems.push_back({ProblemKind::Locality,
                        "node " + std::to_string(a) + " out of range"});
  }
}

inline std::string edge_text(const ButterflyGraph &g, NodeIndex a, NodeIndex b) {
  auto name = [&](NodeIndex x) {
    return x < g.size() ? g.node_name(x) : std::to_string(x);
  };
  return "(" + name(a) + ", " + name(b) + ")";
}

}  // namespace detail

/// Structural and occupancy check of `layer` applied to `placement`. Does
/// not modify the placement.
inline LayerInspection inspect_layer(const Placement &placement,
                                     const Layer &layer,
                                     const ButterflyGraph &g) {
  LayerInspection out;
  auto &problems = out.problems;
  const std::size_t n = g.size();
  if (placement.size() != n) {
    problems.push_back(
        {ProblemKind::Locality, "placement size does not match graph"});
    return out;
  }
  auto occupancy = [&](std::string msg) {
    problems.push_back({ProblemKind::Occupancy, std::move(msg)});
  };
  std::vector<int> resident(n, 0);
  for (std::size_t v = 0; v < n; ++v) resident[v] = placement[v] ? 1 : 0;

  auto valid_edge = [&](NodeIndex a, NodeIndex b, const char *what) {
    const std::size_t before = problems.size();
    detail::check_node(g, a, problems);
    detail::check_node(g, b, problems);
    if (problems.size() != before) return false;
    if (!g.is_edge(a, b)) {
      problems.push_back({ProblemKind::Locality,
                          std::string(what) + " on non-edge " +
                              detail::edge_text(g, a, b)});
      return false;
    }
    return true;
  };

  std::visit(
      [&](const auto &l) {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, SwapLayer>) {
          std::vector<bool> used(n, false);
          for (auto [a, b] : l.pairs) {
            if (!valid_edge(a, b, "swap")) continue;
            if (used[a] || used[b]) {
              occupancy("swap pairs overlap at " + detail::edge_text(g, a, b));
            }
            used[a] = used[b] = true;
          }
          out.peak_occupancy = out.boundary_occupancy =
              static_cast<std::size_t>(*std::max_element(resident.begin(), resident.end()));
        } else if constexpr (std::is_same_v<T, ShiftLayer>) {
          std::vector<bool> source(n, false), target(n, false);
          std::vector<int> incoming(n, 0);
          for (auto [a, b] : l.moves) {
            if (!valid_edge(a, b, "move")) continue;
            if (source[a]) {
              occupancy("node " + g.node_name(a) + " sends twice");
            }
            if (target[b]) {
              occupancy("node " + g.node_name(b) + " receives twice");
            }
            if (!placement[a]) {
              occupancy("move from empty node " + g.node_name(a));
            }
            source[a] = target[b] = true;
            ++incoming[b];
          }
          for (std::size_t v = 0; v < n; ++v) {
            const std::size_t mid = static_cast<std::size_t>(resident[v] + incoming[v]);
            out.peak_occupancy = std::max(out.peak_occupancy, mid);
            const int after = (source[v] ? 0 : resident[v]) + incoming[v];
            out.boundary_occupancy =
                std::max(out.boundary_occupancy, static_cast<std::size_t>(after));
            if (after > 1) {
              occupancy("node " + g.node_name(v) + " would hold " +
                        std::to_string(after) + " qubits after the step");
            }
          }
        } else {
          std::vector<bool> used(n, false);
          for (const auto &gate : l.gates) {
            if (gate.nodes.empty() || gate.nodes.size() > 2) {
              problems.push_back(
                  {ProblemKind::Locality, "gate " + gate.label + " has bad arity"});
              continue;
            }
            if (gate.nodes.size() == 2 &&
                !valid_edge(gate.nodes[0], gate.nodes[1], "gate")) {
              continue;
            }
            for (NodeIndex a : gate.nodes) {
              const std::size_t before = problems.size();
              detail::check_node(g, a, problems);
              if (problems.size() != before) continue;
              if (used[a]) {
                occupancy("gates overlap at node " + g.node_name(a));
              }
              used[a] = true;
            }
          }
          out.peak_occupancy = out.boundary_occupancy =
              static_cast<std::size_t>(*std::max_element(resident.begin(), resident.end()));
        }
      },
      layer.body);
  return out;
}

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Apply one layer in place. Throws ScheduleError if the layer is not
/// executable from this placement.
inline void apply_layer(Placement &placement, const Layer &layer,
                        const ButterflyGraph &g) {
  const LayerInspection check = inspect_layer(placement, layer, g);
  if (!check.problems.empty()) {
    throw ScheduleError(check.problems.front().message);
  }
  if (const auto *swaps = std::get_if<SwapLayer>(&layer.body)) {
    for (auto [a, b] : swaps->pairs) std::swap(placement[a], placement[b]);
  } else if (const auto *shift = std::get_if<ShiftLayer>(&layer.body)) {
    Placement next = placement;
    for (auto [a, b] : shift->moves) next[a].reset();
    for (auto [a, b] : shift->moves) next[b] = placement[a];
    placement = std::move(next);
  }
}

struct Violation {
  std::size_t layer = 0;
  std::string message;
};

struct ScheduleReport {
  bool locality = true;
  bool occupancy = true;
  bool correctness = true;
  std::size_t depth = 0;
  std::size_t peak_occupancy = 0;      // inside layers, ancilla included
  std::size_t boundary_occupancy = 0;  // between layers
  std::vector<Violation> violations;

  bool passed() const noexcept { return locality && occupancy && correctness; }
};

/// Replay `s` from the identity placement and check locality, ancilla
/// occupancy, and that the qubit starting at a ends at target(a).
inline ScheduleReport verify_schedule(const ButterflyGraph &g, const Schedule &s,
                                      const Permutation &target) {
  ScheduleReport report;
  const std::size_t n = g.size();
  if (target.size() != n) {
    report.correctness = false;
    report.violations.push_back({0, "target permutation has size " +
                                        std::to_string(target.size()) +
                                        ", graph has " + std::to_string(n)});
    return report;
  }
  if (s.dimension != 0 && s.dimension != g.dimension()) {
    report.locality = false;
    report.violations.push_back({0, "schedule dimension does not match graph"});
    return report;
  }

  Placement placement = identity_placement(n);
  report.boundary_occupancy = 1;  // identity placement
  for (std::size_t li = 0; li < s.layers.size(); ++li) {
    const Layer &layer = s.layers[li];
    LayerInspection check = inspect_layer(placement, layer, g);
    report.peak_occupancy = std::max(report.peak_occupancy, check.peak_occupancy);
    report.boundary_occupancy =
        std::max(report.boundary_occupancy, check.boundary_occupancy);
    if (check.peak_occupancy > 2) {
      report.occupancy = false;
      report.violations.push_back(
          {li, "peak occupancy " + std::to_string(check.peak_occupancy)});
    }
    if (!check.problems.empty()) {
      for (auto &p : check.problems) {
        (p.kind == ProblemKind::Occupancy ? report.occupancy : report.locality) =
            false;
        report.violations.push_back({li, std::move(p.message)});
      }
      // A malformed layer cannot be replayed; stop here.
      report.correctness = false;
      return report;
    }
    apply_layer(placement, layer, g);
    if (!layer.is_gate() && layer.op_count() > 0) ++report.depth;
  }

  for (NodeIndex a = 0; a < n; ++a) {
    const auto &resident = placement[target(a)];
    if (!resident || *resident != a) {
      report.correctness = false;
      report.violations.push_back(
          {s.layers.size(), "qubit from " + g.node_name(a) + " is not at " +
                                g.node_name(target(a))});
      break;
    }
  }
  return report;
}

}  // namespace butterfly
