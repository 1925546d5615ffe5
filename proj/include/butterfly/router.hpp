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

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "butterfly/benes.hpp"
#include "butterfly/edge_coloring.hpp"
#include "butterfly/schedule.hpp"
#include "butterfly/sorting_networks.hpp"
#include "butterfly/topology.hpp"

namespace butterfly {

struct DepthBound {
  std::size_t worst_case = 0;  // 6r - 6
  std::size_t log_bound = 0;   // ceil(6 log2(r 2^r))
};

inline DepthBound depth_bound(std::size_t r) {
  if (r < kMinDimension) throw std::invalid_argument("depth bound needs r >= 3");
  const double n = static_cast<double>(r) * std::ldexp(1.0, static_cast<int>(r));
  return {6 * r - 6, static_cast<std::size_t>(std::ceil(6.0 * std::log2(n)))};
}

struct PhaseDepths {
  std::size_t row_sort = 0;
  std::size_t column_route = 0;
  std::size_t row_finish = 0;

  std::size_t total() const noexcept { return row_sort + column_route + row_finish; }
  friend bool operator==(const PhaseDepths &, const PhaseDepths &) = default;
};

struct RouterOptions {
  /// Re-check each phase's postcondition before starting the next.
  bool validate = true;
};

class RoutingFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct RoutingResult {
  Schedule schedule;
  /// Stage counts of the three phases before any elision: always
  /// (2r - 3, 2r, 2r - 3).
  PhaseDepths nominal;
  /// Layers actually emitted per phase.
  PhaseDepths executed;
  RoutingGraph routing_graph;
  EdgeColoring coloring;
  std::vector<BenesPlan> column_plans;

  std::size_t depth_pre_elision() const noexcept { return nominal.total(); }
  std::size_t depth_post_elision() const noexcept { return executed.total(); }
};

namespace detail {

/// Sort every row by `key_of(token)` with the insertion network, appending
/// one swap layer per non-empty stage. Returns the number of layers added.
template <typename KeyOf>
std::size_t sort_rows(const ButterflyGraph &g, Placement &placement,
                      KeyOf key_of, Phase phase, Schedule &out) {
  const std::size_t r = g.dimension();
  const ComparatorNetwork net = insertion_network(r);
  std::vector<SwapLayer> stages(net.depth());
  for (std::size_t w = 0; w < g.rows(); ++w) {
    std::vector<std::size_t> keys(r);
    for (std::size_t i = 0; i < r; ++i) keys[i] = key_of(*placement[g.index({w, i})]);
    const auto run = run_network(net, std::move(keys));
    for (std::size_t s = 0; s < net.depth(); ++s) {
      for (const Comparator &c : run.swaps[s]) {
        stages[s].pairs.emplace_back(g.index({w, c.low}), g.index({w, c.high}));
      }
    }
  }
  std::size_t emitted = 0;
  for (auto &stage : stages) {
    if (stage.pairs.empty()) continue;
    Layer layer{std::move(stage), phase};
    apply_layer(placement, layer, g);
    out.layers.push_back(std::move(layer));
    ++emitted;
  }
  return emitted;
}

}  // namespace detail

/// Route `pi` on the butterfly in three phases: sort each row so that each
/// column holds one qubit per destination row, route all columns through
/// their embedded Benes networks, then sort each row by destination column.
inline RoutingResult route_permutation(const ButterflyGraph &g,
                                       const Permutation &pi,
                                       RouterOptions options = {}) {
  const std::size_t r = g.dimension();
  const std::size_t n = g.size();
  if (pi.size() != n) {
    throw std::invalid_argument("permutation size " + std::to_string(pi.size()) +
                                " does not match graph size " + std::to_string(n));
  }

  RoutingResult result;
  result.schedule.dimension = r;
  result.nominal = {2 * r - 3, 2 * r, 2 * r - 3};
  result.routing_graph = build_routing_graph(pi, r);
  result.coloring = color_edges(result.routing_graph);

  // Tokens are starting node indices.
  Placement placement = identity_placement(n);
  auto dest_row = [&](std::size_t token) { return pi(token) / r; };
  auto dest_col = [&](std::size_t token) { return pi(token) % r; };

  // Phase 1: the color of a qubit is the column it must reach in its row.
  result.executed.row_sort = detail::sort_rows(
      g, placement, [&](std::size_t token) { return result.coloring[token]; },
      Phase::RowSort, result.schedule);

  if (options.validate) {
    for (std::size_t c = 0; c < r; ++c) {
      std::vector<bool> seen(g.rows(), false);
      for (std::size_t w = 0; w < g.rows(); ++w) {
        const std::size_t d = dest_row(*placement[g.index({w, c})]);
        if (seen[d]) {
          throw RoutingFailure("row sort left a repeated destination row in column " +
                               std::to_string(c));
        }
        seen[d] = true;
      }
    }
  }

  // Phase 2: within each column, route to destination rows.
  ColumnPermutationSet cols(r, std::vector<std::size_t>(g.rows()));
  bool columns_identity = true;
  for (std::size_t c = 0; c < r; ++c) {
    for (std::size_t w = 0; w < g.rows(); ++w) {
      cols[c][w] = dest_row(*placement[g.index({w, c})]);
      columns_identity = columns_identity && cols[c][w] == w;
    }
  }
  auto shifts = pipelined_column_routing(g, cols, &result.column_plans);
  if (!columns_identity) {
    for (auto &shift : shifts) {
      Layer layer{std::move(shift), Phase::ColumnRoute};
      apply_layer(placement, layer, g);
      result.schedule.layers.push_back(std::move(layer));
      ++result.executed.column_route;
    }
  }

  if (options.validate) {
    for (NodeIndex v = 0; v < n; ++v) {
      if (dest_row(*placement[v]) != g.node(v).row) {
        throw RoutingFailure("column routing left a qubit outside its destination row");
      }
    }
  }

  // Phase 3: destination columns within each row are now distinct.
  result.executed.row_finish =
      detail::sort_rows(g, placement, dest_col, Phase::RowFinish, result.schedule);

  if (options.validate) {
    for (NodeIndex v = 0; v < n; ++v) {
      if (pi(*placement[v]) != v) {
        throw RoutingFailure("final placement does not realize the permutation");
      }
    }
  }
  return result;
}

}  // namespace butterfly
