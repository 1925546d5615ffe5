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

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "butterfly/schedule.hpp"
#include "butterfly/topology.hpp"

namespace butterfly {

/// One qubit seen as an edge from its current row to its destination row.
struct RoutingEdge {
  std::size_t source_row = 0;
  std::size_t dest_row = 0;
  NodeIndex qubit = 0;  // starting node of the qubit
};

/// Bipartite multigraph between source rows and destination rows. Regular of
/// degree `degree` on both sides when built from a permutation.
struct RoutingGraph {
  std::size_t rows = 0;
  std::size_t degree = 0;
  std::vector<RoutingEdge> edges;
};

/// color[e] is the color of edges[e]; color c doubles as the column the
/// qubit is moved to within its row before column routing.
using EdgeColoring = std::vector<std::size_t>;

class ColoringError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline RoutingGraph build_routing_graph(const Permutation &pi, std::size_t r) {
  if (r < 1 || r > 20) throw std::invalid_argument("bad routing graph dimension");
  const std::size_t rows = std::size_t{1} << r;
  if (pi.size() != rows * r) {
    throw std::invalid_argument("permutation size " + std::to_string(pi.size()) +
                                " does not match r*2^r = " +
                                std::to_string(rows * r));
  }
  RoutingGraph rg;
  rg.rows = rows;
  rg.degree = r;
  rg.edges.reserve(pi.size());
  for (NodeIndex a = 0; a < pi.size(); ++a) {
    rg.edges.push_back({a / r, pi(a) / r, a});
  }
  return rg;
}

namespace detail {

/// Augmenting-path search (Ford-Fulkerson on the unit-capacity s-t network)
/// restricted to edges not yet colored.
class MatchingSearch {
 public:
  MatchingSearch(const RoutingGraph &rg, const EdgeColoring &color)
      : rg_(rg), color_(color), by_source_(rg.rows), match_dest_(rg.rows, kNone),
        visited_(rg.rows, 0) {
    for (std::size_t e = 0; e < rg.edges.size(); ++e) {
      if (color_[e] == kUncolored) by_source_[rg.edges[e].source_row].push_back(e);
    }
  }

  /// Edge index matched to each destination row, or kNone.
  std::vector<std::size_t> perfect_matching() {
    for (std::size_t u = 0; u < rg_.rows; ++u) {
      ++stamp_;
      if (!augment(u)) {
        throw ColoringError("no perfect matching from source row " +
                            std::to_string(u));
      }
    }
    return match_dest_;
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kUncolored = kNone;

 private:
  bool augment(std::size_t u) {
    for (std::size_t e : by_source_[u]) {
      const std::size_t v = rg_.edges[e].dest_row;
      if (visited_[v] == stamp_) continue;
      visited_[v] = stamp_;
      const std::size_t held = match_dest_[v];
      if (held == kNone || augment(rg_.edges[held].source_row)) {
        match_dest_[v] = e;
        return true;
      }
    }
    return false;
  }

  const RoutingGraph &rg_;
  const EdgeColoring &color_;
  std::vector<std::vector<std::size_t>> by_source_;
  std::vector<std::size_t> match_dest_;
  std::vector<std::size_t> visited_;
  std::size_t stamp_ = 0;
};

}  // namespace detail

/// Proper edge coloring with `degree` colors. Each round extracts a perfect
/// matching from the uncolored edges (lowest source row first, lowest edge
/// first), gives it the next color, and continues on the regular remainder.
inline EdgeColoring color_edges(const RoutingGraph &rg) {
  using detail::MatchingSearch;
  EdgeColoring color(rg.edges.size(), MatchingSearch::kUncolored);
  for (std::size_t c = 0; c < rg.degree; ++c) {
    MatchingSearch search(rg, color);
    const auto matched = search.perfect_matching();
    for (std::size_t e : matched) color[e] = c;
  }
  for (std::size_t e = 0; e < color.size(); ++e) {
    if (color[e] == MatchingSearch::kUncolored) {
      throw ColoringError("routing graph is not regular");
    }
  }
  return color;
}

/// True iff every edge has a color in [0, degree) and no color repeats at a
/// source row or a destination row.
inline bool validate_coloring(const RoutingGraph &rg, const EdgeColoring &c) {
  if (c.size() != rg.edges.size()) return false;
  std::vector<std::vector<bool>> at_source(rg.rows, std::vector<bool>(rg.degree, false));
  std::vector<std::vector<bool>> at_dest(rg.rows, std::vector<bool>(rg.degree, false));
  for (std::size_t e = 0; e < rg.edges.size(); ++e) {
    const auto &edge = rg.edges[e];
    if (c[e] >= rg.degree || edge.source_row >= rg.rows || edge.dest_row >= rg.rows) {
      return false;
    }
    if (at_source[edge.source_row][c[e]] || at_dest[edge.dest_row][c[e]]) return false;
    at_source[edge.source_row][c[e]] = true;
    at_dest[edge.dest_row][c[e]] = true;
  }
  return true;
}

}  // namespace butterfly
