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
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace butterfly {

using NodeIndex = std::size_t;
using NodePair = std::pair<NodeIndex, NodeIndex>;

/// Smallest dimension for which the wrapped butterfly is a simple 4-regular
/// graph. r = 2 produces parallel edges and r = 1 produces self-loops.
inline constexpr std::size_t kMinDimension = 3;

/// Mask selecting bit position `pos` of an r-bit row word. Position 0 is the
/// most significant printed bit, so column 0 cross edges join rows 000 and
/// 100 when r = 3.
constexpr std::size_t bit_mask(std::size_t r, std::size_t pos) noexcept {
  return std::size_t{1} << (r - 1 - pos);
}

/// Row word `row` printed as an r-character binary string, MSB first.
inline std::string row_string(std::size_t row, std::size_t r) {
  std::string s(r, '0');
  for (std::size_t pos = 0; pos < r; ++pos) {
    if (row & bit_mask(r, pos)) s[pos] = '1';
  }
  return s;
}

/// Butterfly vertex addressed by (row word, column).
struct NodeId {
  std::size_t row = 0;
  std::size_t column = 0;

  friend bool operator==(const NodeId &, const NodeId &) = default;
  friend auto operator<=>(const NodeId &, const NodeId &) = default;
};

enum class EdgeKind : std::uint8_t { Straight, Cross };

/// Undirected graph stored as sorted adjacency lists.
struct SimpleGraph {
  std::vector<std::vector<NodeIndex>> adjacency;

  std::size_t size() const noexcept { return adjacency.size(); }

  std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto &nbrs : adjacency) twice += nbrs.size();
    return twice / 2;
  }

  bool has_edge(NodeIndex a, NodeIndex b) const {
    const auto &nbrs = adjacency.at(a);
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
  }

  std::size_t min_degree() const noexcept {
    std::size_t d = adjacency.empty() ? 0 : adjacency.front().size();
    for (const auto &nbrs : adjacency) d = std::min(d, nbrs.size());
    return d;
  }

  std::size_t max_degree() const noexcept {
    std::size_t d = 0;
    for (const auto &nbrs : adjacency) d = std::max(d, nbrs.size());
    return d;
  }

  bool is_connected() const {
    if (adjacency.empty()) return true;
    std::vector<bool> seen(size(), false);
    std::queue<NodeIndex> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
      const NodeIndex u = frontier.front();
      frontier.pop();
      for (NodeIndex v : adjacency[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++reached;
          frontier.push(v);
        }
      }
    }
    return reached == size();
  }

  void add_edge(NodeIndex a, NodeIndex b) {
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }

  void normalize() {
    for (auto &nbrs : adjacency) {
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
  }

  friend bool operator==(const SimpleGraph &, const SimpleGraph &) = default;
};

/// The r-dimensional wrapped butterfly on r * 2^r nodes. Node (w, i) has
/// canonical index w * r + i, so every row occupies a contiguous block.
class ButterflyGraph {
 public:
  explicit ButterflyGraph(std::size_t r) : r_(r) {
    if (r < kMinDimension) {
      throw std::invalid_argument(
          "butterfly dimension must be at least 3, got " + std::to_string(r));
    }
    if (r > 20) {
      throw std::invalid_argument("butterfly dimension too large");
    }
    rows_ = std::size_t{1} << r;
    graph_.adjacency.resize(rows_ * r_);
    for (std::size_t w = 0; w < rows_; ++w) {
      for (std::size_t i = 0; i < r_; ++i) {
        const std::size_t next = (i + 1) % r_;
        graph_.add_edge(index({w, i}), index({w, next}));
        graph_.add_edge(index({w, i}), index({w ^ bit_mask(r_, i), next}));
      }
    }
    graph_.normalize();
  }

  std::size_t dimension() const noexcept { return r_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_ * r_; }

  NodeIndex index(NodeId id) const noexcept { return id.row * r_ + id.column; }
  NodeId node(NodeIndex idx) const noexcept { return {idx / r_, idx % r_}; }

  bool contains(NodeId id) const noexcept {
    return id.row < rows_ && id.column < r_;
  }

  const std::vector<NodeIndex> &neighbors(NodeIndex idx) const {
    return graph_.adjacency.at(idx);
  }

  bool is_edge(NodeIndex a, NodeIndex b) const { return graph_.has_edge(a, b); }
  bool is_edge(NodeId a, NodeId b) const { return is_edge(index(a), index(b)); }

  /// Kind of the edge {a, b}; the caller guarantees the edge exists.
  EdgeKind edge_kind(NodeId a, NodeId b) const noexcept {
    return a.row == b.row ? EdgeKind::Straight : EdgeKind::Cross;
  }

  const SimpleGraph &graph() const noexcept { return graph_; }

  /// "w:i" with w printed as an r-bit binary word.
  std::string node_name(NodeIndex idx) const {
    const NodeId id = node(idx);
    return row_string(id.row, r_) + ":" + std::to_string(id.column);
  }

 private:
  std::size_t r_;
  std::size_t rows_ = 0;
  SimpleGraph graph_;
};

inline ButterflyGraph build_butterfly(std::size_t r) { return ButterflyGraph(r); }

inline bool is_edge(const ButterflyGraph &g, NodeId a, NodeId b) {
  return g.is_edge(a, b);
}

/// Merge every row into a single vertex. The result is labelled by row word.
inline SimpleGraph quotient_rows(const ButterflyGraph &g) {
  SimpleGraph q;
  q.adjacency.resize(g.rows());
  for (NodeIndex a = 0; a < g.size(); ++a) {
    for (NodeIndex b : g.neighbors(a)) {
      const std::size_t u = g.node(a).row;
      const std::size_t v = g.node(b).row;
      if (u != v) q.adjacency[u].push_back(v);
    }
  }
  q.normalize();
  return q;
}

enum class VariantKind : std::uint8_t { KAry, RingExpanded };

/// Variant topologies that trade degree against routing time.
struct VariantGraph {
  VariantKind kind = VariantKind::KAry;
  std::size_t dimension = 0;
  std::size_t arity = 2;  // digit base, k-ary only
  SimpleGraph graph;
  std::vector<std::string> names;
};

/// k-ary wrapped butterfly: rows are r-digit base-k words and (w, i) joins
/// (v, i + 1 mod r) whenever w and v agree outside digit position i.
inline VariantGraph build_kary_butterfly(std::size_t r, std::size_t k) {
  if (k < 2) throw std::invalid_argument("k-ary butterfly needs k >= 2");
  if (r < kMinDimension) {
    throw std::invalid_argument("k-ary butterfly needs r >= 3");
  }
  std::size_t rows = 1;
  std::vector<std::size_t> place(r);  // weight of digit position i, MSB first
  for (std::size_t i = r; i-- > 0;) {
    place[i] = rows;
    if (rows > (std::size_t{1} << 24) / k) {
      throw std::invalid_argument("k-ary butterfly too large");
    }
    rows *= k;
  }

  VariantGraph v;
  v.kind = VariantKind::KAry;
  v.dimension = r;
  v.arity = k;
  v.graph.adjacency.resize(rows * r);
  v.names.reserve(rows * r);
  for (std::size_t w = 0; w < rows; ++w) {
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t digit = (w / place[i]) % k;
      const std::size_t base = w - digit * place[i];
      const std::size_t next = (i + 1) % r;
      for (std::size_t d = 0; d < k; ++d) {
        v.graph.add_edge(w * r + i, (base + d * place[i]) * r + next);
      }
      std::string word(r, '0');
      for (std::size_t p = 0; p < r; ++p) {
        word[p] = static_cast<char>('0' + (w / place[p]) % k);
      }
      v.names.push_back(word + ":" + std::to_string(i));
    }
  }
  v.graph.normalize();
  return v;
}

/// Replace every butterfly node by a 4-cycle. Ring vertex s of node (w, i)
/// carries, in order s = 0..3, the straight-forward, cross-forward,
/// straight-backward and cross-backward edge. Vertex index is node * 4 + s.
inline VariantGraph ring_expand(const ButterflyGraph &g) {
  const std::size_t r = g.dimension();
  VariantGraph v;
  v.kind = VariantKind::RingExpanded;
  v.dimension = r;
  v.graph.adjacency.resize(g.size() * 4);
  v.names.reserve(g.size() * 4);
  for (NodeIndex a = 0; a < g.size(); ++a) {
    for (std::size_t s = 0; s < 4; ++s) {
      v.graph.add_edge(a * 4 + s, a * 4 + (s + 1) % 4);
      v.names.push_back(g.node_name(a) + "/" + std::to_string(s));
    }
    const NodeId id = g.node(a);
    const std::size_t next = (id.column + 1) % r;
    // Forward edges only; the backward slots are reached from the far side.
    v.graph.add_edge(a * 4 + 0, g.index({id.row, next}) * 4 + 2);
    v.graph.add_edge(a * 4 + 1,
                     g.index({id.row ^ bit_mask(r, id.column), next}) * 4 + 3);
  }
  v.graph.normalize();
  return v;
}

}  // namespace butterfly
