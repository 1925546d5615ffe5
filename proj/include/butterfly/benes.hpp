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
#include <numeric>
#include <stdexcept>
#include <vector>

#include "butterfly/schedule.hpp"
#include "butterfly/topology.hpp"

namespace butterfly {

/// One level of a Benes plan: the item sitting at row x either stays or moves
/// to x ^ bit_mask(bit).
struct BenesLevel {
  std::size_t bit = 0;
  std::vector<std::uint8_t> flip;  // indexed by row at the input of the level

  std::size_t apply(std::size_t row, std::size_t dimension) const {
    return flip[row] ? row ^ bit_mask(dimension, bit) : row;
  }
};

/// Switch settings for routing 2^r rows through 2r levels. Forward levels
/// use bit_order[0..r-1], backward levels bit_order[r-1..0]. The last
/// forward level is the spare one and never flips.
struct BenesPlan {
  std::size_t dimension = 0;
  std::vector<std::size_t> bit_order;
  std::vector<BenesLevel> levels;

  std::size_t width() const noexcept { return std::size_t{1} << dimension; }

  /// Row reached by the item starting at `row` after all levels.
  std::size_t route(std::size_t row) const {
    for (const auto &level : levels) row = level.apply(row, dimension);
    return row;
  }

  bool level_is_bijective(std::size_t l) const {
    std::vector<bool> hit(width(), false);
    for (std::size_t x = 0; x < width(); ++x) {
      const std::size_t y = levels[l].apply(x, dimension);
      if (hit[y]) return false;
      hit[y] = true;
    }
    return true;
  }
};

namespace detail {

/// Looping algorithm over the items of one sub-network. src/dst hold each
/// item's current entry and exit rows; bits of earlier depths are already
/// pinned to the sub-network's value.
class LoopingRouter {
 public:
  LoopingRouter(std::size_t r, const std::vector<std::size_t> &order,
                std::size_t items)
      : r_(r), order_(order), forward_(r, std::vector<std::uint8_t>(items, 0)),
        backward_(r, std::vector<std::uint8_t>(items, 0)),
        by_src_(std::size_t{1} << r), by_dst_(std::size_t{1} << r) {}

  void solve(std::vector<std::size_t> items, std::vector<std::size_t> &src,
             std::vector<std::size_t> &dst, std::size_t depth) {
    const std::size_t mask = bit_mask(r_, order_[depth]);
    if (depth + 1 == r_) {
      // Middle level: each remaining pair of items shares one switch.
      for (std::size_t it : items) {
        backward_[depth][it] = ((src[it] ^ dst[it]) & mask) ? 1 : 0;
      }
      return;
    }

    for (std::size_t it : items) {
      by_src_[src[it]] = it;
      by_dst_[dst[it]] = it;
    }
    std::sort(items.begin(), items.end(),
              [&](std::size_t a, std::size_t b) { return src[a] < src[b]; });

    constexpr int kUnset = -1;
    std::vector<int> side(forward_[0].size(), kUnset);
    for (std::size_t start : items) {
      if (side[start] != kUnset) continue;
      // The lowest unassigned row goes straight through this level.
      const int straight = (src[start] & mask) ? 1 : 0;
      std::size_t it = start;
      while (side[it] == kUnset) {
        side[it] = straight;
        const std::size_t src_partner = by_src_[src[it] ^ mask];
        side[src_partner] = 1 - straight;
        it = by_dst_[dst[src_partner] ^ mask];
      }
    }

    std::vector<std::size_t> upper, lower;
    for (std::size_t it : items) {
      const std::size_t value = side[it] ? mask : 0;
      forward_[depth][it] = ((src[it] & mask) != value) ? 1 : 0;
      backward_[depth][it] = ((dst[it] & mask) != value) ? 1 : 0;
      src[it] = (src[it] & ~mask) | value;
      dst[it] = (dst[it] & ~mask) | value;
      (side[it] ? lower : upper).push_back(it);
    }
    solve(std::move(upper), src, dst, depth + 1);
    solve(std::move(lower), src, dst, depth + 1);
  }

  // Per depth, per item: flip at the forward level / at the mirrored
  // backward level. Depth r-1 only uses backward_ (the middle level).
  std::vector<std::vector<std::uint8_t>> forward_;
  std::vector<std::vector<std::uint8_t>> backward_;

 private:
  std::size_t r_;
  const std::vector<std::size_t> &order_;
  std::vector<std::size_t> by_src_;
  std::vector<std::size_t> by_dst_;
};

}  // namespace detail

/// Route `target` (row x goes to row target[x]) through a Benes network
/// whose levels flip bits in `bit_order` then back in reverse.
inline BenesPlan benes_route(const std::vector<std::size_t> &target,
                             const std::vector<std::size_t> &bit_order) {
  const std::size_t r = bit_order.size();
  if (r == 0 || r > 20) throw std::invalid_argument("bad Benes dimension");
  const std::size_t width = std::size_t{1} << r;
  if (target.size() != width) {
    throw std::invalid_argument("Benes target must have 2^r entries");
  }
  {
    std::vector<bool> seen(r, false);
    for (std::size_t b : bit_order) {
      if (b >= r || seen[b]) {
        throw std::invalid_argument("bit order is not a permutation of [0, r)");
      }
      seen[b] = true;
    }
    std::vector<bool> hit(width, false);
    for (std::size_t y : target) {
      if (y >= width || hit[y]) {
        throw std::invalid_argument("Benes target is not a bijection");
      }
      hit[y] = true;
    }
  }

  std::vector<std::size_t> items(width);
  std::iota(items.begin(), items.end(), std::size_t{0});
  std::vector<std::size_t> src = items;
  std::vector<std::size_t> dst = target;
  detail::LoopingRouter router(r, bit_order, width);
  router.solve(items, src, dst, 0);

  // Per-item decisions for each of the 2r levels, in level order.
  std::vector<const std::vector<std::uint8_t> *> decisions(2 * r, nullptr);
  const std::vector<std::uint8_t> none(width, 0);
  for (std::size_t k = 0; k + 1 < r; ++k) {
    decisions[k] = &router.forward_[k];
    decisions[2 * r - 1 - k] = &router.backward_[k];
  }
  decisions[r - 1] = &none;
  decisions[r] = &router.backward_[r - 1];

  BenesPlan plan;
  plan.dimension = r;
  plan.bit_order = bit_order;
  plan.levels.resize(2 * r);
  std::vector<std::size_t> at = items;  // current row of each item
  for (std::size_t l = 0; l < 2 * r; ++l) {
    BenesLevel &level = plan.levels[l];
    level.bit = l < r ? bit_order[l] : bit_order[2 * r - 1 - l];
    level.flip.assign(width, 0);
    for (std::size_t it = 0; it < width; ++it) {
      level.flip[at[it]] = (*decisions[l])[it];
      at[it] = level.apply(at[it], r);
    }
  }
  return plan;
}

/// Bit order used by the qubits that start in column c.
inline std::vector<std::size_t> column_bit_order(std::size_t r, std::size_t c) {
  std::vector<std::size_t> order(r);
  for (std::size_t t = 0; t < r; ++t) order[t] = (c + t) % r;
  return order;
}

/// cols[c][w] is the destination row of the qubit at (w, c).
using ColumnPermutationSet = std::vector<std::vector<std::size_t>>;

/// Route every column's row permutation at once in 2r shift layers: r steps
/// forward around the butterfly, then r steps back. The qubits from column c
/// always sit in column c + t (mod r), so the r Benes plans never share a
/// node, and every node sends and receives exactly one qubit per layer.
inline std::vector<ShiftLayer> pipelined_column_routing(
    const ButterflyGraph &g, const ColumnPermutationSet &cols,
    std::vector<BenesPlan> *plans_out = nullptr) {
  const std::size_t r = g.dimension();
  if (cols.size() != r) {
    throw std::invalid_argument("need one row permutation per column");
  }
  std::vector<BenesPlan> plans;
  plans.reserve(r);
  for (std::size_t c = 0; c < r; ++c) {
    if (cols[c].size() != g.rows()) {
      throw std::invalid_argument("column permutation width does not match graph");
    }
    plans.push_back(benes_route(cols[c], column_bit_order(r, c)));
  }

  std::vector<ShiftLayer> layers(2 * r);
  // Row currently held by the item that started at (w, c).
  std::vector<std::vector<std::size_t>> row(r, std::vector<std::size_t>(g.rows()));
  for (auto &per_col : row) std::iota(per_col.begin(), per_col.end(), std::size_t{0});

  for (std::size_t l = 0; l < 2 * r; ++l) {
    auto &moves = layers[l].moves;
    moves.reserve(g.size());
    for (std::size_t c = 0; c < r; ++c) {
      // Column before and after this step for items that started in c.
      const std::size_t from = l < r ? (c + l) % r : (c + 2 * r - (l - r)) % r;
      const std::size_t to = l < r ? (from + 1) % r : (from + r - 1) % r;
      for (std::size_t w = 0; w < g.rows(); ++w) {
        const std::size_t x = row[c][w];
        const std::size_t y = plans[c].levels[l].apply(x, r);
        moves.emplace_back(g.index({x, from}), g.index({y, to}));
        row[c][w] = y;
      }
    }
    std::sort(moves.begin(), moves.end());
  }
  if (plans_out) *plans_out = std::move(plans);
  return layers;
}

}  // namespace butterfly
