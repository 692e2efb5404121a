#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fwrank/graph.hpp"

namespace fwrank {

using Rank = std::uint32_t;

/*
  A total order of the nodes, kept as two mutually inverse arrays:
  position_[v] is the rank of node v and order_[k] is the node at rank k.
  Rank 0 comes first; an edge u->v is forward iff position(u) < position(v).
*/
class Ranking {
 public:
  Ranking() = default;

  /// Identity order 0, 1, ..., n-1.
  static Ranking identity(std::size_t n);

  /// Throws std::invalid_argument unless `order` is a permutation of [0, n).
  static Ranking from_order(std::vector<NodeIndex> order);

  [[nodiscard]] std::size_t size() const { return order_.size(); }
  [[nodiscard]] Rank position(NodeIndex v) const { return position_[v]; }
  [[nodiscard]] NodeIndex at(Rank k) const { return order_[k]; }
  [[nodiscard]] std::span<const NodeIndex> order() const { return order_; }
  [[nodiscard]] std::span<const Rank> positions() const { return position_; }

  /// Places nodes[i] at rank first + i. The nodes must be exactly the ones
  /// currently occupying [first, first + nodes.size()); throws std::logic_error otherwise.
  void assign_interval(Rank first, std::span<const NodeIndex> nodes);

  /// Places nodes[i] at ranks[i]. `ranks` must be exactly the ranks currently
  /// held by `nodes` (in any order); throws std::logic_error otherwise.
  void assign_ranks(std::span<const Rank> ranks, std::span<const NodeIndex> nodes);

  /// Order with rank 0 last.
  [[nodiscard]] Ranking reversed() const;

  friend bool operator==(const Ranking&, const Ranking&) = default;

 private:
  std::vector<Rank> position_;
  std::vector<NodeIndex> order_;
};

}  // namespace fwrank
