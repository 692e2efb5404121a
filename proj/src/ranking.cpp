#include "fwrank/ranking.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fwrank {

Ranking Ranking::identity(std::size_t n) {
  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  return from_order(std::move(order));
}

Ranking Ranking::from_order(std::vector<NodeIndex> order) {
  Ranking r;
  const std::size_t n = order.size();
  constexpr Rank kUnset = std::numeric_limits<Rank>::max();
  r.position_.assign(n, kUnset);
  for (std::size_t k = 0; k < n; ++k) {
    const NodeIndex v = order[k];
    if (v >= n) throw std::invalid_argument("ranking contains out-of-range node index");
    if (r.position_[v] != kUnset) throw std::invalid_argument("ranking contains a node twice");
    r.position_[v] = static_cast<Rank>(k);
  }
  r.order_ = std::move(order);
  return r;
}

void Ranking::assign_interval(Rank first, std::span<const NodeIndex> nodes) {
  const std::size_t last = static_cast<std::size_t>(first) + nodes.size();
  if (last > order_.size()) throw std::logic_error("assign_interval: interval exceeds ranking");
  std::vector<bool> seen(nodes.size(), false);
  for (NodeIndex v : nodes) {
    if (v >= position_.size() || position_[v] < first || position_[v] >= last) {
      throw std::logic_error("assign_interval: node outside the interval");
    }
    const std::size_t slot = position_[v] - first;
    if (seen[slot]) throw std::logic_error("assign_interval: duplicate node");
    seen[slot] = true;
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    order_[first + i] = nodes[i];
    position_[nodes[i]] = static_cast<Rank>(first + i);
  }
}

void Ranking::assign_ranks(std::span<const Rank> ranks, std::span<const NodeIndex> nodes) {
  if (ranks.size() != nodes.size()) throw std::logic_error("assign_ranks: size mismatch");
  std::vector<Rank> held;
  held.reserve(nodes.size());
  for (NodeIndex v : nodes) {
    if (v >= position_.size()) throw std::logic_error("assign_ranks: node out of range");
    held.push_back(position_[v]);
  }
  std::vector<Rank> wanted(ranks.begin(), ranks.end());
  std::sort(held.begin(), held.end());
  std::sort(wanted.begin(), wanted.end());
  if (held != wanted || std::adjacent_find(held.begin(), held.end()) != held.end()) {
    throw std::logic_error("assign_ranks: ranks are not the ones held by the nodes");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    order_[ranks[i]] = nodes[i];
    position_[nodes[i]] = ranks[i];
  }
}

Ranking Ranking::reversed() const {
  std::vector<NodeIndex> order(order_.rbegin(), order_.rend());
  return from_order(std::move(order));
}

}  // namespace fwrank
