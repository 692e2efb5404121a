#include "fwrank/greedy.hpp"

#include <queue>
#include <random>
#include <vector>

namespace fwrank {
namespace {

__extension__ typedef __int128 i128;

struct Entry {
  std::int64_t numer;  // residual out + 1 unit
  std::int64_t denom;  // residual in + 1 unit
  NodeIndex node;
};

// Max-heap order: higher score first, smaller index on equal scores.
struct Lower {
  bool operator()(const Entry& a, const Entry& b) const {
    const auto lhs = static_cast<i128>(a.numer) * b.denom;
    const auto rhs = static_cast<i128>(b.numer) * a.denom;
    if (lhs != rhs) return lhs < rhs;
    return a.node > b.node;
  }
};

}  // namespace

Ranking greedy_rank(const Graph& g, const GreedyOptions& opts, GreedyReport* report) {
  const std::size_t n = g.node_count();
  const std::int64_t one = g.scale().units_per_one();
  GreedyReport local;
  GreedyReport& rep = report ? *report : local;
  rep = {};

  std::vector<std::int64_t> out_w(n), in_w(n);
  for (NodeIndex v = 0; v < n; ++v) {
    out_w[v] = g.out_weight(v).units;
    in_w[v] = g.in_weight(v).units;
  }
  std::vector<bool> ranked(n, false);

  std::vector<Entry> initial;
  initial.reserve(n);
  for (NodeIndex v = 0; v < n; ++v) {
    if (opts.initial_heap_filter && !opts.initial_heap_filter(v)) continue;
    initial.push_back({out_w[v] + one, in_w[v] + one, v});
  }
  std::priority_queue<Entry, std::vector<Entry>, Lower> heap(Lower{}, std::move(initial));

  std::vector<NodeIndex> order;
  order.reserve(n);
  while (!heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    ++rep.heap_pops;
    const NodeIndex u = top.node;
    if (ranked[u] || top.numer != out_w[u] + one || top.denom != in_w[u] + one) {
      ++rep.stale_pops;
      continue;
    }
    ranked[u] = true;
    order.push_back(u);
    for (const Arc& a : g.out_arcs(u)) {
      if (ranked[a.node]) continue;
      in_w[a.node] -= a.weight.units;
      heap.push({out_w[a.node] + one, in_w[a.node] + one, a.node});
    }
    for (const Arc& a : g.in_arcs(u)) {
      if (ranked[a.node]) continue;
      out_w[a.node] -= a.weight.units;
      heap.push({out_w[a.node] + one, in_w[a.node] + one, a.node});
    }
  }

  if (order.size() < n) {
    std::vector<NodeIndex> rest;
    for (NodeIndex v = 0; v < n; ++v) {
      if (!ranked[v]) rest.push_back(v);
    }
    // Fisher-Yates on raw mt19937_64 output, which is fully specified by the
    // standard; std::shuffle's draw sequence is not.
    std::mt19937_64 rng(opts.seed);
    for (std::size_t i = rest.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(rest[i - 1], rest[j]);
    }
    rep.shuffled_tail = rest.size();
    order.insert(order.end(), rest.begin(), rest.end());
  }
  return Ranking::from_order(std::move(order));
}

}  // namespace fwrank
