#include "fwrank/local_refine.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace fwrank {

BlockGain::BlockGain(const Graph& g, const Ranking& r, NodeIndex u, NodeIndex v) : u_(u), v_(v) {
  const Rank pu = r.position(u);
  const Rank pv = r.position(v);
  if (pu <= pv) throw std::invalid_argument("BlockGain: edge is not backward");
  t_ = pu - pv - 1;

  auto inside = [&](NodeIndex x) {
    const Rank px = r.position(x);
    return px > pv && px < pu;
  };
  auto add = [&](NodeIndex x, Weight a, Weight b) {
    events_.push_back({r.position(x) - pv, a, b});
  };

  for (const Arc& arc : g.out_arcs(u)) {
    if (arc.node == v) direct_ += arc.weight;
    else if (inside(arc.node)) add(arc.node, Weight{0}, arc.weight);
  }
  for (const Arc& arc : g.in_arcs(u)) {
    if (arc.node != v && inside(arc.node)) add(arc.node, Weight{0}, -arc.weight);
  }
  for (const Arc& arc : g.out_arcs(v)) {
    if (arc.node == u) direct_ -= arc.weight;
    else if (inside(arc.node)) add(arc.node, -arc.weight, Weight{0});
  }
  for (const Arc& arc : g.in_arcs(v)) {
    if (arc.node != u && inside(arc.node)) add(arc.node, arc.weight, Weight{0});
  }

  std::sort(events_.begin(), events_.end(), [](const Event& x, const Event& y) { return x.offset < y.offset; });
  std::size_t kept = 0;
  for (const Event& e : events_) {
    if (kept > 0 && events_[kept - 1].offset == e.offset) {
      events_[kept - 1].a += e.a;
      events_[kept - 1].b += e.b;
    } else {
      events_[kept++] = e;
    }
  }
  events_.resize(kept);
  for (const Event& e : events_) {
    sum_a_ += e.a;
    sum_b_ += e.b;
  }
}

Weight BlockGain::at(std::size_t split) const {
  if (split > t_) throw std::out_of_range("BlockGain: split beyond block");
  Weight d = direct_ + sum_b_;
  for (const Event& e : events_) {
    if (e.offset > split) break;
    d += e.a - e.b;
  }
  return d;
}

BlockGain::Best BlockGain::best() const {
  // delta is piecewise constant between events, so only r = 0 and each event
  // offset can be a smallest maximizer.
  Best best{0, direct_ + sum_b_};
  Weight d = best.delta;
  for (const Event& e : events_) {
    d += e.a - e.b;
    if (d > best.delta) best = {e.offset, d};
  }
  return best;
}

BlockGain::Best block_gain_scan(const Graph& g, const Ranking& r, NodeIndex u, NodeIndex v) {
  return BlockGain(g, r, u, v).best();
}

void apply_block_split(Ranking& r, NodeIndex u, NodeIndex v, std::size_t split) {
  const Rank pu = r.position(u);
  const Rank pv = r.position(v);
  if (pu <= pv) throw std::invalid_argument("apply_block_split: edge is not backward");
  const std::size_t t = pu - pv - 1;
  if (split > t) throw std::out_of_range("apply_block_split: split beyond block");
  std::vector<NodeIndex> next;
  next.reserve(t + 2);
  for (std::size_t i = 1; i <= split; ++i) next.push_back(r.at(static_cast<Rank>(pv + i)));
  next.push_back(u);
  next.push_back(v);
  for (std::size_t i = split + 1; i <= t; ++i) next.push_back(r.at(static_cast<Rank>(pv + i)));
  r.assign_interval(pv, next);
}

std::array<Weight, 3> fallback_gains(const BlockGain& gains) {
  return {gains.direct() + gains.sum_a() + gains.sum_b(),
          gains.direct() + gains.sum_a(),
          gains.direct() + gains.sum_b()};
}

std::optional<FallbackChoice> greedy_fallback(const Graph& g, const Ranking& r, NodeIndex u, NodeIndex v) {
  const auto gains = fallback_gains(BlockGain(g, r, u, v));
  std::optional<FallbackChoice> best;
  for (int i = 0; i < 3; ++i) {
    if (gains[i] > Weight{0} && (!best || gains[i] > best->gain)) {
      best = FallbackChoice{static_cast<FallbackMove>(i + 1), gains[i]};
    }
  }
  return best;
}

void apply_fallback(Ranking& r, NodeIndex u, NodeIndex v, FallbackMove move) {
  const Rank pu = r.position(u);
  const Rank pv = r.position(v);
  if (pu <= pv) throw std::invalid_argument("apply_fallback: edge is not backward");
  switch (move) {
    case FallbackMove::Swap: {
      const NodeIndex pair[2] = {u, v};
      const Rank ranks[2] = {pv, pu};
      r.assign_ranks(ranks, pair);
      return;
    }
    case FallbackMove::PushV:
      apply_block_split(r, u, v, pu - pv - 1);
      return;
    case FallbackMove::PullU:
      apply_block_split(r, u, v, 0);
      return;
  }
}

namespace {

struct HeapItem {
  Weight weight;
  EdgeIndex edge;
};

struct Lighter {
  bool operator()(const HeapItem& a, const HeapItem& b) const {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.edge > b.edge;
  }
};

}  // namespace

RefineReport refine_ranking(const Graph& g, Ranking& r, const RefineOptions& opts) {
  if (r.size() != g.node_count()) throw std::invalid_argument("ranking does not match graph");
  RefineReport report;
  std::vector<bool> rejected(g.edge_count(), false);

  std::vector<HeapItem> initial;
  g.for_each_edge([&, e = EdgeIndex{0}](const Edge& edge) mutable {
    if (r.position(edge.source) > r.position(edge.target)) initial.push_back({edge.weight, e});
    ++e;
  });
  std::priority_queue<HeapItem, std::vector<HeapItem>, Lighter> heap(Lighter{}, std::move(initial));

  auto push_backward_around = [&](NodeIndex x) {
    const EdgeIndex first = g.first_out_edge(x);
    const auto out = g.out_arcs(x);
    for (std::size_t k = 0; k < out.size(); ++k) {
      const EdgeIndex e = first + static_cast<EdgeIndex>(k);
      if (!rejected[e] && r.position(x) > r.position(out[k].node)) heap.push({out[k].weight, e});
    }
    const auto in = g.in_arcs(x);
    const auto ids = g.in_edge_indices(x);
    for (std::size_t k = 0; k < in.size(); ++k) {
      if (!rejected[ids[k]] && r.position(in[k].node) > r.position(x)) heap.push({in[k].weight, ids[k]});
    }
  };

  while (!heap.empty()) {
    const HeapItem item = heap.top();
    heap.pop();
    const Edge e = g.edge(item.edge);
    const NodeIndex u = e.source;
    const NodeIndex v = e.target;
    if (rejected[item.edge] || r.position(u) < r.position(v)) {
      ++report.stale_pops;
      continue;
    }
    const Rank lo = r.position(v);
    const Rank hi = r.position(u);
    const BlockGain gains(g, r, u, v);

    bool moved = false;
    if (gains.block_size() <= opts.max_block) {
      const auto best = gains.best();
      if (best.delta > Weight{0}) {
        apply_block_split(r, u, v, best.split);
        report.gain += best.delta;
        ++report.scan_moves;
        moved = true;
      }
    }
    if (!moved) {
      const auto fb = fallback_gains(gains);
      int pick = -1;
      for (int i = 0; i < 3; ++i) {
        if (fb[i] > Weight{0} && (pick < 0 || fb[i] > fb[pick])) pick = i;
      }
      if (pick >= 0) {
        apply_fallback(r, u, v, static_cast<FallbackMove>(pick + 1));
        report.gain += fb[pick];
        ++report.fallback_moves;
        moved = true;
      }
    }
    if (!moved) {
      rejected[item.edge] = true;
      ++report.rejected;
      if (opts.record_trace) {
        report.rejections.push_back({item.edge, report.scan_moves + report.fallback_moves});
      }
      continue;
    }
    if (opts.record_trace) report.moves.push_back({lo, hi});
    push_backward_around(u);
    push_backward_around(v);
  }
  if (opts.record_trace) report.rejected_edges = std::move(rejected);
  return report;
}

}  // namespace fwrank
