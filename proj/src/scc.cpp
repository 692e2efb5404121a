#include "fwrank/scc.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

#include "fwrank/metrics.hpp"

namespace fwrank {

SccPartition compute_sccs(const Graph& g) {
  const std::size_t n = g.node_count();
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnvisited);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeIndex> stack;
  std::vector<std::vector<NodeIndex>> found;

  struct Frame {
    NodeIndex node;
    std::size_t next_arc;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0;

  for (NodeIndex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      const auto arcs = g.out_arcs(f.node);
      if (f.next_arc < arcs.size()) {
        const NodeIndex w = arcs[f.next_arc++].node;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const NodeIndex v = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
      if (low[v] == index[v]) {
        std::vector<NodeIndex> comp;
        NodeIndex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        found.push_back(std::move(comp));
      }
    }
  }

  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  SccPartition p;
  p.component.assign(n, 0);
  for (ComponentId c = 0; c < found.size(); ++c) {
    for (NodeIndex v : found[c]) p.component[v] = c;
  }
  p.members = std::move(found);
  return p;
}

CondensationDag condense(const Graph& g, const SccPartition& p) {
  const std::size_t k = p.count();
  CondensationDag dag;
  dag.successors.resize(k);
  for (NodeIndex u = 0; u < g.node_count(); ++u) {
    const ComponentId cu = p.component[u];
    for (const Arc& a : g.out_arcs(u)) {
      const ComponentId cv = p.component[a.node];
      if (cu != cv) dag.successors[cu].push_back(cv);
    }
  }
  std::vector<std::uint32_t> indegree(k, 0);
  for (auto& succ : dag.successors) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    for (ComponentId c : succ) ++indegree[c];
  }
  // Component ids already follow smallest member, so a min-heap on id is the tie-break.
  std::priority_queue<ComponentId, std::vector<ComponentId>, std::greater<>> ready;
  for (ComponentId c = 0; c < k; ++c) {
    if (indegree[c] == 0) ready.push(c);
  }
  dag.topological_order.reserve(k);
  while (!ready.empty()) {
    const ComponentId c = ready.top();
    ready.pop();
    dag.topological_order.push_back(c);
    for (ComponentId s : dag.successors[c]) {
      if (--indegree[s] == 0) ready.push(s);
    }
  }
  if (dag.topological_order.size() != k) throw std::logic_error("condensation is not acyclic");
  return dag;
}

namespace {

class PermutationSearch {
 public:
  PermutationSearch(const Graph& g, std::span<const NodeIndex> members)
      : nodes_(members.begin(), members.end()), k_(members.size()) {
    std::sort(nodes_.begin(), nodes_.end());
    w_.assign(k_ * k_, 0);
    for (std::size_t i = 0; i < k_; ++i) {
      for (const Arc& a : g.out_arcs(nodes_[i])) {
        auto it = std::lower_bound(nodes_.begin(), nodes_.end(), a.node);
        if (it != nodes_.end() && *it == a.node) {
          w_[i * k_ + static_cast<std::size_t>(it - nodes_.begin())] = a.weight.units;
        }
      }
    }
    into_.assign(k_, 0);
    placed_.assign(k_, false);
    current_.reserve(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = i + 1; j < k_; ++j) {
        open_pairs_ += std::max(w_[i * k_ + j], w_[j * k_ + i]);
      }
    }
  }

  std::vector<NodeIndex> run() {
    if (k_ <= 1) return nodes_;
    extend(0);
    std::vector<NodeIndex> out;
    out.reserve(k_);
    for (std::size_t i : best_) out.push_back(nodes_[i]);
    return out;
  }

 private:
  void extend(std::int64_t value) {
    if (current_.size() == k_) {
      if (best_.empty() || value > best_value_) {
        best_value_ = value;
        best_ = current_;
      }
      return;
    }
    if (!best_.empty()) {
      // Every edge from placed into open nodes turns forward, and each open
      // pair contributes at most its heavier direction.
      std::int64_t bound = value + open_pairs_;
      for (std::size_t x = 0; x < k_; ++x) {
        if (!placed_[x]) bound += into_[x];
      }
      if (bound <= best_value_) return;
    }
    for (std::size_t x = 0; x < k_; ++x) {
      if (placed_[x]) continue;
      std::int64_t pair_drop = 0;
      for (std::size_t y = 0; y < k_; ++y) {
        if (y == x || placed_[y]) continue;
        into_[y] += w_[x * k_ + y];
        pair_drop += std::max(w_[x * k_ + y], w_[y * k_ + x]);
      }
      placed_[x] = true;
      open_pairs_ -= pair_drop;
      current_.push_back(x);
      extend(value + into_[x]);
      current_.pop_back();
      open_pairs_ += pair_drop;
      placed_[x] = false;
      for (std::size_t y = 0; y < k_; ++y) {
        if (y == x || placed_[y]) continue;
        into_[y] -= w_[x * k_ + y];
      }
    }
  }

  std::vector<NodeIndex> nodes_;
  std::size_t k_;
  std::vector<std::int64_t> w_;
  std::vector<std::int64_t> into_;
  std::vector<bool> placed_;
  std::int64_t open_pairs_ = 0;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  std::int64_t best_value_ = 0;
};

std::vector<NodeIndex> by_rank(std::span<const NodeIndex> nodes, const Ranking& r) {
  std::vector<NodeIndex> out(nodes.begin(), nodes.end());
  std::sort(out.begin(), out.end(),
            [&](NodeIndex a, NodeIndex b) { return r.position(a) < r.position(b); });
  return out;
}

}  // namespace

std::vector<NodeIndex> best_small_scc_order(const Graph& g, std::span<const NodeIndex> members,
                                            std::size_t limit) {
  if (members.size() > limit) {
    throw std::invalid_argument("component of size " + std::to_string(members.size()) +
                                " exceeds the permutation limit " + std::to_string(limit));
  }
  return PermutationSearch(g, members).run();
}

SccBlockReport refine_scc_blocks(const Graph& g, Ranking& r, const SccBlockOptions& opts) {
  if (opts.block_size < 2) throw std::invalid_argument("block size must be at least 2");
  if (r.size() != g.node_count()) throw std::invalid_argument("ranking does not match graph");
  SccBlockReport report;
  if (g.node_count() == 0) return report;

  const SccPartition sccs = compute_sccs(g);
  std::size_t largest = 0;
  for (std::size_t c = 1; c < sccs.count(); ++c) {
    if (sccs.members[c].size() > sccs.members[largest].size()) largest = c;
  }
  const std::vector<NodeIndex> order = by_rank(sccs.members[largest], r);
  report.largest_scc_size = order.size();

  constexpr Rank kNoRank = std::numeric_limits<Rank>::max();
  std::vector<Rank> new_rank(g.node_count(), kNoRank);

  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::size_t start = 0;
  if (opts.offset > 0) {
    blocks.emplace_back(0, std::min(opts.offset, order.size()));
    start = std::min(opts.offset, order.size());
  }
  for (; start < order.size(); start += opts.block_size) {
    blocks.emplace_back(start, std::min(start + opts.block_size, order.size()));
  }

  for (auto [lo, hi] : blocks) {
    if (hi - lo < 2) continue;
    ++report.blocks;
    // Block membership is fixed; the current ranks may have moved since `order` was built.
    const std::vector<NodeIndex> block = by_rank({order.data() + lo, hi - lo}, r);
    const Subgraph sub = induced_subgraph(g, block);
    const SccPartition inner = compute_sccs(sub.graph);
    const CondensationDag dag = condense(sub.graph, inner);

    std::vector<NodeIndex> proposal;
    proposal.reserve(block.size());
    for (ComponentId c : dag.topological_order) {
      const auto& members = inner.members[c];
      if (members.size() <= opts.permutation_limit) {
        for (NodeIndex local : best_small_scc_order(sub.graph, members, opts.permutation_limit)) {
          proposal.push_back(sub.to_parent[local]);
        }
      } else {
        std::vector<NodeIndex> parents;
        for (NodeIndex local : members) parents.push_back(sub.to_parent[local]);
        for (NodeIndex v : by_rank(parents, r)) proposal.push_back(v);
      }
    }
    if (proposal == block) continue;

    std::vector<Rank> ranks;
    ranks.reserve(block.size());
    for (NodeIndex v : block) ranks.push_back(r.position(v));
    for (std::size_t i = 0; i < proposal.size(); ++i) new_rank[proposal[i]] = ranks[i];

    // Exact change over every edge touching the block; nodes outside keep their rank.
    auto rank_after = [&](NodeIndex x) { return new_rank[x] != kNoRank ? new_rank[x] : r.position(x); };
    Weight delta;
    for (NodeIndex b : block) {
      for (const Arc& a : g.out_arcs(b)) {
        const bool before = r.position(b) < r.position(a.node);
        const bool after = rank_after(b) < rank_after(a.node);
        if (before != after) delta += after ? a.weight : -a.weight;
      }
      for (const Arc& a : g.in_arcs(b)) {
        if (new_rank[a.node] != kNoRank) continue;  // counted as an out-arc above
        const bool before = r.position(a.node) < r.position(b);
        const bool after = r.position(a.node) < rank_after(b);
        if (before != after) delta += after ? a.weight : -a.weight;
      }
    }
    if (delta > Weight{0}) {
      r.assign_ranks(ranks, proposal);
      ++report.adopted;
      report.gain += delta;
    }
    for (NodeIndex v : block) new_rank[v] = kNoRank;
  }
  return report;
}

Ranking scc_global_ranking(const Graph& g, const Ranking& r, std::size_t permutation_limit) {
  if (r.size() != g.node_count()) throw std::invalid_argument("ranking does not match graph");
  const SccPartition sccs = compute_sccs(g);
  const CondensationDag dag = condense(g, sccs);
  std::vector<NodeIndex> order;
  order.reserve(g.node_count());
  for (ComponentId c : dag.topological_order) {
    const auto& members = sccs.members[c];
    const auto part = members.size() <= permutation_limit
                          ? best_small_scc_order(g, members, permutation_limit)
                          : by_rank(members, r);
    order.insert(order.end(), part.begin(), part.end());
  }
  return Ranking::from_order(std::move(order));
}

}  // namespace fwrank
