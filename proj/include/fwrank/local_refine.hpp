#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "fwrank/graph.hpp"
#include "fwrank/ranking.hpp"

namespace fwrank {

/*
  Gain table for one backward edge u->v (position(u) > position(v)).

  The block is [v, n_1, ..., n_t, u] in rank order. Splitting at r moves it to
  [n_1..n_r, u, v, n_{r+1}..n_t]; only edges among block nodes can change
  direction, and among those only the ones touching u or v. With
    a_i = w(n_i -> v) - w(v -> n_i)   and   b_i = w(u -> n_i) - w(n_i -> u)
  the gain is
    delta(r) = w(u,v) - w(v,u) + sum_{i <= r} a_i + sum_{i > r} b_i.
  Only block nodes adjacent to u or v have nonzero a_i or b_i, so the table
  stores those as sparse events sorted by block offset.
*/
class BlockGain {
 public:
  struct Event {
    std::size_t offset;  // i, 1-based within the block
    Weight a;
    Weight b;
  };

  /// Throws std::invalid_argument unless position(u) > position(v).
  BlockGain(const Graph& g, const Ranking& r, NodeIndex u, NodeIndex v);

  [[nodiscard]] NodeIndex u() const { return u_; }
  [[nodiscard]] NodeIndex v() const { return v_; }
  /// Number of nodes strictly between v and u.
  [[nodiscard]] std::size_t block_size() const { return t_; }
  [[nodiscard]] Weight direct() const { return direct_; }
  [[nodiscard]] Weight sum_a() const { return sum_a_; }
  [[nodiscard]] Weight sum_b() const { return sum_b_; }
  [[nodiscard]] const std::vector<Event>& events() const { return events_; }

  /// delta(split) for split in [0, t].
  [[nodiscard]] Weight at(std::size_t split) const;

  struct Best {
    std::size_t split = 0;
    Weight delta;
  };
  /// Maximizing split; the smallest one on ties.
  [[nodiscard]] Best best() const;

 private:
  NodeIndex u_, v_;
  std::size_t t_;
  Weight direct_;
  Weight sum_a_;
  Weight sum_b_;
  std::vector<Event> events_;
};

/// Best split for the backward edge u->v; see BlockGain.
BlockGain::Best block_gain_scan(const Graph& g, const Ranking& r, NodeIndex u, NodeIndex v);

/// Places u and v at the given split of their block (see BlockGain).
void apply_block_split(Ranking& r, NodeIndex u, NodeIndex v, std::size_t split);

enum class FallbackMove {
  Swap = 1,      // [u, n_1..n_t, v]
  PushV = 2,     // [n_1..n_t, u, v]
  PullU = 3,     // [u, v, n_1..n_t]
};

struct FallbackChoice {
  FallbackMove move;
  Weight gain;
};

/// Exact gains of the three fallback moves, in move order.
std::array<Weight, 3> fallback_gains(const BlockGain& gains);

/// The best strictly improving fallback move (lowest move number on ties).
std::optional<FallbackChoice> greedy_fallback(const Graph& g, const Ranking& r, NodeIndex u, NodeIndex v);

void apply_fallback(Ranking& r, NodeIndex u, NodeIndex v, FallbackMove move);

struct RefineOptions {
  // Blocks with more interior nodes than this skip the split scan.
  std::size_t max_block = 2000;
  // Keep per-move and per-rejection records in the report.
  bool record_trace = false;
};

struct RefineReport {
  std::size_t scan_moves = 0;
  std::size_t fallback_moves = 0;
  std::size_t rejected = 0;
  std::size_t stale_pops = 0;
  Weight gain;

  struct Move {
    Rank lo, hi;  // rank interval rewritten
  };
  struct Rejection {
    EdgeIndex edge;
    std::size_t moves_before;  // applied moves preceding the rejection
  };
  std::vector<Move> moves;
  std::vector<Rejection> rejections;
  std::vector<bool> rejected_edges;  // indexed by EdgeIndex; filled only with record_trace
};

/*
  One refinement pass. Backward edges wait in a max-heap keyed by weight
  (ties: smaller edge index). A popped edge that is no longer backward is
  skipped. Otherwise the best split is applied when it gains; failing that,
  the best fallback move; failing that, the edge is rejected for the rest of
  the pass. After a move every edge touching u or v that is now backward and
  not rejected is pushed again. Every applied move strictly increases the
  forward weight.
*/
RefineReport refine_ranking(const Graph& g, Ranking& r, const RefineOptions& opts = {});

}  // namespace fwrank
