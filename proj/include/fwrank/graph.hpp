#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fwrank/weight.hpp"

namespace fwrank {

using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

struct Edge {
  NodeIndex source = 0;
  NodeIndex target = 0;
  Weight weight;
};

/// One adjacency entry: the neighbor and the weight of the connecting edge.
struct Arc {
  NodeIndex node = 0;
  Weight weight;
};

/*
  Immutable weighted digraph over dense indices [0, n).

  Edges live in CSR form twice: outgoing arcs sorted by target and incoming
  arcs sorted by source. An edge's index is its slot in the outgoing CSR, so
  edges are enumerated in (source, target) order. Construction drops
  self-loops (recording their weight) and merges parallel edges by summing.
*/
class Graph {
 public:
  Graph() = default;

  /// `ids[i]` is the external identifier of node i; ids must be distinct.
  static Graph from_edges(std::vector<std::string> ids, std::vector<Edge> edges,
                          WeightScale scale = {});

  /// Convenience for fixtures: external ids are the decimal indices "0".."n-1".
  static Graph from_edges(std::size_t node_count, std::vector<Edge> edges,
                          WeightScale scale = {});

  [[nodiscard]] std::size_t node_count() const { return ids_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return out_arcs_.size(); }

  [[nodiscard]] std::span<const Arc> out_arcs(NodeIndex u) const {
    return {out_arcs_.data() + out_offsets_[u], out_arcs_.data() + out_offsets_[u + 1]};
  }
  [[nodiscard]] std::span<const Arc> in_arcs(NodeIndex v) const {
    return {in_arcs_.data() + in_offsets_[v], in_arcs_.data() + in_offsets_[v + 1]};
  }
  /// Edge indices parallel to in_arcs(v).
  [[nodiscard]] std::span<const EdgeIndex> in_edge_indices(NodeIndex v) const {
    return {in_edge_ids_.data() + in_offsets_[v], in_edge_ids_.data() + in_offsets_[v + 1]};
  }
  [[nodiscard]] EdgeIndex first_out_edge(NodeIndex u) const {
    return static_cast<EdgeIndex>(out_offsets_[u]);
  }

  [[nodiscard]] Edge edge(EdgeIndex e) const {
    return {edge_source_[e], out_arcs_[e].node, out_arcs_[e].weight};
  }

  /// Weight of the stored edge u->v, zero when absent.
  [[nodiscard]] Weight weight(NodeIndex u, NodeIndex v) const;
  [[nodiscard]] std::optional<EdgeIndex> find_edge(NodeIndex u, NodeIndex v) const;

  [[nodiscard]] Weight out_weight(NodeIndex u) const;
  [[nodiscard]] Weight in_weight(NodeIndex v) const;

  [[nodiscard]] Weight total_weight() const { return total_weight_; }
  [[nodiscard]] Weight dropped_self_loop_weight() const { return dropped_self_loop_weight_; }
  [[nodiscard]] WeightScale scale() const { return scale_; }

  [[nodiscard]] const std::string& external_id(NodeIndex v) const { return ids_[v]; }
  [[nodiscard]] const std::vector<std::string>& external_ids() const { return ids_; }
  [[nodiscard]] std::optional<NodeIndex> find_node(std::string_view id) const;

  /// Calls fn(Edge) for every edge in (source, target) order.
  template <class Fn>
  void for_each_edge(Fn&& fn) const {
    for (EdgeIndex e = 0; e < out_arcs_.size(); ++e) fn(edge(e));
  }

 private:
  struct IdHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };

  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex, IdHash, std::equal_to<>> index_of_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<Arc> out_arcs_;
  std::vector<NodeIndex> edge_source_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Arc> in_arcs_;
  std::vector<EdgeIndex> in_edge_ids_;
  Weight total_weight_;
  Weight dropped_self_loop_weight_;
  WeightScale scale_;
};

/// Induced subgraph plus the mapping from its local indices back to the parent.
struct Subgraph {
  Graph graph;
  std::vector<NodeIndex> to_parent;
};

/// Local indices follow ascending parent index; duplicates in `nodes` are ignored.
/// Throws std::out_of_range for an index outside the parent graph.
Subgraph induced_subgraph(const Graph& g, std::span<const NodeIndex> nodes);

}  // namespace fwrank
