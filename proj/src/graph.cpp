#include "fwrank/graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "fwrank/errors.hpp"

namespace fwrank {

Graph Graph::from_edges(std::vector<std::string> ids, std::vector<Edge> edges, WeightScale scale) {
  Graph g;
  g.scale_ = scale;
  const std::size_t n = ids.size();
  if (n > std::numeric_limits<NodeIndex>::max()) {
    throw std::length_error("too many nodes");
  }
  g.index_of_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.index_of_.emplace(ids[i], static_cast<NodeIndex>(i)).second) {
      throw ValidationError("duplicate node id '" + ids[i] + "'");
    }
  }
  g.ids_ = std::move(ids);

  for (const Edge& e : edges) {
    if (e.source >= n || e.target >= n) throw std::out_of_range("edge endpoint out of range");
    if (e.weight < Weight{0}) throw ValidationError("negative edge weight");
  }

  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });

  // Merge parallel edges and strip self-loops in place.
  std::size_t kept = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.source == e.target) {
      g.dropped_self_loop_weight_ += e.weight;
      continue;
    }
    if (kept > 0 && edges[kept - 1].source == e.source && edges[kept - 1].target == e.target) {
      edges[kept - 1].weight += e.weight;
    } else {
      edges[kept++] = e;
    }
  }
  edges.resize(kept);
  if (kept > std::numeric_limits<EdgeIndex>::max()) throw std::length_error("too many edges");

  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  for (const Edge& e : edges) {
    ++g.out_offsets_[e.source + 1];
    ++g.in_offsets_[e.target + 1];
    g.total_weight_ += e.weight;
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.out_offsets_[i + 1] += g.out_offsets_[i];
    g.in_offsets_[i + 1] += g.in_offsets_[i];
  }

  g.out_arcs_.resize(kept);
  g.edge_source_.resize(kept);
  for (std::size_t i = 0; i < kept; ++i) {
    g.out_arcs_[i] = {edges[i].target, edges[i].weight};
    g.edge_source_[i] = edges[i].source;
  }

  // Edges are sorted by source, so filling in-lists in edge order leaves each
  // in-list sorted by source as well.
  g.in_arcs_.resize(kept);
  g.in_edge_ids_.resize(kept);
  std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (std::size_t i = 0; i < kept; ++i) {
    const std::size_t slot = cursor[edges[i].target]++;
    g.in_arcs_[slot] = {edges[i].source, edges[i].weight};
    g.in_edge_ids_[slot] = static_cast<EdgeIndex>(i);
  }
  return g;
}

Graph Graph::from_edges(std::size_t node_count, std::vector<Edge> edges, WeightScale scale) {
  std::vector<std::string> ids;
  ids.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) ids.push_back(std::to_string(i));
  return from_edges(std::move(ids), std::move(edges), scale);
}

std::optional<EdgeIndex> Graph::find_edge(NodeIndex u, NodeIndex v) const {
  const auto arcs = out_arcs(u);
  auto it = std::lower_bound(arcs.begin(), arcs.end(), v,
                             [](const Arc& a, NodeIndex x) { return a.node < x; });
  if (it == arcs.end() || it->node != v) return std::nullopt;
  return static_cast<EdgeIndex>(out_offsets_[u] + static_cast<std::size_t>(it - arcs.begin()));
}

Weight Graph::weight(NodeIndex u, NodeIndex v) const {
  auto e = find_edge(u, v);
  return e ? out_arcs_[*e].weight : Weight{0};
}

Weight Graph::out_weight(NodeIndex u) const {
  Weight s;
  for (const Arc& a : out_arcs(u)) s += a.weight;
  return s;
}

Weight Graph::in_weight(NodeIndex v) const {
  Weight s;
  for (const Arc& a : in_arcs(v)) s += a.weight;
  return s;
}

std::optional<NodeIndex> Graph::find_node(std::string_view id) const {
  auto it = index_of_.find(id);
  if (it == index_of_.end()) return std::nullopt;
  return it->second;
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeIndex> nodes) {
  Subgraph sub;
  sub.to_parent.assign(nodes.begin(), nodes.end());
  for (NodeIndex v : sub.to_parent) {
    if (v >= g.node_count()) throw std::out_of_range("induced_subgraph: node index out of range");
  }
  std::sort(sub.to_parent.begin(), sub.to_parent.end());
  sub.to_parent.erase(std::unique(sub.to_parent.begin(), sub.to_parent.end()), sub.to_parent.end());

  auto local_of = [&](NodeIndex parent) -> std::optional<NodeIndex> {
    auto it = std::lower_bound(sub.to_parent.begin(), sub.to_parent.end(), parent);
    if (it == sub.to_parent.end() || *it != parent) return std::nullopt;
    return static_cast<NodeIndex>(it - sub.to_parent.begin());
  };

  std::vector<std::string> ids;
  ids.reserve(sub.to_parent.size());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < sub.to_parent.size(); ++i) {
    const NodeIndex p = sub.to_parent[i];
    ids.push_back(g.external_id(p));
    for (const Arc& a : g.out_arcs(p)) {
      if (auto t = local_of(a.node)) edges.push_back({static_cast<NodeIndex>(i), *t, a.weight});
    }
  }
  sub.graph = Graph::from_edges(std::move(ids), std::move(edges), g.scale());
  return sub;
}

}  // namespace fwrank
