#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace combench {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

// Marker returned by bfs_distances for nodes the source cannot reach.
inline constexpr NodeId kUnreachable = -1;

class Partition;

// Immutable undirected simple graph over dense node ids 0..n-1, stored in
// compressed sparse row form. Neighbor lists are sorted ascending; the
// adjacency is symmetric and contains no self loops.
class Graph {
public:
  Graph() = default;

  NodeId node_count() const { return n_; }
  std::int64_t edge_count() const { return m_; }

  NodeId degree(NodeId v) const {
    return static_cast<NodeId>(offsets_[static_cast<std::size_t>(v) + 1] - offsets_[v]);
  }

  std::span<const NodeId> neighbors(NodeId v) const {
    const auto begin = adjacency_.data() + offsets_[v];
    const auto end = adjacency_.data() + offsets_[static_cast<std::size_t>(v) + 1];
    return {begin, end};
  }

  bool has_edge(NodeId a, NodeId b) const;

  // Edges as (low, high) pairs in lexicographic order.
  std::vector<Edge> edges() const;

private:
  friend Graph build_graph(const std::vector<Edge>& edges, NodeId n);
  friend Graph graph_from_adjacency(std::vector<std::vector<NodeId>> adjacency);

  NodeId n_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<NodeId> adjacency_;
};

// Builds a graph from an edge list. Duplicate pairs collapse to a single
// edge; self loops, ids outside [0, n) and negative n are rejected.
Graph build_graph(const std::vector<Edge>& edges, NodeId n);

// Adopts per-node neighbor lists that are already symmetric and loop free.
// Lists may be unsorted; they are sorted and checked here.
Graph graph_from_adjacency(std::vector<std::vector<NodeId>> adjacency);

struct SubgraphResult {
  Graph graph;
  std::vector<NodeId> to_parent;  // local id -> id in the parent graph
};

// Subgraph induced by `nodes` (deduplicated, must be non-empty and in
// range). Local ids follow the sorted order of the node set.
SubgraphResult induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

// Hop distances from `source`; unreachable nodes get kUnreachable.
std::vector<NodeId> bfs_distances(const Graph& g, NodeId source);

// Connected components as a partition, labeled in order of discovery from
// node 0 upward.
Partition connected_components(const Graph& g);

// Community-level view of a partitioned graph. Cross-community link weight
// sits in `adjacency`; self_loop[c] holds twice the intra-community link
// weight so strength(c) equals the summed degree of the community members.
struct WeightedAggregate {
  int node_count = 0;
  std::vector<std::vector<std::pair<int, double>>> adjacency;  // sorted by neighbor
  std::vector<double> self_loop;

  double strength(int c) const;
  // Total link weight; equals edge_count() when built from an unweighted graph.
  double total_weight() const;
};

WeightedAggregate aggregate(const Graph& g, const Partition& p);
WeightedAggregate aggregate(const WeightedAggregate& g, const std::vector<int>& membership,
                            int community_count);

}  // namespace combench
