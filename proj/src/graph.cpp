#include "combench/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

#include "combench/partition.hpp"

namespace combench {

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (a == b) return false;
  // Search the shorter list.
  if (degree(a) > degree(b)) std::swap(a, b);
  const auto nbrs = neighbors(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(static_cast<std::size_t>(m_));
  for (NodeId v = 0; v < n_; ++v) {
    for (NodeId u : neighbors(v)) {
      if (u > v) result.emplace_back(v, u);
    }
  }
  return result;
}

Graph build_graph(const std::vector<Edge>& edges, NodeId n) {
  if (n < 0) throw std::invalid_argument("build_graph: negative node count");
  std::vector<std::vector<NodeId>> adjacency(static_cast<std::size_t>(n));
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw std::invalid_argument("build_graph: edge endpoint " +
                                  std::to_string(a < 0 || a >= n ? a : b) +
                                  " outside [0, " + std::to_string(n) + ")");
    }
    if (a == b) {
      throw std::invalid_argument("build_graph: self loop at node " + std::to_string(a));
    }
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  for (auto& nbrs : adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return graph_from_adjacency(std::move(adjacency));
}

Graph graph_from_adjacency(std::vector<std::vector<NodeId>> adjacency) {
  const NodeId n = static_cast<NodeId>(adjacency.size());
  for (NodeId v = 0; v < n; ++v) {
    auto& nbrs = adjacency[v];
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
      throw std::invalid_argument("graph_from_adjacency: duplicate neighbor at node " +
                                  std::to_string(v));
    }
    for (NodeId u : nbrs) {
      if (u < 0 || u >= n) {
        throw std::invalid_argument("graph_from_adjacency: neighbor out of range");
      }
      if (u == v) {
        throw std::invalid_argument("graph_from_adjacency: self loop at node " +
                                    std::to_string(v));
      }
    }
  }

  Graph g;
  g.n_ = n;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  std::int64_t total = 0;
  for (NodeId v = 0; v < n; ++v) {
    total += static_cast<std::int64_t>(adjacency[v].size());
    g.offsets_[static_cast<std::size_t>(v) + 1] = total;
  }
  g.adjacency_.reserve(static_cast<std::size_t>(total));
  for (NodeId v = 0; v < n; ++v) {
    g.adjacency_.insert(g.adjacency_.end(), adjacency[v].begin(), adjacency[v].end());
  }
  g.m_ = total / 2;
  return g;
}

SubgraphResult induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  if (nodes.empty()) throw std::invalid_argument("induced_subgraph: empty node set");
  std::vector<NodeId> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.front() < 0 || sorted.back() >= g.node_count()) {
    throw std::invalid_argument("induced_subgraph: node id out of range");
  }

  std::vector<NodeId> local(static_cast<std::size_t>(g.node_count()), kUnreachable);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    local[sorted[i]] = static_cast<NodeId>(i);
  }

  std::vector<std::vector<NodeId>> adjacency(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (NodeId u : g.neighbors(sorted[i])) {
      if (local[u] != kUnreachable) adjacency[i].push_back(local[u]);
    }
  }

  SubgraphResult result;
  result.graph = graph_from_adjacency(std::move(adjacency));
  result.to_parent = std::move(sorted);
  return result;
}

std::vector<NodeId> bfs_distances(const Graph& g, NodeId source) {
  if (source < 0 || source >= g.node_count()) {
    throw std::invalid_argument("bfs_distances: source out of range");
  }
  std::vector<NodeId> dist(static_cast<std::size_t>(g.node_count()), kUnreachable);
  dist[source] = 0;
  std::queue<NodeId> frontier;
  frontier.push(source);
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    for (NodeId u : g.neighbors(v)) {
      if (dist[u] == kUnreachable) {
        dist[u] = dist[v] + 1;
        frontier.push(u);
      }
    }
  }
  return dist;
}

Partition connected_components(const Graph& g) {
  const NodeId n = g.node_count();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int next = 0;
  std::queue<NodeId> frontier;
  for (NodeId start = 0; start < n; ++start) {
    if (label[start] != -1) continue;
    label[start] = next;
    frontier.push(start);
    while (!frontier.empty()) {
      const NodeId v = frontier.front();
      frontier.pop();
      for (NodeId u : g.neighbors(v)) {
        if (label[u] == -1) {
          label[u] = next;
          frontier.push(u);
        }
      }
    }
    ++next;
  }
  return Partition::from_dense(std::move(label), next);
}

double WeightedAggregate::strength(int c) const {
  double s = self_loop[c];
  for (const auto& [_, w] : adjacency[c]) s += w;
  return s;
}

double WeightedAggregate::total_weight() const {
  double cross = 0.0;
  double loops = 0.0;
  for (int c = 0; c < node_count; ++c) {
    loops += self_loop[c];
    for (const auto& [d, w] : adjacency[c]) {
      if (d > c) cross += w;
    }
  }
  return cross + loops / 2.0;
}

namespace {

WeightedAggregate finish_aggregate(int count,
                                   std::vector<std::vector<std::pair<int, double>>> cross,
                                   std::vector<double> loops) {
  for (auto& row : cross) {
    std::sort(row.begin(), row.end());
  }
  WeightedAggregate agg;
  agg.node_count = count;
  agg.adjacency = std::move(cross);
  agg.self_loop = std::move(loops);
  return agg;
}

}  // namespace

WeightedAggregate aggregate(const Graph& g, const Partition& p) {
  if (p.node_count() != g.node_count()) {
    throw std::invalid_argument("aggregate: partition does not cover the graph");
  }
  const int count = p.community_count();
  std::vector<double> loops(static_cast<std::size_t>(count), 0.0);
  std::vector<std::vector<std::pair<int, double>>> cross(static_cast<std::size_t>(count));
  std::vector<std::vector<int>> touched_by(static_cast<std::size_t>(count));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const int cv = p[v];
    for (NodeId u : g.neighbors(v)) {
      if (u <= v) continue;
      const int cu = p[u];
      if (cu == cv) {
        loops[cv] += 2.0;
      } else {
        touched_by[std::min(cu, cv)].push_back(std::max(cu, cv));
      }
    }
  }
  for (int c = 0; c < count; ++c) {
    auto& targets = touched_by[c];
    std::sort(targets.begin(), targets.end());
    for (std::size_t i = 0; i < targets.size();) {
      std::size_t j = i;
      while (j < targets.size() && targets[j] == targets[i]) ++j;
      const double w = static_cast<double>(j - i);
      cross[c].emplace_back(targets[i], w);
      cross[targets[i]].emplace_back(c, w);
      i = j;
    }
  }
  return finish_aggregate(count, std::move(cross), std::move(loops));
}

WeightedAggregate aggregate(const WeightedAggregate& g, const std::vector<int>& membership,
                            int community_count) {
  if (static_cast<int>(membership.size()) != g.node_count) {
    throw std::invalid_argument("aggregate: membership does not cover the graph");
  }
  std::vector<double> loops(static_cast<std::size_t>(community_count), 0.0);
  std::vector<std::vector<std::pair<int, double>>> cross(
      static_cast<std::size_t>(community_count));
  std::vector<std::vector<std::pair<int, double>>> pending(
      static_cast<std::size_t>(community_count));
  for (int c = 0; c < g.node_count; ++c) {
    const int mc = membership[c];
    loops[mc] += g.self_loop[c];
    for (const auto& [d, w] : g.adjacency[c]) {
      if (d <= c) continue;  // visit each link once
      const int md = membership[d];
      if (md == mc) {
        loops[mc] += 2.0 * w;
      } else {
        pending[std::min(mc, md)].emplace_back(std::max(mc, md), w);
      }
    }
  }
  for (int c = 0; c < community_count; ++c) {
    auto& entries = pending[c];
    std::sort(entries.begin(), entries.end());
    for (std::size_t i = 0; i < entries.size();) {
      std::size_t j = i;
      double w = 0.0;
      while (j < entries.size() && entries[j].first == entries[i].first) {
        w += entries[j].second;
        ++j;
      }
      cross[c].emplace_back(entries[i].first, w);
      cross[entries[i].first].emplace_back(c, w);
      i = j;
    }
  }
  return finish_aggregate(community_count, std::move(cross), std::move(loops));
}

}  // namespace combench
