#include <algorithm>
#include <stdexcept>

#include "combench/detection.hpp"

namespace combench {

double modularity(const Graph& g, const Partition& p) {
  if (p.node_count() != g.node_count()) {
    throw std::invalid_argument("modularity: partition does not cover the graph");
  }
  if (g.edge_count() == 0) {
    throw std::invalid_argument("modularity: graph has no edges");
  }
  const double m = static_cast<double>(g.edge_count());
  std::vector<std::int64_t> internal(static_cast<std::size_t>(p.community_count()), 0);
  std::vector<double> degree_sum(static_cast<std::size_t>(p.community_count()), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    degree_sum[p[v]] += static_cast<double>(g.degree(v));
    for (const NodeId u : g.neighbors(v)) {
      if (u > v && p[u] == p[v]) ++internal[p[v]];
    }
  }
  double q = 0.0;
  for (int c = 0; c < p.community_count(); ++c) {
    const double fraction = degree_sum[c] / (2.0 * m);
    q += static_cast<double>(internal[c]) / m - fraction * fraction;
  }
  return q;
}

double modularity(const WeightedAggregate& g, const std::vector<int>& membership) {
  if (static_cast<int>(membership.size()) != g.node_count) {
    throw std::invalid_argument("modularity: membership does not cover the graph");
  }
  const double total = g.total_weight();
  if (total <= 0.0) {
    throw std::invalid_argument("modularity: graph has no link weight");
  }
  int communities = 0;
  for (const int c : membership) communities = std::max(communities, c + 1);
  std::vector<double> internal(static_cast<std::size_t>(communities), 0.0);
  std::vector<double> strength_sum(static_cast<std::size_t>(communities), 0.0);
  for (int v = 0; v < g.node_count; ++v) {
    const int cv = membership[v];
    strength_sum[cv] += g.strength(v);
    internal[cv] += g.self_loop[v];
    for (const auto& [u, w] : g.adjacency[v]) {
      if (u > v && membership[u] == cv) internal[cv] += 2.0 * w;
    }
  }
  double q = 0.0;
  for (int c = 0; c < communities; ++c) {
    const double fraction = strength_sum[c] / (2.0 * total);
    q += internal[c] / (2.0 * total) - fraction * fraction;
  }
  return q;
}

Partition partition_at_prefix(const Dendrogram& dendrogram, int prefix) {
  if (prefix < 0 || prefix > static_cast<int>(dendrogram.merges.size())) {
    throw std::invalid_argument("partition_at_prefix: prefix out of range");
  }
  // Union-find over dendrogram ids; the k-th merge creates id leaf_count+k.
  const int total = dendrogram.leaf_count + prefix;
  std::vector<int> parent(static_cast<std::size_t>(total));
  for (int i = 0; i < total; ++i) parent[i] = i;
  const auto find = [&parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int k = 0; k < prefix; ++k) {
    const auto& merge = dendrogram.merges[k];
    const int target = dendrogram.leaf_count + k;
    parent[find(merge.a)] = target;
    parent[find(merge.b)] = target;
  }
  std::vector<int> labels(static_cast<std::size_t>(dendrogram.leaf_count));
  for (int v = 0; v < dendrogram.leaf_count; ++v) labels[v] = find(v);
  return Partition::from_labels(labels);
}

}  // namespace combench
