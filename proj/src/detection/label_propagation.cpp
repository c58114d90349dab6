#include <algorithm>
#include <unordered_map>
#include <vector>

#include "combench/detection.hpp"
#include "combench/rng.hpp"

namespace combench {

// Asynchronous propagation: each sweep visits the nodes in a fresh random
// order and adopts the most frequent label among neighbors, breaking ties
// uniformly at random. A node whose current label already sits in the tied
// maximum keeps it, which is what lets the process settle.
DetectionResult label_propagation(const Graph& g, std::uint64_t seed, int max_sweeps) {
  const NodeId n = g.node_count();
  DetectionResult result;
  result.dendrogram.leaf_count = n;
  if (g.edge_count() == 0) {
    result.partition = Partition::singletons(n);
    return result;
  }

  Rng rng(seed);
  std::vector<int> label(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) label[v] = v;

  std::vector<NodeId> order(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) order[v] = v;

  std::unordered_map<int, int> counts;
  std::vector<int> winners;

  int sweeps = 0;
  bool settled = false;
  while (sweeps < max_sweeps && !settled) {
    ++sweeps;
    rng.shuffle(order);
    int changes = 0;
    for (const NodeId v : order) {
      const auto nbrs = g.neighbors(v);
      if (nbrs.empty()) continue;
      counts.clear();
      int best = 0;
      for (const NodeId u : nbrs) {
        const int c = ++counts[label[u]];
        if (c > best) best = c;
      }
      if (counts.count(label[v]) != 0 && counts[label[v]] == best) continue;
      winners.clear();
      for (const auto& [candidate, count] : counts) {
        if (count == best) winners.push_back(candidate);
      }
      int chosen = winners.front();
      if (winners.size() > 1) {
        // unordered_map iteration order is not specified, so the tie break
        // must not depend on it
        std::sort(winners.begin(), winners.end());
        chosen = winners[rng.below_int(static_cast<int>(winners.size()))];
      }
      label[v] = chosen;
      ++changes;
    }
    settled = changes == 0;
  }

  result.partition = Partition::from_labels(label);
  result.modularity = modularity(g, result.partition);
  result.iterations = sweeps;
  result.converged = settled;
  return result;
}

}  // namespace combench
