#include <cmath>
#include <vector>

#include "combench/detection.hpp"
#include "combench/rng.hpp"

namespace combench {

namespace {

struct LevelOutcome {
  std::vector<int> membership;  // dense community per level node
  int community_count = 0;
  bool moved = false;
};

// One round of local moves over the community-level graph: every node may
// leave its community for the neighbor community with the best modularity
// gain, sweeping in random order until a full sweep moves nothing.
LevelOutcome run_level(const WeightedAggregate& graph, Rng& rng, int max_sweeps) {
  const int n = graph.node_count;
  const double m2 = 2.0 * graph.total_weight();

  std::vector<double> strength(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) strength[v] = graph.strength(v);

  std::vector<int> comm(static_cast<std::size_t>(n));
  std::vector<double> comm_strength(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    comm[v] = v;
    comm_strength[v] = strength[v];
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) order[v] = v;

  // Scratch: total link weight from the current node to each community.
  std::vector<double> weight_to(static_cast<std::size_t>(n), 0.0);
  std::vector<int> touched;

  LevelOutcome outcome;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    rng.shuffle(order);
    int changes = 0;
    for (const int v : order) {
      const int old_comm = comm[v];
      touched.clear();
      for (const auto& [u, w] : graph.adjacency[v]) {
        const int c = comm[u];
        if (weight_to[c] == 0.0) touched.push_back(c);
        weight_to[c] += w;
      }
      if (weight_to[old_comm] == 0.0) touched.push_back(old_comm);

      comm_strength[old_comm] -= strength[v];

      // Staying alone scores 0; the old community is a candidate like any
      // neighbor, so the node only moves on a strict improvement.
      int best_comm = old_comm;
      double best_gain = weight_to[old_comm] - strength[v] * comm_strength[old_comm] / m2;
      for (const int c : touched) {
        const double gain = weight_to[c] - strength[v] * comm_strength[c] / m2;
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best_comm = c;
        }
      }

      comm_strength[best_comm] += strength[v];
      if (best_comm != old_comm) {
        comm[v] = best_comm;
        ++changes;
      }
      for (const int c : touched) weight_to[c] = 0.0;
    }
    if (changes == 0) break;
    outcome.moved = true;
  }

  const Partition dense = Partition::from_labels(comm);
  outcome.membership = dense.membership();
  outcome.community_count = dense.community_count();
  return outcome;
}

}  // namespace

DetectionResult louvain(const Graph& g, std::uint64_t seed) {
  const NodeId n = g.node_count();
  DetectionResult result;
  result.dendrogram.leaf_count = n;
  if (g.edge_count() == 0) {
    result.partition = Partition::singletons(n);
    return result;
  }

  Rng rng(seed);

  // Level-zero graph: unit edge weights, no self loops.
  WeightedAggregate current = aggregate(g, Partition::singletons(n));

  std::vector<int> assignment(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) assignment[v] = v;

  int levels = 0;
  constexpr int kMaxSweepsPerLevel = 1000;
  while (true) {
    const LevelOutcome level = run_level(current, rng, kMaxSweepsPerLevel);
    if (!level.moved) break;
    ++levels;
    for (auto& a : assignment) a = level.membership[a];
    current = aggregate(current, level.membership, level.community_count);
    if (current.node_count <= 1) break;
  }

  result.partition = Partition::from_labels(assignment);
  result.modularity = modularity(g, result.partition);
  result.iterations = levels;
  return result;
}

}  // namespace combench
