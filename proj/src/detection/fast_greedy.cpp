#include <cstdint>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "combench/detection.hpp"

namespace combench {

namespace {

std::int64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

DetectionResult fast_greedy(const Graph& g) {
  const int n = g.node_count();
  DetectionResult result;
  result.dendrogram.leaf_count = n;
  if (g.edge_count() == 0) {
    result.partition = Partition::singletons(n);
    return result;
  }
  const double m = static_cast<double>(g.edge_count());

  // One slot per initial community; merges keep the slot with the larger
  // adjacency map alive.
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  std::vector<int> dendro_id(static_cast<std::size_t>(n));
  std::vector<double> degree_sum(static_cast<std::size_t>(n));
  std::vector<std::unordered_map<int, double>> adj(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    dendro_id[v] = v;
    degree_sum[v] = static_cast<double>(g.degree(v));
    for (const NodeId u : g.neighbors(v)) adj[v].emplace(u, 1.0);
  }

  const auto delta_q = [&](int a, int b, double weight) {
    return weight / m - degree_sum[a] * degree_sum[b] / (2.0 * m * m);
  };

  // Lazy max-heap over connected community pairs; pair_dq holds the current
  // value so stale heap entries can be recognized and dropped.
  std::unordered_map<std::int64_t, double> pair_dq;
  using HeapEntry = std::tuple<double, int, int>;
  std::priority_queue<HeapEntry> heap;
  for (NodeId v = 0; v < n; ++v) {
    for (const NodeId u : g.neighbors(v)) {
      if (u <= v) continue;
      const double dq = delta_q(v, u, 1.0);
      pair_dq[pair_key(v, u)] = dq;
      heap.emplace(dq, v, u);
    }
  }

  double q_running = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const double fraction = degree_sum[v] / (2.0 * m);
    q_running -= fraction * fraction;
  }

  // Merge until no connected pair remains, tracking the modularity peak.
  double q_best = q_running;
  int best_prefix = 0;
  while (!heap.empty()) {
    const auto [dq, a, b] = heap.top();
    heap.pop();
    if (!alive[a] || !alive[b]) continue;
    const auto it = pair_dq.find(pair_key(a, b));
    if (it == pair_dq.end() || it->second != dq) continue;  // stale entry

    int keep = a;
    int gone = b;
    if (adj[keep].size() < adj[gone].size()) std::swap(keep, gone);

    q_running += dq;
    result.dendrogram.merges.push_back({dendro_id[keep], dendro_id[gone], q_running});
    dendro_id[keep] = n + static_cast<int>(result.dendrogram.merges.size()) - 1;
    alive[gone] = false;
    degree_sum[keep] += degree_sum[gone];
    pair_dq.erase(it);

    for (const auto& [x, w] : adj[gone]) {
      if (x == keep) continue;
      adj[x].erase(gone);
      adj[keep][x] += w;
      adj[x][keep] = adj[keep][x];
      pair_dq.erase(pair_key(gone, x));
    }
    adj[keep].erase(gone);
    adj[gone].clear();

    // The merged community's degree changed, so every incident pair gets a
    // fresh score.
    for (const auto& [x, w] : adj[keep]) {
      const double fresh = delta_q(keep, x, w);
      pair_dq[pair_key(keep, x)] = fresh;
      heap.emplace(fresh, std::min(keep, x), std::max(keep, x));
    }

    if (q_running > q_best) {
      q_best = q_running;
      best_prefix = static_cast<int>(result.dendrogram.merges.size());
    }
  }

  result.partition = partition_at_prefix(result.dendrogram, best_prefix);
  result.modularity = modularity(g, result.partition);
  result.iterations = static_cast<int>(result.dendrogram.merges.size());
  return result;
}

}  // namespace combench
