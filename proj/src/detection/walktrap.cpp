#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
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

// t-step transition probabilities from every node, kept as float rows to
// halve the O(n^2) memory. Zero-degree nodes keep their mass in place.
std::vector<std::vector<float>> transition_rows(const Graph& g, int steps) {
  const int n = g.node_count();
  std::vector<std::vector<float>> rows(static_cast<std::size_t>(n));
  std::vector<double> cur(static_cast<std::size_t>(n));
  std::vector<double> next(static_cast<std::size_t>(n));
  for (NodeId source = 0; source < n; ++source) {
    std::fill(cur.begin(), cur.end(), 0.0);
    cur[source] = 1.0;
    for (int step = 0; step < steps; ++step) {
      std::fill(next.begin(), next.end(), 0.0);
      for (NodeId v = 0; v < n; ++v) {
        if (cur[v] == 0.0) continue;
        const NodeId deg = g.degree(v);
        if (deg == 0) {
          next[v] += cur[v];
          continue;
        }
        const double share = cur[v] / static_cast<double>(deg);
        for (const NodeId u : g.neighbors(v)) next[u] += share;
      }
      cur.swap(next);
    }
    rows[source].assign(cur.begin(), cur.end());
  }
  return rows;
}

}  // namespace

double walktrap_pair_distance(const Graph& g, int steps, NodeId a, NodeId b) {
  if (steps < 1) throw std::invalid_argument("walktrap_pair_distance: steps must be >= 1");
  if (a < 0 || a >= g.node_count() || b < 0 || b >= g.node_count()) {
    throw std::invalid_argument("walktrap_pair_distance: node out of range");
  }
  const auto rows = transition_rows(g, steps);
  double total = 0.0;
  for (NodeId k = 0; k < g.node_count(); ++k) {
    const double deg = static_cast<double>(g.degree(k));
    if (deg == 0.0) continue;
    const double diff = static_cast<double>(rows[a][k]) - static_cast<double>(rows[b][k]);
    total += diff * diff / deg;
  }
  return total;
}

DetectionResult walktrap(const Graph& g, int steps) {
  if (steps < 1) throw std::invalid_argument("walktrap: steps must be >= 1");
  const int n = g.node_count();
  DetectionResult result;
  result.dendrogram.leaf_count = n;
  if (g.edge_count() == 0) {
    result.partition = Partition::singletons(n);
    return result;
  }
  const double m = static_cast<double>(g.edge_count());

  std::vector<double> degree(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) degree[v] = static_cast<double>(g.degree(v));

  // Community state, one slot per leaf; merges reuse the `keep` slot.
  std::vector<std::vector<float>> vec = transition_rows(g, steps);
  std::vector<int> size(static_cast<std::size_t>(n), 1);
  std::vector<double> degree_sum = degree;
  std::vector<int> dendro_id(static_cast<std::size_t>(n));
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  std::vector<std::unordered_map<int, double>> adj(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    dendro_id[v] = v;
    for (const NodeId u : g.neighbors(v)) adj[v].emplace(u, 1.0);
  }

  // Squared walk distance between two community probability profiles.
  const auto walk_distance = [&](int a, int b) {
    const auto& va = vec[a];
    const auto& vb = vec[b];
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
      if (degree[k] == 0.0) continue;
      const double diff = static_cast<double>(va[k]) - static_cast<double>(vb[k]);
      total += diff * diff / degree[k];
    }
    return total;
  };

  const auto merge_cost = [&](int a, int b) {
    const double sa = static_cast<double>(size[a]);
    const double sb = static_cast<double>(size[b]);
    return walk_distance(a, b) * (sa * sb / (sa + sb)) / static_cast<double>(n);
  };

  // Lazy min-heap of merge costs over adjacent community pairs.
  std::unordered_map<std::int64_t, double> pair_cost;
  using HeapEntry = std::tuple<double, int, int>;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
  for (NodeId v = 0; v < n; ++v) {
    for (const NodeId u : g.neighbors(v)) {
      if (u <= v) continue;
      const double cost = merge_cost(v, u);
      pair_cost[pair_key(v, u)] = cost;
      heap.emplace(cost, v, u);
    }
  }

  double q_running = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const double fraction = degree_sum[v] / (2.0 * m);
    q_running -= fraction * fraction;
  }
  double q_best = q_running;
  int best_prefix = 0;

  while (!heap.empty()) {
    const auto [cost, a, b] = heap.top();
    heap.pop();
    if (!alive[a] || !alive[b]) continue;
    const auto it = pair_cost.find(pair_key(a, b));
    if (it == pair_cost.end() || it->second != cost) continue;

    int keep = a;
    int gone = b;
    if (adj[keep].size() < adj[gone].size()) std::swap(keep, gone);
    const double cross = adj[keep].at(gone);

    q_running += cross / m - degree_sum[keep] * degree_sum[gone] / (2.0 * m * m);
    result.dendrogram.merges.push_back({dendro_id[keep], dendro_id[gone], q_running});
    dendro_id[keep] = n + static_cast<int>(result.dendrogram.merges.size()) - 1;

    // Average the probability profiles, weighted by community size.
    const double sk = static_cast<double>(size[keep]);
    const double sg = static_cast<double>(size[gone]);
    auto& vk = vec[keep];
    const auto& vg = vec[gone];
    for (int k = 0; k < n; ++k) {
      vk[k] = static_cast<float>((sk * vk[k] + sg * vg[k]) / (sk + sg));
    }
    vec[gone] = std::vector<float>();  // release the row
    size[keep] += size[gone];
    degree_sum[keep] += degree_sum[gone];
    alive[gone] = false;
    pair_cost.erase(it);

    for (const auto& [x, w] : adj[gone]) {
      if (x == keep) continue;
      adj[x].erase(gone);
      adj[keep][x] += w;
      adj[x][keep] = adj[keep][x];
      pair_cost.erase(pair_key(gone, x));
    }
    adj[keep].erase(gone);
    adj[gone].clear();

    for (const auto& [x, w] : adj[keep]) {
      const double fresh = merge_cost(keep, x);
      pair_cost[pair_key(keep, x)] = fresh;
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
