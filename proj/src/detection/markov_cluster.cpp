#include <algorithm>
#include <cmath>
#include <vector>

#include "combench/detection.hpp"

namespace combench {

namespace {

using SparseColumn = std::vector<std::pair<NodeId, double>>;  // sorted by row

// Column-major sparse product (M * R) restricted to one result column:
// col_j = sum_k R_col_j[k] * M_col_k, accumulated through a dense scratch.
SparseColumn multiply_column(const std::vector<SparseColumn>& m, const SparseColumn& r_col,
                             std::vector<double>& scratch, std::vector<NodeId>& touched) {
  touched.clear();
  for (const auto& [k, weight] : r_col) {
    for (const auto& [row, value] : m[k]) {
      if (scratch[row] == 0.0) touched.push_back(row);
      scratch[row] += weight * value;
    }
  }
  std::sort(touched.begin(), touched.end());
  SparseColumn out;
  out.reserve(touched.size());
  for (const NodeId row : touched) {
    out.emplace_back(row, scratch[row]);
    scratch[row] = 0.0;
  }
  return out;
}

// Raise entries to the inflation power, normalize, drop entries below the
// prune threshold, and renormalize. The column maximum always survives so a
// column can never empty out.
void inflate_column(SparseColumn& col, double inflation, double prune_threshold) {
  double total = 0.0;
  double max_value = 0.0;
  for (auto& [row, value] : col) {
    value = std::pow(value, inflation);
    total += value;
    max_value = std::max(max_value, value);
  }
  if (total <= 0.0) return;
  const double max_share = max_value / total;
  SparseColumn kept;
  kept.reserve(col.size());
  double kept_total = 0.0;
  for (const auto& [row, value] : col) {
    const double normalized = value / total;
    if (normalized >= prune_threshold || normalized == max_share) {
      kept.push_back({row, normalized});
      kept_total += normalized;
    }
  }
  for (auto& [row, value] : kept) value /= kept_total;
  col.swap(kept);
}

double column_difference(const SparseColumn& a, const SparseColumn& b) {
  double worst = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      worst = std::max(worst, std::abs(a[i].second));
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      worst = std::max(worst, std::abs(b[j].second));
      ++j;
    } else {
      worst = std::max(worst, std::abs(a[i].second - b[j].second));
      ++i;
      ++j;
    }
  }
  return worst;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

DetectionResult markov_cluster(const Graph& g, const DetectionConfig& config) {
  config.validate();
  const NodeId n = g.node_count();
  DetectionResult result;
  result.dendrogram.leaf_count = n;
  if (g.edge_count() == 0) {
    result.partition = Partition::singletons(n);
    return result;
  }

  // Column-stochastic walk matrix over the non-isolated nodes; isolated
  // nodes stay out and come back as singletons at the end.
  std::vector<SparseColumn> cols(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    const auto nbrs = g.neighbors(v);
    if (nbrs.empty()) continue;
    const double share = 1.0 / static_cast<double>(nbrs.size());
    for (const NodeId u : nbrs) cols[v].emplace_back(u, share);
  }

  std::vector<double> scratch(static_cast<std::size_t>(n), 0.0);
  std::vector<NodeId> touched;

  int iteration = 0;
  bool converged = false;
  while (iteration < config.mcl_max_iterations && !converged) {
    ++iteration;
    // expansion: result = cols^mcl_expansion
    std::vector<SparseColumn> expanded = cols;
    for (int power = 1; power < config.mcl_expansion; ++power) {
      std::vector<SparseColumn> next(static_cast<std::size_t>(n));
      for (NodeId j = 0; j < n; ++j) {
        if (expanded[j].empty()) continue;
        next[j] = multiply_column(cols, expanded[j], scratch, touched);
      }
      expanded.swap(next);
    }
    for (NodeId j = 0; j < n; ++j) {
      inflate_column(expanded[j], config.mcl_inflation, config.mcl_prune_threshold);
    }
    double worst = 0.0;
    for (NodeId j = 0; j < n; ++j) {
      worst = std::max(worst, column_difference(expanded[j], cols[j]));
    }
    converged = worst < 1e-6;
    cols.swap(expanded);
  }

  // Communities: weakly connected components of the surviving support.
  UnionFind components(n);
  for (NodeId j = 0; j < n; ++j) {
    for (const auto& [row, value] : cols[j]) {
      if (value > 0.0) components.merge(row, j);
    }
  }
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) labels[v] = components.find(v);

  result.partition = Partition::from_labels(labels);
  result.modularity = modularity(g, result.partition);
  result.iterations = iteration;
  result.converged = converged;
  return result;
}

}  // namespace combench
