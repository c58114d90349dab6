#include "combench/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace combench {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Local transitivity terms over an induced community subgraph.
struct TransitivitySum {
  double total = 0.0;
  int eligible = 0;  // nodes with internal degree >= 2
};

TransitivitySum transitivity_terms(const Graph& sub) {
  TransitivitySum sum;
  for (NodeId v = 0; v < sub.node_count(); ++v) {
    const auto nbrs = sub.neighbors(v);
    const auto k = static_cast<std::int64_t>(nbrs.size());
    if (k < 2) continue;
    std::int64_t links = 0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (sub.has_edge(nbrs[i], nbrs[j])) ++links;
      }
    }
    sum.total += 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
    ++sum.eligible;
  }
  return sum;
}

AverageDistance distance_over_subgraph(const Graph& sub) {
  AverageDistance result;
  if (sub.node_count() < 2) {
    result.value = kNaN;
    return result;
  }
  double total = 0.0;
  std::int64_t connected_pairs = 0;
  for (NodeId v = 0; v < sub.node_count(); ++v) {
    const auto dist = bfs_distances(sub, v);
    for (NodeId u = v + 1; u < sub.node_count(); ++u) {
      if (dist[u] == kUnreachable) {
        result.disconnected = true;
      } else {
        total += dist[u];
        ++connected_pairs;
      }
    }
  }
  result.value = connected_pairs > 0 ? total / static_cast<double>(connected_pairs) : kNaN;
  return result;
}

double hub_dominance_over_subgraph(const Graph& sub) {
  NodeId max_internal = 0;
  for (NodeId v = 0; v < sub.node_count(); ++v) {
    max_internal = std::max(max_internal, sub.degree(v));
  }
  return static_cast<double>(max_internal) / static_cast<double>(sub.node_count() - 1);
}

}  // namespace

std::vector<NodeEmbeddedness> embeddedness(const Graph& g, const Partition& p) {
  if (p.node_count() != g.node_count()) {
    throw std::invalid_argument("embeddedness: partition does not cover the graph");
  }
  std::vector<NodeEmbeddedness> result;
  result.reserve(static_cast<std::size_t>(g.node_count()));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const NodeId k = g.degree(v);
    if (k == 0) continue;
    NodeId internal = 0;
    for (const NodeId u : g.neighbors(v)) {
      if (p[u] == p[v]) ++internal;
    }
    result.push_back({v, internal, k, static_cast<double>(internal) / static_cast<double>(k)});
  }
  return result;
}

std::vector<NodeId> community_sizes(const Partition& p) { return p.sizes(); }

double internal_transitivity(const Graph& g, std::span<const NodeId> community,
                             TransitivityMode mode) {
  const auto sub = induced_subgraph(g, community);
  const auto sum = transitivity_terms(sub.graph);
  if (mode == TransitivityMode::kZeroForLowDegree) {
    return sum.total / static_cast<double>(sub.graph.node_count());
  }
  return sum.eligible > 0 ? sum.total / sum.eligible : 0.0;
}

double scaled_density(NodeId size, std::int64_t internal_edges) {
  if (size < 2) throw std::invalid_argument("scaled_density: community needs at least 2 nodes");
  if (internal_edges < 0) throw std::invalid_argument("scaled_density: negative edge count");
  return 2.0 * static_cast<double>(internal_edges) / static_cast<double>(size - 1);
}

AverageDistance average_distance(const Graph& g, std::span<const NodeId> community) {
  return distance_over_subgraph(induced_subgraph(g, community).graph);
}

double hub_dominance(const Graph& g, std::span<const NodeId> community) {
  const auto sub = induced_subgraph(g, community);
  if (sub.graph.node_count() < 2) {
    throw std::invalid_argument("hub_dominance: community needs at least 2 nodes");
  }
  return hub_dominance_over_subgraph(sub.graph);
}

std::vector<CommunityProfile> profile_communities(const Graph& g, const Partition& p) {
  if (p.node_count() != g.node_count()) {
    throw std::invalid_argument("profile_communities: partition does not cover the graph");
  }
  std::vector<CommunityProfile> profiles;
  profiles.reserve(static_cast<std::size_t>(p.community_count()));
  const auto members = p.communities();
  for (int c = 0; c < p.community_count(); ++c) {
    CommunityProfile profile;
    profile.community = c;
    profile.size = static_cast<NodeId>(members[c].size());
    if (profile.size == 1) {
      profile.scaled_density = kNaN;
      profile.transitivity = kNaN;
      profile.average_distance = kNaN;
      profile.hub_dominance = kNaN;
      profiles.push_back(profile);
      continue;
    }
    // Build the induced subgraph once and derive everything from it.
    const auto sub = induced_subgraph(g, members[c]);
    profile.internal_edges = sub.graph.edge_count();
    profile.scaled_density = scaled_density(profile.size, profile.internal_edges);
    const auto transitivity = transitivity_terms(sub.graph);
    profile.transitivity = transitivity.total / static_cast<double>(profile.size);
    const auto distance = distance_over_subgraph(sub.graph);
    profile.average_distance = distance.value;
    profile.distance_disconnected = distance.disconnected;
    profile.hub_dominance = hub_dominance_over_subgraph(sub.graph);
    profiles.push_back(profile);
  }
  return profiles;
}

BinnedSeries bin_by_size(const std::vector<CommunityProfile>& profiles,
                         const std::function<double(const CommunityProfile&)>& selector,
                         int bins_per_decade) {
  if (bins_per_decade < 1) throw std::invalid_argument("bin_by_size: bins_per_decade < 1");
  BinnedSeries series;

  // Bin index of an integer size; the nudge keeps exact powers of ten from
  // falling just below their boundary.
  const auto bin_of = [bins_per_decade](NodeId size) {
    return static_cast<int>(
        std::floor(static_cast<double>(bins_per_decade) * std::log10(static_cast<double>(size)) +
                   1e-9));
  };

  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  for (const auto& profile : profiles) {
    if (profile.size < 2) continue;
    const int bin = bin_of(profile.size);
    lo = std::min(lo, bin);
    hi = std::max(hi, bin);
  }
  if (lo > hi) return series;  // nothing but singletons

  const int bins = hi - lo + 1;
  series.bin_low.resize(bins);
  series.bin_high.resize(bins);
  series.mean.assign(bins, kNaN);
  series.count.assign(bins, 0);
  std::vector<double> sums(static_cast<std::size_t>(bins), 0.0);
  for (int b = 0; b < bins; ++b) {
    series.bin_low[b] = std::pow(10.0, static_cast<double>(lo + b) / bins_per_decade);
    series.bin_high[b] = std::pow(10.0, static_cast<double>(lo + b + 1) / bins_per_decade);
  }
  for (const auto& profile : profiles) {
    if (profile.size < 2) continue;
    const double value = selector(profile);
    if (std::isnan(value)) continue;
    const int b = bin_of(profile.size) - lo;
    sums[b] += value;
    ++series.count[b];
  }
  for (int b = 0; b < bins; ++b) {
    if (series.count[b] > 0) series.mean[b] = sums[b] / series.count[b];
  }
  return series;
}

Histogram histogram_unit_interval(const std::vector<double>& values, int bins) {
  if (bins < 1) throw std::invalid_argument("histogram_unit_interval: bins < 1");
  Histogram hist;
  hist.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) {
    hist.edges[b] = static_cast<double>(b) / bins;
  }
  hist.counts.assign(static_cast<std::size_t>(bins), 0);
  for (const double value : values) {
    if (value < 0.0 || value > 1.0) {
      throw std::invalid_argument("histogram_unit_interval: value outside [0, 1]");
    }
    const int b = std::min(bins - 1, static_cast<int>(value * bins));
    ++hist.counts[b];
  }
  return hist;
}

}  // namespace combench
