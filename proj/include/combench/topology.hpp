#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "combench/graph.hpp"
#include "combench/partition.hpp"

namespace combench {

struct NodeEmbeddedness {
  NodeId node = 0;
  NodeId internal_degree = 0;
  NodeId total_degree = 0;
  double value = 0.0;  // internal_degree / total_degree
};

// Embeddedness of every node with at least one neighbor; degree-zero nodes
// are skipped because the ratio is undefined for them.
std::vector<NodeEmbeddedness> embeddedness(const Graph& g, const Partition& p);

std::vector<NodeId> community_sizes(const Partition& p);

enum class TransitivityMode {
  kZeroForLowDegree,  // nodes with internal degree < 2 contribute 0
  kExcludeLowDegree,  // such nodes are left out of the average
};

// Mean local transitivity inside one community, computed on the induced
// subgraph. Nodes with fewer than two internal neighbors have no defined
// local coefficient; the mode decides how they enter the average.
double internal_transitivity(const Graph& g, std::span<const NodeId> community,
                             TransitivityMode mode = TransitivityMode::kZeroForLowDegree);

// 2 * internal_edges / (size - 1). Between 2 (tree) and size (clique) for
// connected communities. Size must be at least 2.
double scaled_density(NodeId size, std::int64_t internal_edges);

struct AverageDistance {
  double value = 0.0;      // mean over connected pairs; NaN when no pair is connected
  bool disconnected = false;  // true when some pair inside the community is unreachable
};

AverageDistance average_distance(const Graph& g, std::span<const NodeId> community);

// max internal degree / (size - 1). Size must be at least 2; a community
// with no internal edges scores 0.
double hub_dominance(const Graph& g, std::span<const NodeId> community);

struct CommunityProfile {
  int community = 0;
  NodeId size = 0;
  std::int64_t internal_edges = 0;
  double scaled_density = 0.0;
  double transitivity = 0.0;
  double average_distance = 0.0;
  bool distance_disconnected = false;
  double hub_dominance = 0.0;
};

// Per-community topology. Singleton communities keep their size and zero
// internal edges but get NaN for every ratio measure.
std::vector<CommunityProfile> profile_communities(const Graph& g, const Partition& p);

struct BinnedSeries {
  std::vector<double> bin_low;   // inclusive lower edge
  std::vector<double> bin_high;  // exclusive upper edge
  std::vector<double> mean;      // NaN for empty bins
  std::vector<int> count;        // communities contributing to the bin
};

// Groups profiles into logarithmic size bins (bins_per_decade splits each
// factor of ten) and averages `selector` within each bin. Singletons and
// NaN selector values are skipped.
BinnedSeries bin_by_size(const std::vector<CommunityProfile>& profiles,
                         const std::function<double(const CommunityProfile&)>& selector,
                         int bins_per_decade = 5);

struct Histogram {
  std::vector<double> edges;  // bin i covers [edges[i], edges[i+1])
  std::vector<int> counts;
};

// Fixed-width histogram over [0, 1]; values equal to 1 land in the last bin.
Histogram histogram_unit_interval(const std::vector<double>& values, int bins);

}  // namespace combench
