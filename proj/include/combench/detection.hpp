#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "combench/graph.hpp"
#include "combench/partition.hpp"

namespace combench {

// Newman modularity of a partition; requires at least one edge.
double modularity(const Graph& g, const Partition& p);

// Modularity of a membership over a community-level graph, used by the
// multilevel optimizer and exposed for testing.
double modularity(const WeightedAggregate& g, const std::vector<int>& membership);

struct MergeEvent {
  int a = 0;  // dendrogram ids: leaves are 0..n-1, the k-th merge creates n+k
  int b = 0;
  double modularity_after = 0.0;
};

struct Dendrogram {
  int leaf_count = 0;
  std::vector<MergeEvent> merges;
};

// Partition formed by replaying the first `prefix` merges over the leaves.
Partition partition_at_prefix(const Dendrogram& dendrogram, int prefix);

struct DetectionConfig {
  std::string algorithm;  // fast_greedy | louvain | walktrap | label_propagation | markov_cluster
  std::uint64_t seed = 1;
  int walktrap_steps = 4;
  int lpa_max_sweeps = 100;
  int mcl_expansion = 2;
  double mcl_inflation = 2.0;
  double mcl_prune_threshold = 1e-5;
  int mcl_max_iterations = 100;

  void validate() const;
};

struct DetectionResult {
  Partition partition;
  double modularity = 0.0;   // of the returned partition (0 on edgeless graphs)
  int iterations = 0;        // algorithm-specific: sweeps, levels, or matrix iterations
  bool converged = true;     // false when an iteration cap stopped the run
  Dendrogram dendrogram;     // filled by the hierarchical algorithms
};

// Greedy modularity agglomeration: repeatedly merges the connected pair of
// communities with the best modularity change and cuts the dendrogram at
// the modularity peak.
DetectionResult fast_greedy(const Graph& g);

// Multilevel local optimization with graph aggregation between levels.
DetectionResult louvain(const Graph& g, std::uint64_t seed = 1);

// Random-walk distances drive an agglomeration of adjacent communities;
// the merge sequence is cut at the modularity peak.
DetectionResult walktrap(const Graph& g, int steps = 4);

// Squared t-step walk distance between two single nodes, exposed so the
// distance definition itself is testable.
double walktrap_pair_distance(const Graph& g, int steps, NodeId a, NodeId b);

// Asynchronous label propagation with per-sweep random order and random
// tie breaking.
DetectionResult label_propagation(const Graph& g, std::uint64_t seed = 1, int max_sweeps = 100);

// Flow clustering by alternating expansion and inflation of the column
// stochastic transition matrix; communities are the connected components of
// the converged support.
DetectionResult markov_cluster(const Graph& g, const DetectionConfig& config);

DetectionResult run_algorithm(const Graph& g, const DetectionConfig& config);

// Reads a membership file produced by an external tool and validates it
// against the expected node count.
Partition load_external_partition(const std::string& path, NodeId expected_n);

}  // namespace combench
