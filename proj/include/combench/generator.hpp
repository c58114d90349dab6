#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "combench/graph.hpp"
#include "combench/partition.hpp"
#include "combench/rng.hpp"

namespace combench {

enum class MixingMode {
  kConstant,  // every node aims for the same mixing value
  kBimodal,   // half the nodes aim for zero, the rest draw from a truncated normal
};

struct LfrParams {
  int node_count = 0;
  double average_degree = 0.0;
  int max_degree = 0;
  double degree_exponent = 3.0;     // tail exponent of the degree distribution
  double community_exponent = 2.0;  // tail exponent of the community sizes
  int min_community = 0;
  // Largest allowed community; 0 means max_degree + 1 so that even the
  // best-connected node can keep all of its edges internal.
  int max_community = 0;
  double mixing = 0.0;  // target share of external edges per node (constant mode)
  MixingMode mixing_mode = MixingMode::kConstant;
  double bimodal_high_mean = 0.5;
  double bimodal_high_sd = 0.2;

  int resolved_max_community() const { return max_community > 0 ? max_community : max_degree + 1; }
  void validate() const;  // throws std::invalid_argument on bad settings
};

// Raised when a sampled configuration cannot be realised (the driver retries
// with fresh draws before letting this escape).
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeneratorStats {
  int attempts = 0;  // pipeline restarts consumed; 1 means the first try worked
  std::int64_t rewire_attempted = 0;
  std::int64_t rewire_accepted = 0;
  // Sum over nodes of |internal degree - internal target|, before and after
  // the rewiring phase.
  std::int64_t initial_deviation = 0;
  std::int64_t final_deviation = 0;
};

struct LfrResult {
  Graph graph;
  Partition partition;
  std::vector<double> target_mixing;  // the per-node mixing each node aimed for
  std::vector<int> internal_targets;  // per-node internal-degree target
  GeneratorStats stats;
};

// Benchmark generator: power-law degrees and community sizes, nodes assigned
// so every community can host its members' internal-degree targets, and a
// degree-preserving rewiring phase that pushes each node toward its own
// mixing target.
LfrResult generate_lfr(const LfrParams& params, std::uint64_t seed);

// --- pipeline stages, exposed for reuse and focused testing ---

// `count` integer degrees with a power-law tail: a continuous power law with
// the given exponent is sampled on [x0, max_value + 1) and floored, where x0
// is chosen so the expected value matches `average`. The sum is made even by
// bumping one node. Every value lies in [floor(x0), max_value].
std::vector<int> sample_powerlaw_degrees(int count, double exponent, double average,
                                         int max_value, Rng& rng);

// Community sizes in [min_size, max_size] with a power-law tail, summing to
// exactly `total`.
std::vector<int> sample_community_sizes(int total, double exponent, int min_size,
                                        int max_size, Rng& rng);

// Per-node mixing targets for the given mode. Bimodal mode gives exactly
// node_count / 2 nodes a target of zero and draws the rest from a normal
// truncated to [0, 1].
std::vector<double> sample_mixing(const LfrParams& params, Rng& rng);

// Assigns each node to a community such that its community is strictly larger
// than its internal-degree target. Sizes must sum to the number of targets and
// the instance must be feasible; the returned labels index `community_sizes`.
std::vector<int> assign_communities(const std::vector<int>& internal_targets,
                                    const std::vector<int>& community_sizes, Rng& rng);

// Simple graph with exactly the given degrees (configuration pairing with
// swap-based repair of loops and duplicates).
Graph configuration_model(const std::vector<int>& degrees, Rng& rng);

// Share of each node's edges that leave its community; isolated nodes get 0.
std::vector<double> node_mixing(const Graph& g, const Partition& p);

}  // namespace combench
