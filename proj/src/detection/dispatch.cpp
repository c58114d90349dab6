#include <stdexcept>

#include "combench/detection.hpp"
#include "combench/io.hpp"

namespace combench {

void DetectionConfig::validate() const {
  const bool known = algorithm == "fast_greedy" || algorithm == "louvain" ||
                     algorithm == "walktrap" || algorithm == "label_propagation" ||
                     algorithm == "markov_cluster";
  if (!known) throw std::invalid_argument("unknown algorithm: " + algorithm);
  if (walktrap_steps < 1) throw std::invalid_argument("walktrap_steps must be >= 1");
  if (lpa_max_sweeps < 1) throw std::invalid_argument("lpa_max_sweeps must be >= 1");
  if (mcl_expansion < 2) throw std::invalid_argument("mcl_expansion must be >= 2");
  if (mcl_inflation <= 1.0) throw std::invalid_argument("mcl_inflation must exceed 1");
  if (mcl_prune_threshold < 0.0 || mcl_prune_threshold > 0.01) {
    throw std::invalid_argument("mcl_prune_threshold must lie in [0, 0.01]");
  }
  if (mcl_max_iterations < 1) throw std::invalid_argument("mcl_max_iterations must be >= 1");
}

DetectionResult run_algorithm(const Graph& g, const DetectionConfig& config) {
  config.validate();
  if (config.algorithm == "fast_greedy") return fast_greedy(g);
  if (config.algorithm == "louvain") return louvain(g, config.seed);
  if (config.algorithm == "walktrap") return walktrap(g, config.walktrap_steps);
  if (config.algorithm == "label_propagation") {
    return label_propagation(g, config.seed, config.lpa_max_sweeps);
  }
  return markov_cluster(g, config);
}

Partition load_external_partition(const std::string& path, NodeId expected_n) {
  if (expected_n < 1) {
    throw std::invalid_argument("load_external_partition: expected node count must be >= 1");
  }
  return read_membership(path, expected_n);
}

}  // namespace combench
