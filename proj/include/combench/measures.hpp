#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "combench/partition.hpp"

namespace combench {

// Sparse co-membership counts between a reference and an estimated
// partition over the same node set. Rows index reference communities,
// columns estimated ones.
struct ContingencyTable {
  std::int64_t n = 0;
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::vector<std::tuple<int, int, std::int64_t>> cells;  // (row, col, count), sorted
};

ContingencyTable contingency(const Partition& reference, const Partition& estimated);

// Pair-counting agreement in [0, 1]. Needs at least two nodes.
double rand_index(const Partition& reference, const Partition& estimated);

// Chance-corrected Rand index in [-1, 1]; degenerate tables (both
// partitions all-singletons or both one block) score 1.
double adjusted_rand_index(const Partition& reference, const Partition& estimated);

// Normalized mutual information, 2I/(Hr + He), in [0, 1]. Both entropies
// zero means two identical single-community partitions, scored 1; if only
// one entropy is zero the score is 0.
double nmi(const Partition& reference, const Partition& estimated);

// Fraction of correctly classified nodes. Each reference community is
// matched to the estimated community holding the plurality of its nodes
// (ties toward the lower estimated id). An estimated community that is the
// plurality holder of several reference communities represents a merge, and
// all nodes in those reference communities count as misclassified.
double fcc(const Partition& reference, const Partition& estimated);

}  // namespace combench
