#include "combench/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace combench {

namespace {

void check_same_nodes(const Partition& reference, const Partition& estimated) {
  if (reference.node_count() != estimated.node_count()) {
    throw std::invalid_argument("partitions cover different node sets");
  }
  if (reference.node_count() == 0) {
    throw std::invalid_argument("partitions are empty");
  }
}

inline double choose2(double x) { return x * (x - 1.0) / 2.0; }

struct PairCounts {
  double same_same = 0.0;   // pairs together in both partitions
  double ref_pairs = 0.0;   // pairs together in the reference
  double est_pairs = 0.0;   // pairs together in the estimate
  double total_pairs = 0.0;
};

PairCounts pair_counts(const ContingencyTable& table) {
  PairCounts counts;
  for (const auto& cell : table.cells) {
    counts.same_same += choose2(static_cast<double>(std::get<2>(cell)));
  }
  for (const auto sum : table.row_sums) counts.ref_pairs += choose2(static_cast<double>(sum));
  for (const auto sum : table.col_sums) counts.est_pairs += choose2(static_cast<double>(sum));
  counts.total_pairs = choose2(static_cast<double>(table.n));
  return counts;
}

}  // namespace

ContingencyTable contingency(const Partition& reference, const Partition& estimated) {
  check_same_nodes(reference, estimated);
  ContingencyTable table;
  table.n = reference.node_count();
  table.row_sums.assign(static_cast<std::size_t>(reference.community_count()), 0);
  table.col_sums.assign(static_cast<std::size_t>(estimated.community_count()), 0);

  std::unordered_map<std::int64_t, std::int64_t> counts;
  counts.reserve(static_cast<std::size_t>(reference.community_count()) * 2);
  const std::int64_t cols = estimated.community_count();
  for (NodeId v = 0; v < reference.node_count(); ++v) {
    const int r = reference[v];
    const int e = estimated[v];
    ++table.row_sums[r];
    ++table.col_sums[e];
    ++counts[static_cast<std::int64_t>(r) * cols + e];
  }
  table.cells.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    table.cells.emplace_back(static_cast<int>(key / cols), static_cast<int>(key % cols), count);
  }
  std::sort(table.cells.begin(), table.cells.end());
  return table;
}

double rand_index(const Partition& reference, const Partition& estimated) {
  const auto table = contingency(reference, estimated);
  if (table.n < 2) {
    throw std::invalid_argument("rand_index: need at least two nodes");
  }
  const auto counts = pair_counts(table);
  // agreements = pairs together in both + pairs separated in both
  const double disagreements =
      (counts.ref_pairs - counts.same_same) + (counts.est_pairs - counts.same_same);
  return (counts.total_pairs - disagreements) / counts.total_pairs;
}

double adjusted_rand_index(const Partition& reference, const Partition& estimated) {
  const auto table = contingency(reference, estimated);
  if (table.n < 2) {
    throw std::invalid_argument("adjusted_rand_index: need at least two nodes");
  }
  const auto counts = pair_counts(table);
  const double expected = counts.ref_pairs * counts.est_pairs / counts.total_pairs;
  const double maximum = (counts.ref_pairs + counts.est_pairs) / 2.0;
  if (maximum == expected) {
    // Both partitions all singletons or both single blocks: identical by
    // construction, and the usual ratio degenerates to 0/0.
    return 1.0;
  }
  return (counts.same_same - expected) / (maximum - expected);
}

double nmi(const Partition& reference, const Partition& estimated) {
  const auto table = contingency(reference, estimated);
  const double n = static_cast<double>(table.n);

  double h_ref = 0.0;
  for (const auto sum : table.row_sums) {
    const double p = static_cast<double>(sum) / n;
    h_ref -= p * std::log(p);
  }
  double h_est = 0.0;
  for (const auto sum : table.col_sums) {
    const double p = static_cast<double>(sum) / n;
    h_est -= p * std::log(p);
  }
  if (h_ref + h_est == 0.0) return 1.0;  // two single-community partitions

  double information = 0.0;
  for (const auto& [r, e, count] : table.cells) {
    const double p_joint = static_cast<double>(count) / n;
    const double p_ref = static_cast<double>(table.row_sums[r]) / n;
    const double p_est = static_cast<double>(table.col_sums[e]) / n;
    information += p_joint * (std::log(p_joint) - std::log(p_ref) - std::log(p_est));
  }
  return 2.0 * information / (h_ref + h_est);
}

double fcc(const Partition& reference, const Partition& estimated) {
  const auto table = contingency(reference, estimated);

  // Plurality holder per reference community. Cells are sorted, so within a
  // row the first maximal count belongs to the lowest estimated id.
  std::vector<int> holder(table.row_sums.size(), -1);
  std::vector<std::int64_t> holder_count(table.row_sums.size(), 0);
  for (const auto& [r, e, count] : table.cells) {
    if (count > holder_count[r]) {
      holder_count[r] = count;
      holder[r] = e;
    }
  }

  // An estimated community claimed by two or more reference communities has
  // merged them; none of its matched nodes count as correct.
  std::vector<int> claims(table.col_sums.size(), 0);
  for (const int e : holder) ++claims[e];

  std::int64_t correct = 0;
  for (std::size_t r = 0; r < holder.size(); ++r) {
    if (claims[holder[r]] == 1) correct += holder_count[r];
  }
  return static_cast<double>(correct) / static_cast<double>(table.n);
}

}  // namespace combench
