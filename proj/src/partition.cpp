#include "combench/partition.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>

namespace combench {

Partition Partition::from_labels(const std::vector<int>& labels) {
  Partition p;
  p.membership_.resize(labels.size());
  std::unordered_map<int, int> dense;
  dense.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto it = dense.try_emplace(labels[i], static_cast<int>(dense.size())).first;
    p.membership_[i] = it->second;
  }
  p.community_count_ = static_cast<int>(dense.size());
  return p;
}

Partition Partition::from_dense(std::vector<int> membership, int community_count) {
  std::vector<bool> seen(static_cast<std::size_t>(community_count), false);
  for (const int c : membership) {
    if (c < 0 || c >= community_count) {
      throw std::invalid_argument("Partition: community id " + std::to_string(c) +
                                  " outside [0, " + std::to_string(community_count) + ")");
    }
    seen[c] = true;
  }
  for (int c = 0; c < community_count; ++c) {
    if (!seen[c]) {
      throw std::invalid_argument("Partition: community " + std::to_string(c) + " is empty");
    }
  }
  Partition p;
  p.membership_ = std::move(membership);
  p.community_count_ = community_count;
  return p;
}

Partition Partition::singletons(NodeId n) {
  Partition p;
  p.membership_.resize(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) p.membership_[v] = v;
  p.community_count_ = n;
  return p;
}

Partition Partition::single_community(NodeId n) {
  if (n <= 0) throw std::invalid_argument("Partition: need at least one node");
  Partition p;
  p.membership_.assign(static_cast<std::size_t>(n), 0);
  p.community_count_ = 1;
  return p;
}

std::vector<NodeId> Partition::sizes() const {
  std::vector<NodeId> result(static_cast<std::size_t>(community_count_), 0);
  for (const int c : membership_) ++result[c];
  return result;
}

std::vector<std::vector<NodeId>> Partition::communities() const {
  std::vector<std::vector<NodeId>> result(static_cast<std::size_t>(community_count_));
  const auto counts = sizes();
  for (int c = 0; c < community_count_; ++c) {
    result[c].reserve(static_cast<std::size_t>(counts[c]));
  }
  for (NodeId v = 0; v < node_count(); ++v) {
    result[membership_[v]].push_back(v);
  }
  return result;
}

}  // namespace combench
