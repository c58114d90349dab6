#pragma once

#include <vector>

#include "combench/graph.hpp"

namespace combench {

// Assignment of every node to exactly one community. Community ids are
// always dense: 0..community_count()-1, each id non-empty.
class Partition {
public:
  Partition() = default;

  // Accepts arbitrary integer labels and relabels them to dense ids in
  // order of first appearance.
  static Partition from_labels(const std::vector<int>& labels);

  // Adopts a membership vector that is already dense (checked).
  static Partition from_dense(std::vector<int> membership, int community_count);

  static Partition singletons(NodeId n);
  static Partition single_community(NodeId n);

  NodeId node_count() const { return static_cast<NodeId>(membership_.size()); }
  int community_count() const { return community_count_; }

  int operator[](NodeId v) const { return membership_[v]; }
  const std::vector<int>& membership() const { return membership_; }

  std::vector<NodeId> sizes() const;
  std::vector<std::vector<NodeId>> communities() const;

  bool operator==(const Partition&) const = default;

private:
  std::vector<int> membership_;
  int community_count_ = 0;
};

}  // namespace combench
