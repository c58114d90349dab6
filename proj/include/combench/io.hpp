#pragma once

#include <string>

#include "combench/graph.hpp"
#include "combench/partition.hpp"

namespace combench {

// Edge list format: one "u v" pair per line, whitespace separated. Blank
// lines and lines starting with '#' are ignored. When n < 0 the node count
// is inferred as max id + 1.
Graph read_edge_list(const std::string& path, NodeId n = -1);
void write_edge_list(const Graph& g, const std::string& path);

// Membership format: one "node community" pair per line, '#' comments
// allowed. Every node in [0, n) must appear exactly once. Labels that are
// already dense (0..k-1, all used) are kept as they are, so write followed
// by read is the identity; arbitrary labels are relabeled densely in order
// of first appearance. When expected_n < 0 the node count is inferred as
// max node id + 1.
Partition read_membership(const std::string& path, NodeId expected_n = -1);
void write_membership(const Partition& p, const std::string& path);

}  // namespace combench
