#include "combench/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace combench {

namespace {

[[noreturn]] void parse_error(const std::string& path, long line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

bool is_comment_or_blank(const std::string& line) {
  for (const char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return in;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

// Reads "int int" rows, reporting the line number of anything malformed.
std::vector<std::pair<long long, long long>> read_pairs(const std::string& path) {
  auto in = open_for_read(path);
  std::vector<std::pair<long long, long long>> rows;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    std::istringstream fields(line);
    long long a = 0;
    long long b = 0;
    if (!(fields >> a >> b)) parse_error(path, line_no, "expected two integers");
    std::string extra;
    if (fields >> extra) parse_error(path, line_no, "trailing tokens after pair");
    rows.emplace_back(a, b);
  }
  return rows;
}

}  // namespace

Graph read_edge_list(const std::string& path, NodeId n) {
  const auto rows = read_pairs(path);
  long long max_id = -1;
  for (const auto& [a, b] : rows) {
    if (a < 0 || b < 0) throw std::runtime_error(path + ": negative node id");
    max_id = std::max({max_id, a, b});
  }
  const NodeId count = n >= 0 ? n : static_cast<NodeId>(max_id + 1);
  std::vector<Edge> edges;
  edges.reserve(rows.size());
  for (const auto& [a, b] : rows) {
    edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
  }
  return build_graph(edges, count);
}

void write_edge_list(const Graph& g, const std::string& path) {
  auto out = open_for_write(path);
  out << "# nodes " << g.node_count() << "\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (const NodeId u : g.neighbors(v)) {
      if (u > v) out << v << ' ' << u << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

Partition read_membership(const std::string& path, NodeId expected_n) {
  const auto rows = read_pairs(path);
  long long max_id = -1;
  for (const auto& [node, _] : rows) {
    if (node < 0) throw std::runtime_error(path + ": negative node id");
    max_id = std::max(max_id, node);
  }
  const NodeId n = expected_n >= 0 ? expected_n : static_cast<NodeId>(max_id + 1);
  if (max_id >= n) {
    throw std::runtime_error(path + ": node id " + std::to_string(max_id) +
                             " outside [0, " + std::to_string(n) + ")");
  }
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& [node, label] : rows) {
    if (seen[node]) {
      throw std::runtime_error(path + ": node " + std::to_string(node) + " listed twice");
    }
    seen[node] = true;
    labels[node] = static_cast<int>(label);
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!seen[v]) {
      throw std::runtime_error(path + ": node " + std::to_string(v) + " has no community");
    }
  }
  // Labels that are already dense (0..k-1 with every id used) are kept
  // verbatim, so writing a partition and reading it back is the identity.
  // Anything else is relabeled by first appearance.
  int max_label = -1;
  bool dense = true;
  for (const int label : labels) {
    if (label < 0) {
      dense = false;
      break;
    }
    max_label = std::max(max_label, label);
  }
  if (dense && max_label >= 0) {
    std::vector<bool> used(static_cast<std::size_t>(max_label) + 1, false);
    for (const int label : labels) used[label] = true;
    for (const bool u : used) dense = dense && u;
  }
  if (dense && max_label >= 0) {
    return Partition::from_dense(std::move(labels), max_label + 1);
  }
  return Partition::from_labels(labels);
}

void write_membership(const Partition& p, const std::string& path) {
  auto out = open_for_write(path);
  for (NodeId v = 0; v < p.node_count(); ++v) {
    out << v << ' ' << p[v] << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace combench
