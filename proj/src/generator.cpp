#include "combench/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace combench {

namespace {

// --- continuous power law, floored to integers ---
//
// Degrees and community sizes follow a power-law tail. Drawing a continuous
// value with density proportional to x^-exponent on [low, high) and taking
// the floor gives an integer law whose mean can be dialed in exactly by
// moving the real-valued lower bound.

double power_law_quantile(double u, double exponent, double low, double high) {
  const double p = 1.0 - exponent;
  const double a = std::pow(low, p);
  const double b = std::pow(high, p);
  return std::pow(a + u * (b - a), 1.0 / p);
}

// E[floor(X)] when X has density ~ x^-exponent on [low, max_value + 1).
double expected_floor(double low, double exponent, int max_value) {
  const double p = 1.0 - exponent;
  const double total = std::pow(max_value + 1.0, p) - std::pow(low, p);
  double mean = 0.0;
  for (int k = static_cast<int>(low); k <= max_value; ++k) {
    const double lo = std::max<double>(k, low);
    const double mass = (std::pow(k + 1.0, p) - std::pow(lo, p)) / total;
    mean += k * mass;
  }
  return mean;
}

int floor_draw(Rng& rng, double exponent, double low, int max_value) {
  const double x = power_law_quantile(rng.next_double(), exponent, low, max_value + 1.0);
  return std::clamp(static_cast<int>(x), static_cast<int>(low), max_value);
}

std::uint64_t edge_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// --- feasibility of hosting every internal-degree target ---
//
// A node with target t needs a community of at least t + 1 members, and every
// community slot must be filled. Both hold for some assignment exactly when,
// for every community size tau, the total capacity of communities no larger
// than tau does not exceed the number of nodes with target below tau.

bool hall_feasible(std::vector<int> sizes, std::vector<int> targets) {
  std::sort(sizes.begin(), sizes.end());
  std::sort(targets.begin(), targets.end());
  std::int64_t capacity = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    capacity += sizes[i];
    if (i + 1 < sizes.size() && sizes[i + 1] == sizes[i]) continue;
    const auto eligible =
        std::upper_bound(targets.begin(), targets.end(), sizes[i] - 1) - targets.begin();
    if (capacity > eligible) return false;
  }
  return true;
}

// Shifts capacity from the smallest community to the largest (folding the
// smallest away once it reaches the floor) until the instance is feasible.
void force_feasible(std::vector<int>& sizes, const std::vector<int>& targets, int min_size) {
  for (int guard = 0; guard < 200000; ++guard) {
    if (hall_feasible(sizes, targets)) return;
    if (sizes.size() < 2) break;
    std::size_t imin = 0;
    std::size_t imax = 0;
    for (std::size_t i = 1; i < sizes.size(); ++i) {
      if (sizes[i] < sizes[imin]) imin = i;
      if (sizes[i] >= sizes[imax]) imax = i;
    }
    if (imin == imax) break;
    if (sizes[imin] > min_size) {
      --sizes[imin];
      ++sizes[imax];
    } else {
      sizes[imax] += sizes[imin];
      sizes.erase(sizes.begin() + static_cast<std::ptrdiff_t>(imin));
    }
  }
  if (!hall_feasible(sizes, targets)) {
    throw GenerationError("community sizes cannot host the internal-degree targets");
  }
}

// --- rewiring support ---

// Nodes whose internal degree is off-target, indexed both globally and per
// community, with O(1) insert/erase/sample.
class MemberBuckets {
 public:
  MemberBuckets(int node_count, int community_count)
      : flat_pos_(node_count, -1), comm_pos_(node_count, -1), by_comm_(community_count) {}

  bool contains(NodeId v) const { return flat_pos_[v] >= 0; }
  bool empty() const { return flat_.empty(); }
  std::size_t size() const { return flat_.size(); }

  void insert(NodeId v, int c) {
    flat_pos_[v] = static_cast<int>(flat_.size());
    flat_.push_back(v);
    comm_pos_[v] = static_cast<int>(by_comm_[c].size());
    by_comm_[c].push_back(v);
  }

  void erase(NodeId v, int c) {
    {
      const int pos = flat_pos_[v];
      flat_[pos] = flat_.back();
      flat_pos_[flat_[pos]] = pos;
      flat_.pop_back();
      flat_pos_[v] = -1;
    }
    {
      auto& members = by_comm_[c];
      const int pos = comm_pos_[v];
      members[pos] = members.back();
      comm_pos_[members[pos]] = pos;
      members.pop_back();
      comm_pos_[v] = -1;
    }
  }

  NodeId random_any(Rng& rng) const { return flat_[rng.below(flat_.size())]; }
  const std::vector<NodeId>& in_community(int c) const { return by_comm_[c]; }
  int position_in_community(NodeId v) const { return comm_pos_[v]; }

 private:
  std::vector<NodeId> flat_;
  std::vector<int> flat_pos_;
  std::vector<int> comm_pos_;
  std::vector<std::vector<NodeId>> by_comm_;
};

// Degree-preserving double-edge swaps that drive every node's internal degree
// toward its target. Moves are proposed from the nodes that are still off
// target; a proposal is applied when it strictly reduces the total deviation
// (with occasional sideways moves to escape parity-locked plateaus).
class Rewirer {
 public:
  Rewirer(std::vector<Edge> edges, std::vector<int> comm, std::vector<int> targets)
      : edges_(std::move(edges)),
        comm_(std::move(comm)),
        targets_(std::move(targets)),
        n_(static_cast<int>(comm_.size())),
        community_count_(n_ == 0 ? 0 : *std::max_element(comm_.begin(), comm_.end()) + 1),
        adj_(n_),
        k_int_(n_, 0),
        deficient_(n_, community_count_),
        surplus_(n_, community_count_),
        members_(community_count_) {
    for (NodeId v = 0; v < n_; ++v) members_[comm_[v]].push_back(v);
    epos_.reserve(edges_.size() * 2);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto [a, b] = edges_[i];
      adj_[a].insert(b);
      adj_[b].insert(a);
      epos_[edge_key(a, b)] = i;
      if (comm_[a] == comm_[b]) {
        ++k_int_[a];
        ++k_int_[b];
      }
    }
    for (NodeId v = 0; v < n_; ++v) {
      deviation_ += std::abs(k_int_[v] - targets_[v]);
      update_bucket(v);
    }
  }

  void run(Rng& rng, std::int64_t max_attempts, std::int64_t stall_window) {
    constexpr std::int64_t kPlateauAfter = 1000;
    std::int64_t stall = 0;
    while (deviation_ > 0 && attempted_ < max_attempts && stall < stall_window) {
      ++attempted_;
      ++stall;
      // rotate through the targeted moves, falling back when a side of the
      // imbalance is empty (e.g. fully-internal targets never produce surplus)
      const bool have_deficient = !deficient_.empty();
      const bool have_surplus = !surplus_.empty();
      const bool plateau_ok = stall > kPlateauAfter;
      int outcome = 0;
      switch (attempted_ % 5) {
        case 0:
          outcome = have_deficient ? try_internal_pair(rng) : try_generic(rng, false);
          break;
        case 1:
          outcome = have_surplus ? try_external_pair(rng) : try_internal_pair(rng);
          break;
        case 2:
          outcome = (have_deficient && have_surplus) ? try_adopt(rng)
                                                     : try_generic(rng, plateau_ok);
          break;
        case 3:
          outcome = have_deficient ? try_migrate(rng, plateau_ok) : try_generic(rng, plateau_ok);
          break;
        default:
          outcome = try_generic(rng, plateau_ok);
          break;
      }
      if (outcome != 0) ++accepted_;
      if (outcome == 2) stall = 0;  // only strict improvements reset the clock
    }
  }

  std::int64_t deviation() const { return deviation_; }
  std::int64_t attempted() const { return attempted_; }
  std::int64_t accepted() const { return accepted_; }
  std::vector<Edge> take_edges() { return std::move(edges_); }

 private:
  bool has_edge(NodeId a, NodeId b) const { return epos_.count(edge_key(a, b)) != 0; }

  void bump_internal(NodeId v, int delta) {
    deviation_ -= std::abs(k_int_[v] - targets_[v]);
    k_int_[v] += delta;
    deviation_ += std::abs(k_int_[v] - targets_[v]);
    update_bucket(v);
  }

  void update_bucket(NodeId v) {
    const int c = comm_[v];
    const int dev = k_int_[v] - targets_[v];
    if (deficient_.contains(v) && dev >= 0) deficient_.erase(v, c);
    if (surplus_.contains(v) && dev <= 0) surplus_.erase(v, c);
    if (dev < 0 && !deficient_.contains(v)) deficient_.insert(v, c);
    if (dev > 0 && !surplus_.contains(v)) surplus_.insert(v, c);
  }

  void remove_edge(NodeId a, NodeId b) {
    const auto it = epos_.find(edge_key(a, b));
    const std::size_t idx = it->second;
    epos_.erase(it);
    const std::size_t last = edges_.size() - 1;
    if (idx != last) {
      edges_[idx] = edges_[last];
      epos_[edge_key(edges_[idx].first, edges_[idx].second)] = idx;
    }
    edges_.pop_back();
    adj_[a].erase(b);
    adj_[b].erase(a);
    if (comm_[a] == comm_[b]) {
      bump_internal(a, -1);
      bump_internal(b, -1);
    }
  }

  void add_edge(NodeId a, NodeId b) {
    epos_[edge_key(a, b)] = edges_.size();
    edges_.emplace_back(std::min(a, b), std::max(a, b));
    adj_[a].insert(b);
    adj_[b].insert(a);
    if (comm_[a] == comm_[b]) {
      bump_internal(a, +1);
      bump_internal(b, +1);
    }
  }

  // Change in total deviation if r1, r2 were replaced by a1, a2.
  std::int64_t swap_gain(Edge r1, Edge r2, Edge a1, Edge a2) const {
    std::array<std::pair<NodeId, int>, 8> touch{};
    int used = 0;
    const auto note = [&](NodeId v, int d) {
      for (int i = 0; i < used; ++i) {
        if (touch[i].first == v) {
          touch[i].second += d;
          return;
        }
      }
      touch[used++] = {v, d};
    };
    const auto on_edge = [&](Edge e, int d) {
      if (comm_[e.first] == comm_[e.second]) {
        note(e.first, d);
        note(e.second, d);
      }
    };
    on_edge(r1, -1);
    on_edge(r2, -1);
    on_edge(a1, +1);
    on_edge(a2, +1);
    std::int64_t delta = 0;
    for (int i = 0; i < used; ++i) {
      const auto [v, d] = touch[i];
      delta += std::abs(k_int_[v] + d - targets_[v]) - std::abs(k_int_[v] - targets_[v]);
    }
    return delta;
  }

  void apply(Edge r1, Edge r2, Edge a1, Edge a2) {
    remove_edge(r1.first, r1.second);
    remove_edge(r2.first, r2.second);
    add_edge(a1.first, a1.second);
    add_edge(a2.first, a2.second);
  }

  // Neighbors of v inside (or outside) its own community, sorted so the
  // random pick does not depend on hash-set iteration order.
  const std::vector<NodeId>& side_neighbors(NodeId v, bool internal) {
    scratch_.clear();
    const int c = comm_[v];
    for (const NodeId u : adj_[v]) {
      if ((comm_[u] == c) == internal) scratch_.push_back(u);
    }
    std::sort(scratch_.begin(), scratch_.end());
    return scratch_;
  }

  // Two deficient nodes of one community trade external edges for a shared
  // internal one.
  int try_internal_pair(Rng& rng) {
    if (deficient_.empty()) return 0;
    const NodeId u = deficient_.random_any(rng);
    const int c = comm_[u];
    const auto& peers = deficient_.in_community(c);
    if (peers.size() < 2) return 0;
    std::size_t idx = rng.below(peers.size() - 1);
    if (static_cast<int>(idx) >= deficient_.position_in_community(u)) ++idx;
    const NodeId v = peers[idx];
    if (has_edge(u, v)) return 0;
    const auto& from_u = side_neighbors(u, false);
    if (from_u.empty()) return 0;
    const NodeId x = from_u[rng.below(from_u.size())];
    const auto& from_v = side_neighbors(v, false);
    if (from_v.empty()) return 0;
    const NodeId y = from_v[rng.below(from_v.size())];
    if (y == x || has_edge(x, y)) return 0;
    if (swap_gain({u, x}, {v, y}, {u, v}, {x, y}) >= 0) return 0;
    apply({u, x}, {v, y}, {u, v}, {x, y});
    return 2;
  }

  // Surplus nodes of two different communities trade internal edges for a
  // cross pair.
  int try_external_pair(Rng& rng) {
    if (surplus_.size() < 2) return 0;
    const NodeId u = surplus_.random_any(rng);
    NodeId w = u;
    for (int t = 0; t < 4 && (w == u || comm_[w] == comm_[u]); ++t) w = surplus_.random_any(rng);
    if (w == u || comm_[w] == comm_[u] || has_edge(u, w)) return 0;
    const auto& from_u = side_neighbors(u, true);
    if (from_u.empty()) return 0;
    const NodeId v = from_u[rng.below(from_u.size())];
    const auto& from_w = side_neighbors(w, true);
    if (from_w.empty()) return 0;
    const NodeId z = from_w[rng.below(from_w.size())];
    if (has_edge(v, z)) return 0;
    if (swap_gain({u, v}, {w, z}, {u, w}, {v, z}) >= 0) return 0;
    apply({u, v}, {w, z}, {u, w}, {v, z});
    return 2;
  }

  // A deficient node takes over one endpoint of an internal edge held by a
  // surplus node of its community.
  int try_adopt(Rng& rng) {
    if (deficient_.empty()) return 0;
    const NodeId u = deficient_.random_any(rng);
    const int c = comm_[u];
    const auto& donors = surplus_.in_community(c);
    if (donors.empty()) return 0;
    const NodeId w = donors[rng.below(donors.size())];
    const auto& from_w = side_neighbors(w, true);
    if (from_w.empty()) return 0;
    const NodeId v = from_w[rng.below(from_w.size())];
    if (v == u || has_edge(u, v)) return 0;
    const auto& from_u = side_neighbors(u, false);
    if (from_u.empty()) return 0;
    const NodeId x = from_u[rng.below(from_u.size())];
    if (has_edge(x, w)) return 0;
    if (swap_gain({u, x}, {w, v}, {u, v}, {x, w}) >= 0) return 0;
    apply({u, x}, {w, v}, {u, v}, {x, w});
    return 2;
  }

  // A deficient node claims an internal edge endpoint from a community
  // member it is not yet adjacent to. The member stays on target; the edge's
  // other endpoint inherits the deficit unless it had surplus to shed. In
  // tightly-knit communities the remaining deficient nodes are usually
  // already adjacent to each other, so walking a deficit across the
  // community like this is what makes the endgame reachable at all.
  int try_migrate(Rng& rng, bool plateau_ok) {
    if (deficient_.empty()) return 0;
    const NodeId u = deficient_.random_any(rng);
    const int c = comm_[u];
    const auto& peers = members_[c];
    if (peers.size() < 2) return 0;
    NodeId w = u;
    for (int t = 0; t < 4 && (w == u || has_edge(u, w)); ++t) {
      w = peers[rng.below(peers.size())];
    }
    if (w == u || has_edge(u, w)) return 0;
    const auto& from_w = side_neighbors(w, true);
    if (from_w.empty()) return 0;
    const NodeId z = from_w[rng.below(from_w.size())];
    const auto& from_u = side_neighbors(u, false);
    if (from_u.empty()) return 0;
    const NodeId x = from_u[rng.below(from_u.size())];
    if (has_edge(x, z)) return 0;
    const std::int64_t gain = swap_gain({u, x}, {w, z}, {u, w}, {x, z});
    if (gain < 0 || (plateau_ok && gain == 0 && rng.below(2) == 0)) {
      apply({u, x}, {w, z}, {u, w}, {x, z});
      return gain < 0 ? 2 : 1;
    }
    return 0;
  }

  // Uniform double-edge swap. On long plateaus, deviation-neutral swaps are
  // occasionally accepted: a node that is short by two cannot be fixed by any
  // single swap, so its deficit must first migrate to another node.
  int try_generic(Rng& rng, bool plateau_ok) {
    if (edges_.size() < 2) return 0;
    const std::size_t i = rng.below(edges_.size());
    std::size_t j = rng.below(edges_.size() - 1);
    if (j >= i) ++j;
    const auto [a, b] = edges_[i];
    auto [x, y] = edges_[j];
    if (rng.below(2) == 1) std::swap(x, y);
    if (a == x || a == y || b == x || b == y) return 0;
    if (has_edge(a, x) || has_edge(b, y)) return 0;
    const std::int64_t gain = swap_gain({a, b}, {x, y}, {a, x}, {b, y});
    if (gain < 0 || (plateau_ok && gain == 0 && rng.below(4) == 0)) {
      apply({a, b}, {x, y}, {a, x}, {b, y});
      return gain < 0 ? 2 : 1;
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<int> comm_;
  std::vector<int> targets_;
  int n_ = 0;
  int community_count_ = 0;
  std::vector<std::unordered_set<NodeId>> adj_;
  std::vector<int> k_int_;
  MemberBuckets deficient_;
  MemberBuckets surplus_;
  std::vector<std::vector<NodeId>> members_;
  std::unordered_map<std::uint64_t, std::size_t> epos_;
  std::vector<NodeId> scratch_;
  std::int64_t deviation_ = 0;
  std::int64_t attempted_ = 0;
  std::int64_t accepted_ = 0;
};

LfrResult generate_once(const LfrParams& params, Rng& rng) {
  const int n = params.node_count;
  const int max_community = std::min(params.resolved_max_community(), n);

  std::vector<int> degrees = sample_powerlaw_degrees(
      n, params.degree_exponent, params.average_degree, params.max_degree, rng);
  std::vector<double> mixing = sample_mixing(params, rng);

  std::vector<int> targets(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const int cap = std::min(degrees[v], max_community - 1);
    const int want = static_cast<int>(std::llround((1.0 - mixing[v]) * degrees[v]));
    targets[v] = std::clamp(want, 0, cap);
  }

  std::vector<int> sizes;
  for (int retry = 0;; ++retry) {
    sizes = sample_community_sizes(n, params.community_exponent, params.min_community,
                                   max_community, rng);
    if (hall_feasible(sizes, targets)) break;
    if (retry >= 20) {
      force_feasible(sizes, targets, params.min_community);
      break;
    }
  }

  std::vector<int> membership = assign_communities(targets, sizes, rng);
  const int community_count = static_cast<int>(sizes.size());

  // Internal stubs must pair up inside each community, so each community's
  // target sum is made even by nudging its best-connected member.
  std::vector<std::int64_t> target_sum(static_cast<std::size_t>(community_count), 0);
  std::vector<NodeId> adjust_node(static_cast<std::size_t>(community_count), -1);
  for (NodeId v = 0; v < n; ++v) {
    const int c = membership[v];
    target_sum[c] += targets[v];
    if (adjust_node[c] == -1 || degrees[v] > degrees[adjust_node[c]]) adjust_node[c] = v;
  }
  for (int c = 0; c < community_count; ++c) {
    if (target_sum[c] % 2 == 0) continue;
    const NodeId v = adjust_node[c];
    const int cap = std::min(degrees[v], sizes[c] - 1);
    targets[v] += targets[v] < cap ? 1 : -1;
  }

  const Graph backbone = configuration_model(degrees, rng);

  Rewirer rewirer(backbone.edges(), membership, targets);
  GeneratorStats stats;
  stats.initial_deviation = rewirer.deviation();
  const std::int64_t m = backbone.edge_count();
  rewirer.run(rng, 200 * m, std::max<std::int64_t>(50000, 4 * m));
  stats.final_deviation = rewirer.deviation();
  stats.rewire_attempted = rewirer.attempted();
  stats.rewire_accepted = rewirer.accepted();

  LfrResult result{build_graph(rewirer.take_edges(), n),
                   Partition::from_dense(std::move(membership), community_count),
                   std::move(mixing), std::move(targets), stats};
  return result;
}

}  // namespace

void LfrParams::validate() const {
  if (node_count < 4) throw std::invalid_argument("node_count must be at least 4");
  if (max_degree < 2 || max_degree >= node_count) {
    throw std::invalid_argument("max_degree must lie in [2, node_count)");
  }
  if (!(average_degree >= 2.0) || average_degree >= max_degree) {
    throw std::invalid_argument("average_degree must lie in [2, max_degree)");
  }
  if (!(degree_exponent > 1.0)) throw std::invalid_argument("degree_exponent must exceed 1");
  if (!(community_exponent > 1.0)) {
    throw std::invalid_argument("community_exponent must exceed 1");
  }
  if (min_community < 2 || min_community > node_count) {
    throw std::invalid_argument("min_community must lie in [2, node_count]");
  }
  if (max_community != 0 && (max_community < min_community || max_community > node_count)) {
    throw std::invalid_argument("max_community must lie in [min_community, node_count]");
  }
  if (min_community > std::min(resolved_max_community(), node_count)) {
    throw std::invalid_argument("min_community exceeds the largest allowed community");
  }
  if (!(mixing >= 0.0 && mixing <= 1.0)) {
    throw std::invalid_argument("mixing must lie in [0, 1]");
  }
  if (mixing_mode == MixingMode::kBimodal) {
    if (!(bimodal_high_sd > 0.0)) throw std::invalid_argument("bimodal_high_sd must be positive");
    if (!(bimodal_high_mean >= 0.0 && bimodal_high_mean <= 1.0)) {
      throw std::invalid_argument("bimodal_high_mean must lie in [0, 1]");
    }
  }
}

std::vector<int> sample_powerlaw_degrees(int count, double exponent, double average,
                                         int max_value, Rng& rng) {
  if (count <= 0) throw std::invalid_argument("sample count must be positive");
  if (!(exponent > 1.0)) throw std::invalid_argument("exponent must exceed 1");
  if (max_value < 2) throw std::invalid_argument("max_value must be at least 2");
  if (!(average > expected_floor(1.0, exponent, max_value)) || average >= max_value) {
    throw std::invalid_argument("average is not reachable for this exponent and maximum");
  }

  // The mean of the floored law grows monotonically with the lower bound.
  double lo = 1.0;
  double hi = max_value;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (expected_floor(mid, exponent, max_value) < average ? lo : hi) = mid;
  }
  const double low = 0.5 * (lo + hi);

  std::vector<int> values(static_cast<std::size_t>(count));
  std::int64_t sum = 0;
  for (auto& value : values) {
    value = floor_draw(rng, exponent, low, max_value);
    sum += value;
  }
  if (sum % 2 != 0) {  // stubs must pair up
    bool bumped = false;
    for (auto& value : values) {
      if (value < max_value) {
        ++value;
        bumped = true;
        break;
      }
    }
    if (!bumped) --values.front();
  }
  return values;
}

std::vector<int> sample_community_sizes(int total, double exponent, int min_size, int max_size,
                                        Rng& rng) {
  if (min_size < 2) throw std::invalid_argument("min_size must be at least 2");
  if (max_size < min_size) throw std::invalid_argument("max_size must be at least min_size");
  if (max_size > total) throw std::invalid_argument("max_size cannot exceed the node count");
  if (!(exponent > 1.0)) throw std::invalid_argument("exponent must exceed 1");

  std::vector<int> sizes;
  int remaining = total;
  for (int guard = 0; remaining > 0; ++guard) {
    if (guard > 100000) throw GenerationError("community sizes failed to tile the node count");
    const int s = floor_draw(rng, exponent, min_size, max_size);
    if (s <= remaining) {
      sizes.push_back(s);
      remaining -= s;
    } else if (remaining >= min_size) {
      sizes.push_back(remaining);
      remaining = 0;
    } else if (!sizes.empty()) {
      // the leftover is too small for a community: give a random drawn size
      // back and try to tile the gap differently
      const std::size_t idx = rng.below(sizes.size());
      remaining += sizes[idx];
      sizes[idx] = sizes.back();
      sizes.pop_back();
    } else {
      throw GenerationError("node count is below the smallest community size");
    }
  }
  return sizes;
}

std::vector<double> sample_mixing(const LfrParams& params, Rng& rng) {
  params.validate();
  const int n = params.node_count;
  std::vector<double> mixing(static_cast<std::size_t>(n), params.mixing);
  if (params.mixing_mode == MixingMode::kBimodal) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    const int zero_count = n / 2;
    for (int i = 0; i < n; ++i) {
      if (i < zero_count) {
        mixing[order[i]] = 0.0;
      } else {
        double value = rng.normal(params.bimodal_high_mean, params.bimodal_high_sd);
        while (value < 0.0 || value > 1.0) {
          value = rng.normal(params.bimodal_high_mean, params.bimodal_high_sd);
        }
        mixing[order[i]] = value;
      }
    }
  }
  return mixing;
}

std::vector<int> assign_communities(const std::vector<int>& internal_targets,
                                    const std::vector<int>& community_sizes, Rng& rng) {
  const int n = static_cast<int>(internal_targets.size());
  const int community_count = static_cast<int>(community_sizes.size());
  std::int64_t capacity = 0;
  for (const int s : community_sizes) {
    if (s < 1) throw std::invalid_argument("community sizes must be positive");
    capacity += s;
  }
  if (capacity != n) throw std::invalid_argument("community sizes must sum to the node count");
  for (const int t : internal_targets) {
    if (t < 0) throw std::invalid_argument("internal targets must be non-negative");
  }

  // Communities in descending size order; nodes in descending target order
  // (ties shuffled). Placing the most constrained nodes first means a node
  // can go to any community that still has room, because later nodes are
  // eligible everywhere the current one is.
  std::vector<int> comm_order(static_cast<std::size_t>(community_count));
  std::iota(comm_order.begin(), comm_order.end(), 0);
  std::sort(comm_order.begin(), comm_order.end(), [&](int a, int b) {
    if (community_sizes[a] != community_sizes[b]) return community_sizes[a] > community_sizes[b];
    return a < b;
  });
  std::vector<int> node_order(static_cast<std::size_t>(n));
  std::iota(node_order.begin(), node_order.end(), 0);
  rng.shuffle(node_order);
  std::stable_sort(node_order.begin(), node_order.end(), [&](int a, int b) {
    return internal_targets[a] > internal_targets[b];
  });

  std::vector<int> remaining(static_cast<std::size_t>(community_count));
  for (int j = 0; j < community_count; ++j) remaining[j] = community_sizes[comm_order[j]];

  std::vector<int> membership(static_cast<std::size_t>(n), -1);
  int eligible = 0;
  std::int64_t free_slots = 0;
  for (const int v : node_order) {
    while (eligible < community_count &&
           community_sizes[comm_order[eligible]] >= internal_targets[v] + 1) {
      free_slots += remaining[eligible];
      ++eligible;
    }
    if (free_slots <= 0) {
      throw GenerationError("no community large enough for a node's internal target");
    }
    std::int64_t pick = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(free_slots)));
    int chosen = 0;
    while (pick >= remaining[chosen]) pick -= remaining[chosen++];
    membership[v] = comm_order[chosen];
    --remaining[chosen];
    --free_slots;
  }
  return membership;
}

Graph configuration_model(const std::vector<int>& degrees, Rng& rng) {
  const int n = static_cast<int>(degrees.size());
  std::int64_t stub_count = 0;
  for (int v = 0; v < n; ++v) {
    if (degrees[v] < 0 || degrees[v] >= n) {
      throw std::invalid_argument("degrees must lie in [0, node_count)");
    }
    stub_count += degrees[v];
  }
  if (stub_count % 2 != 0) throw std::invalid_argument("degree sum must be even");

  std::vector<NodeId> stubs;
  stubs.reserve(static_cast<std::size_t>(stub_count));
  for (NodeId v = 0; v < n; ++v) stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[v]), v);

  // Pairwise trades cannot repair every pairing (two self-loops on a tiny
  // graph, say), so a stuck repair restarts from a fresh shuffle.
  for (int pairing = 0; pairing < 50; ++pairing) {
    rng.shuffle(stubs);

    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(stubs.size());
    std::vector<Edge> bad;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      const NodeId a = stubs[i];
      const NodeId b = stubs[i + 1];
      if (a == b || !seen.insert(edge_key(a, b)).second) {
        bad.emplace_back(a, b);
      } else {
        edges.emplace_back(std::min(a, b), std::max(a, b));
      }
    }

    // Trade each loop or duplicate against random placed edges until both
    // replacement edges are admissible; degrees are preserved throughout.
    for (int round = 0; !bad.empty() && round < 400; ++round) {
      std::vector<Edge> unresolved;
      for (const auto& [u, v] : bad) {
        bool fixed = false;
        for (int attempt = 0; attempt < 200 && !fixed && !edges.empty(); ++attempt) {
          const std::size_t idx = rng.below(edges.size());
          NodeId p = edges[idx].first;
          NodeId q = edges[idx].second;
          if (rng.below(2) == 1) std::swap(p, q);
          if (u == p || v == q) continue;
          const std::uint64_t key_up = edge_key(u, p);
          const std::uint64_t key_vq = edge_key(v, q);
          if (key_up == key_vq || seen.count(key_up) != 0 || seen.count(key_vq) != 0) continue;
          seen.erase(edge_key(p, q));
          edges[idx] = edges.back();
          edges.pop_back();
          seen.insert(key_up);
          seen.insert(key_vq);
          edges.emplace_back(std::min(u, p), std::max(u, p));
          edges.emplace_back(std::min(v, q), std::max(v, q));
          fixed = true;
        }
        if (!fixed) unresolved.emplace_back(u, v);
      }
      bad.swap(unresolved);
    }
    if (bad.empty()) return build_graph(edges, n);
  }
  throw GenerationError("stub pairing could not be made into a simple graph");
}

std::vector<double> node_mixing(const Graph& g, const Partition& p) {
  if (g.node_count() != p.node_count()) {
    throw std::invalid_argument("graph and partition sizes differ");
  }
  std::vector<double> mixing(static_cast<std::size_t>(g.node_count()), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto nbrs = g.neighbors(v);
    if (nbrs.empty()) continue;
    int external = 0;
    for (const NodeId u : nbrs) {
      if (p[u] != p[v]) ++external;
    }
    mixing[v] = static_cast<double>(external) / static_cast<double>(nbrs.size());
  }
  return mixing;
}

LfrResult generate_lfr(const LfrParams& params, std::uint64_t seed) {
  params.validate();
  constexpr int kMaxAttempts = 8;
  std::string last_error;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    Rng rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt - 1));
    try {
      LfrResult result = generate_once(params, rng);
      result.stats.attempts = attempt;
      return result;
    } catch (const GenerationError& error) {
      last_error = error.what();
    }
  }
  throw GenerationError("generation failed after retries: " + last_error);
}

}  // namespace combench
