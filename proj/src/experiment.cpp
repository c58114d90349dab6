#include "combench/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "combench/io.hpp"
#include "combench/measures.hpp"

namespace combench {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

constexpr const char* kMeasures[] = {"fcc", "ri", "ari", "nmi"};
constexpr const char* kProperties[] = {"size", "scaled_density", "transitivity",
                                       "average_distance", "hub_dominance"};
constexpr int kEmbeddednessBins = 20;
constexpr int kFitReplicates = 100;

// Regime indices are spaced a million samples apart so distinct regimes can
// never land on the same generation seed.
constexpr std::uint64_t kRegimeStride = 1000003;

std::string fmt(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

[[noreturn]] void fail_config(const std::string& message) {
  throw std::invalid_argument("experiment config: " + message);
}

// Source and regime names become path components and CSV cells, so they are
// kept to a conservative alphabet.
bool valid_name(const std::string& name) {
  if (name.empty() || name.size() > 64) return false;
  for (const char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Config JSON
// ---------------------------------------------------------------------------

void check_keys(const ordered_json& object, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : object.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail_config(where + ": unknown key \"" + item.key() + "\"");
  }
}

const ordered_json* find(const ordered_json& object, const char* key) {
  const auto it = object.find(key);
  return it == object.end() ? nullptr : &*it;
}

double number_field(const ordered_json& object, const std::string& where, const char* key,
                    double fallback, bool required = false) {
  const ordered_json* value = find(object, key);
  if (value == nullptr) {
    if (required) fail_config(where + ": missing required key \"" + key + "\"");
    return fallback;
  }
  if (!value->is_number()) fail_config(where + ": \"" + key + "\" must be a number");
  return value->get<double>();
}

std::int64_t integer_field(const ordered_json& object, const std::string& where, const char* key,
                           std::int64_t fallback, bool required = false) {
  const ordered_json* value = find(object, key);
  if (value == nullptr) {
    if (required) fail_config(where + ": missing required key \"" + key + "\"");
    return fallback;
  }
  if (!value->is_number_integer() && !value->is_number_unsigned()) {
    fail_config(where + ": \"" + key + "\" must be an integer");
  }
  return value->get<std::int64_t>();
}

std::uint64_t seed_field(const ordered_json& object, const std::string& where, const char* key,
                         std::uint64_t fallback) {
  const std::int64_t value =
      integer_field(object, where, key, static_cast<std::int64_t>(fallback));
  if (value < 0) fail_config(where + ": \"" + key + "\" must be non-negative");
  return static_cast<std::uint64_t>(value);
}

std::string string_field(const ordered_json& object, const std::string& where, const char* key,
                         const std::string& fallback, bool required = false) {
  const ordered_json* value = find(object, key);
  if (value == nullptr) {
    if (required) fail_config(where + ": missing required key \"" + key + "\"");
    return fallback;
  }
  if (!value->is_string()) fail_config(where + ": \"" + key + "\" must be a string");
  return value->get<std::string>();
}

RegimeConfig parse_regime(const ordered_json& object, int index) {
  const std::string where = "regimes[" + std::to_string(index) + "]";
  if (!object.is_object()) fail_config(where + ": must be an object");
  check_keys(object, where,
             {"name", "node_count", "average_degree", "max_degree", "degree_exponent",
              "community_exponent", "min_community", "max_community", "mixing", "mixing_mode",
              "bimodal_high_mean", "bimodal_high_sd"});
  RegimeConfig regime;
  regime.name = string_field(object, where, "name", "", true);
  LfrParams& p = regime.params;
  p.node_count = static_cast<int>(integer_field(object, where, "node_count", 0, true));
  p.average_degree = number_field(object, where, "average_degree", 0.0, true);
  p.max_degree = static_cast<int>(integer_field(object, where, "max_degree", 0, true));
  p.degree_exponent = number_field(object, where, "degree_exponent", p.degree_exponent);
  p.community_exponent = number_field(object, where, "community_exponent", p.community_exponent);
  p.min_community = static_cast<int>(integer_field(object, where, "min_community", 0, true));
  p.max_community = static_cast<int>(integer_field(object, where, "max_community", p.max_community));
  p.mixing = number_field(object, where, "mixing", p.mixing);
  const std::string mode = string_field(object, where, "mixing_mode", "constant");
  if (mode == "constant") {
    p.mixing_mode = MixingMode::kConstant;
  } else if (mode == "bimodal") {
    p.mixing_mode = MixingMode::kBimodal;
  } else {
    fail_config(where + ": mixing_mode must be \"constant\" or \"bimodal\"");
  }
  p.bimodal_high_mean = number_field(object, where, "bimodal_high_mean", p.bimodal_high_mean);
  p.bimodal_high_sd = number_field(object, where, "bimodal_high_sd", p.bimodal_high_sd);
  return regime;
}

AlgorithmEntry parse_algorithm(const ordered_json& object, int index) {
  const std::string where = "algorithms[" + std::to_string(index) + "]";
  if (!object.is_object()) fail_config(where + ": must be an object");
  check_keys(object, where,
             {"algorithm", "name", "seed", "walktrap_steps", "lpa_max_sweeps", "mcl_expansion",
              "mcl_inflation", "mcl_prune_threshold", "mcl_max_iterations"});
  AlgorithmEntry entry;
  DetectionConfig& c = entry.config;
  c.algorithm = string_field(object, where, "algorithm", "", true);
  entry.name = string_field(object, where, "name", c.algorithm);
  c.seed = seed_field(object, where, "seed", 1);
  c.walktrap_steps = static_cast<int>(integer_field(object, where, "walktrap_steps", c.walktrap_steps));
  c.lpa_max_sweeps = static_cast<int>(integer_field(object, where, "lpa_max_sweeps", c.lpa_max_sweeps));
  c.mcl_expansion = static_cast<int>(integer_field(object, where, "mcl_expansion", c.mcl_expansion));
  c.mcl_inflation = number_field(object, where, "mcl_inflation", c.mcl_inflation);
  c.mcl_prune_threshold =
      number_field(object, where, "mcl_prune_threshold", c.mcl_prune_threshold);
  c.mcl_max_iterations =
      static_cast<int>(integer_field(object, where, "mcl_max_iterations", c.mcl_max_iterations));
  return entry;
}

ExternalPartitionEntry parse_external(const ordered_json& object, int index) {
  const std::string where = "external_partitions[" + std::to_string(index) + "]";
  if (!object.is_object()) fail_config(where + ": must be an object");
  check_keys(object, where, {"name", "path"});
  ExternalPartitionEntry entry;
  entry.name = string_field(object, where, "name", "", true);
  entry.path_pattern = string_field(object, where, "path", "", true);
  return entry;
}

std::string mixing_mode_name(MixingMode mode) {
  return mode == MixingMode::kConstant ? "constant" : "bimodal";
}

// Canonical config echo used by the manifest. The output directory is left
// out on purpose: the persisted artifacts must not depend on where they were
// written, or same-seed reruns into different places would diverge.
ordered_json config_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["master_seed"] = cfg.master_seed;
  j["sample_count"] = cfg.sample_count;
  j["regimes"] = ordered_json::array();
  for (const RegimeConfig& regime : cfg.regimes) {
    const LfrParams& p = regime.params;
    ordered_json r;
    r["name"] = regime.name;
    r["node_count"] = p.node_count;
    r["average_degree"] = p.average_degree;
    r["max_degree"] = p.max_degree;
    r["degree_exponent"] = p.degree_exponent;
    r["community_exponent"] = p.community_exponent;
    r["min_community"] = p.min_community;
    r["max_community"] = p.max_community;
    r["mixing"] = p.mixing;
    r["mixing_mode"] = mixing_mode_name(p.mixing_mode);
    if (p.mixing_mode == MixingMode::kBimodal) {
      r["bimodal_high_mean"] = p.bimodal_high_mean;
      r["bimodal_high_sd"] = p.bimodal_high_sd;
    }
    j["regimes"].push_back(std::move(r));
  }
  j["algorithms"] = ordered_json::array();
  for (const AlgorithmEntry& entry : cfg.algorithms) {
    const DetectionConfig& c = entry.config;
    ordered_json a;
    a["name"] = entry.name;
    a["algorithm"] = c.algorithm;
    a["seed"] = c.seed;
    if (c.algorithm == "walktrap") a["walktrap_steps"] = c.walktrap_steps;
    if (c.algorithm == "label_propagation") a["lpa_max_sweeps"] = c.lpa_max_sweeps;
    if (c.algorithm == "markov_cluster") {
      a["mcl_expansion"] = c.mcl_expansion;
      a["mcl_inflation"] = c.mcl_inflation;
      a["mcl_prune_threshold"] = c.mcl_prune_threshold;
      a["mcl_max_iterations"] = c.mcl_max_iterations;
    }
    j["algorithms"].push_back(std::move(a));
  }
  j["external_partitions"] = ordered_json::array();
  for (const ExternalPartitionEntry& entry : cfg.external_partitions) {
    ordered_json e;
    e["name"] = entry.name;
    e["path"] = entry.path_pattern;
    j["external_partitions"].push_back(std::move(e));
  }
  return j;
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

double measure_value(const ScoreRow& row, const std::string& measure) {
  if (measure == "fcc") return row.fcc;
  if (measure == "ri") return row.ri;
  if (measure == "ari") return row.ari;
  return row.nmi;
}

double checked_score(double value, double low, double high, const char* what) {
  if (!std::isfinite(value) || value < low - 1e-9 || value > high + 1e-9) {
    throw std::logic_error(std::string(what) + " outside its documented range: " + fmt(value));
  }
  return std::clamp(value, low, high);
}

ScoreRow make_scores(const std::string& regime, int sample, const std::string& source,
                     const Partition& reference, const Partition& estimated) {
  ScoreRow row;
  row.regime = regime;
  row.sample = sample;
  row.source = source;
  row.fcc = checked_score(fcc(reference, estimated), 0.0, 1.0, "fcc");
  row.ri = checked_score(rand_index(reference, estimated), 0.0, 1.0, "rand index");
  row.ari = checked_score(adjusted_rand_index(reference, estimated), -1.0, 1.0, "adjusted rand index");
  row.nmi = checked_score(nmi(reference, estimated), 0.0, 1.0, "nmi");
  return row;
}

SampleProfile make_profile(const std::string& regime, int sample, const std::string& source,
                           const Graph& g, const Partition& p, std::uint64_t fit_seed) {
  SampleProfile out;
  out.regime = regime;
  out.sample = sample;
  out.source = source;
  out.community_count = p.community_count();

  const std::vector<CommunityProfile> profiles = profile_communities(g, p);
  out.size = bin_by_size(profiles, [](const CommunityProfile& c) {
    return static_cast<double>(c.size);
  });
  out.scaled_density = bin_by_size(profiles, [](const CommunityProfile& c) {
    return c.scaled_density;
  });
  out.transitivity = bin_by_size(profiles, [](const CommunityProfile& c) {
    return c.transitivity;
  });
  out.average_distance = bin_by_size(profiles, [](const CommunityProfile& c) {
    // A community split across components has no meaningful internal
    // distance; leave it out instead of averaging the reachable pairs.
    return c.distance_disconnected ? std::nan("") : c.average_distance;
  });
  out.hub_dominance = bin_by_size(profiles, [](const CommunityProfile& c) {
    return c.hub_dominance;
  });

  const std::vector<NodeEmbeddedness> nodes = embeddedness(g, p);
  std::vector<double> values;
  values.reserve(nodes.size());
  std::int64_t fully_internal = 0;
  for (const NodeEmbeddedness& node : nodes) {
    values.push_back(node.value);
    if (node.internal_degree == node.total_degree) ++fully_internal;
  }
  out.embeddedness = histogram_unit_interval(values, kEmbeddednessBins);
  out.embeddedness_one_fraction =
      values.empty() ? 0.0 : static_cast<double>(fully_internal) / static_cast<double>(values.size());

  const std::vector<NodeId> sizes = community_sizes(p);
  std::vector<std::int64_t> size_samples(sizes.begin(), sizes.end());
  out.size_fit = fit_power_law(size_samples, kFitReplicates, fit_seed);
  out.largest_community = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
  out.modularity = g.edge_count() > 0 ? modularity(g, p) : 0.0;
  return out;
}

std::string instantiate_pattern(std::string pattern, const std::string& regime, int sample) {
  const auto replace_all = [&pattern](const std::string& token, const std::string& with) {
    std::size_t at = 0;
    while ((at = pattern.find(token, at)) != std::string::npos) {
      pattern.replace(at, token.size(), with);
      at += with.size();
    }
  };
  replace_all("{regime}", regime);
  replace_all("{sample}", std::to_string(sample));
  return pattern;
}

void build_ranking(EvaluationReport& report, const std::vector<std::string>& regime_order) {
  for (const std::string& regime : regime_order) {
    for (const char* measure : kMeasures) {
      std::vector<std::string> order;
      std::vector<double> sums;
      std::vector<int> counts;
      for (const ScoreRow& row : report.scores) {
        if (row.regime != regime) continue;
        std::size_t at = 0;
        while (at < order.size() && order[at] != row.source) ++at;
        if (at == order.size()) {
          order.push_back(row.source);
          sums.push_back(0.0);
          counts.push_back(0);
        }
        sums[at] += measure_value(row, measure);
        counts[at] += 1;
      }
      if (order.empty()) continue;
      std::vector<std::pair<std::string, double>> means;
      for (std::size_t i = 0; i < order.size(); ++i) {
        means.emplace_back(order[i], sums[i] / counts[i]);
      }
      for (const RankedScore& ranked : rank_algorithms(std::move(means))) {
        RankEntry entry;
        entry.regime = regime;
        entry.measure = measure;
        entry.source = ranked.source;
        entry.mean_score = ranked.score;
        entry.rank = ranked.rank;
        entry.tied = ranked.tied;
        report.ranking.push_back(std::move(entry));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

// Non-empty bins only: empty bins carry a NaN mean, which JSON cannot hold.
ordered_json series_json(const BinnedSeries& series) {
  ordered_json bins = ordered_json::array();
  for (std::size_t i = 0; i < series.mean.size(); ++i) {
    if (series.count[i] == 0) continue;
    ordered_json bin;
    bin["low"] = series.bin_low[i];
    bin["high"] = series.bin_high[i];
    bin["mean"] = series.mean[i];
    bin["count"] = series.count[i];
    bins.push_back(std::move(bin));
  }
  return bins;
}

ordered_json fit_json(const PowerLawFit& fit) {
  ordered_json j;
  j["exponent"] = fit.exponent;
  j["xmin"] = fit.xmin;
  j["ks_distance"] = fit.ks_distance;
  j["p_value"] = fit.p_value;
  j["tail_count"] = fit.tail_count;
  j["sample_count"] = fit.sample_count;
  j["reliable"] = fit.reliable;
  j["degenerate"] = fit.degenerate;
  return j;
}

ordered_json failures_json(const EvaluationReport& report) {
  ordered_json array = ordered_json::array();
  for (const FailureRecord& failure : report.failures) {
    ordered_json f;
    f["regime"] = failure.regime;
    f["sample"] = failure.sample;
    f["source"] = failure.source;
    f["stage"] = failure.stage;
    f["message"] = failure.message;
    array.push_back(std::move(f));
  }
  return array;
}

ordered_json report_json(const EvaluationReport& report) {
  ordered_json j;
  j["samples"] = ordered_json::array();
  for (const SampleInfo& info : report.samples) {
    ordered_json s;
    s["regime"] = info.regime;
    s["sample"] = info.sample;
    s["seed"] = info.seed;
    s["generated"] = info.generated;
    s["node_count"] = info.node_count;
    s["edge_count"] = info.edge_count;
    s["mean_degree"] = info.mean_degree;
    s["target_mixing_mean"] = info.target_mixing_mean;
    s["achieved_mixing_mean"] = info.achieved_mixing_mean;
    s["reference_communities"] = info.reference_communities;
    j["samples"].push_back(std::move(s));
  }
  j["scores"] = ordered_json::array();
  for (const ScoreRow& row : report.scores) {
    ordered_json s;
    s["regime"] = row.regime;
    s["sample"] = row.sample;
    s["source"] = row.source;
    s["fcc"] = row.fcc;
    s["ri"] = row.ri;
    s["ari"] = row.ari;
    s["nmi"] = row.nmi;
    j["scores"].push_back(std::move(s));
  }
  j["ranking"] = ordered_json::array();
  for (const RankEntry& entry : report.ranking) {
    ordered_json r;
    r["regime"] = entry.regime;
    r["measure"] = entry.measure;
    r["source"] = entry.source;
    r["mean_score"] = entry.mean_score;
    r["rank"] = entry.rank;
    r["tied"] = entry.tied;
    j["ranking"].push_back(std::move(r));
  }
  j["profiles"] = ordered_json::array();
  for (const SampleProfile& profile : report.profiles) {
    ordered_json p;
    p["regime"] = profile.regime;
    p["sample"] = profile.sample;
    p["source"] = profile.source;
    p["community_count"] = profile.community_count;
    p["largest_community"] = profile.largest_community;
    p["modularity"] = profile.modularity;
    p["embeddedness_one_fraction"] = profile.embeddedness_one_fraction;
    ordered_json curves;
    curves["size"] = series_json(profile.size);
    curves["scaled_density"] = series_json(profile.scaled_density);
    curves["transitivity"] = series_json(profile.transitivity);
    curves["average_distance"] = series_json(profile.average_distance);
    curves["hub_dominance"] = series_json(profile.hub_dominance);
    p["curves"] = std::move(curves);
    ordered_json histogram;
    histogram["edges"] = profile.embeddedness.edges;
    histogram["counts"] = profile.embeddedness.counts;
    p["embeddedness"] = std::move(histogram);
    p["size_fit"] = fit_json(profile.size_fit);
    j["profiles"].push_back(std::move(p));
  }
  j["failures"] = failures_json(report);
  return j;
}

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

void close_checked(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out.good()) throw std::runtime_error("write failed: " + path.string());
}

void write_json_file(const ordered_json& j, const fs::path& path) {
  std::ofstream out = open_for_write(path);
  out << j.dump(2) << '\n';
  close_checked(out, path);
}

const BinnedSeries& property_series(const SampleProfile& profile, const std::string& property) {
  if (property == "size") return profile.size;
  if (property == "scaled_density") return profile.scaled_density;
  if (property == "transitivity") return profile.transitivity;
  if (property == "average_distance") return profile.average_distance;
  return profile.hub_dominance;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API
// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
  if (regimes.empty()) fail_config("at least one regime is required");
  if (sample_count < 1) fail_config("sample_count must be at least 1");
  if (algorithms.empty() && external_partitions.empty()) {
    fail_config("at least one algorithm or external partition is required");
  }
  std::set<std::string> regime_names;
  for (const RegimeConfig& regime : regimes) {
    if (!valid_name(regime.name)) {
      fail_config("regime name \"" + regime.name + "\" must match [A-Za-z0-9_-]{1,64}");
    }
    if (!regime_names.insert(regime.name).second) {
      fail_config("duplicate regime name \"" + regime.name + "\"");
    }
    try {
      regime.params.validate();
    } catch (const std::invalid_argument& error) {
      fail_config("regime \"" + regime.name + "\": " + error.what());
    }
  }
  std::set<std::string> sources{"reference"};
  for (const AlgorithmEntry& entry : algorithms) {
    if (!valid_name(entry.name)) {
      fail_config("algorithm name \"" + entry.name + "\" must match [A-Za-z0-9_-]{1,64}");
    }
    if (!sources.insert(entry.name).second) {
      fail_config("source name \"" + entry.name + "\" is already taken");
    }
    try {
      entry.config.validate();
    } catch (const std::invalid_argument& error) {
      fail_config("algorithm \"" + entry.name + "\": " + error.what());
    }
  }
  for (const ExternalPartitionEntry& entry : external_partitions) {
    if (!valid_name(entry.name)) {
      fail_config("external partition name \"" + entry.name + "\" must match [A-Za-z0-9_-]{1,64}");
    }
    if (!sources.insert(entry.name).second) {
      fail_config("source name \"" + entry.name + "\" is already taken");
    }
    if (entry.path_pattern.empty()) {
      fail_config("external partition \"" + entry.name + "\" needs a path");
    }
  }
  if (output_dir.empty()) fail_config("output_dir must not be empty");
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& error) {
    fail_config(std::string("invalid JSON: ") + error.what());
  }
  if (!j.is_object()) fail_config("top level must be an object");
  check_keys(j, "top level",
             {"regimes", "sample_count", "algorithms", "external_partitions", "output_dir",
              "master_seed"});

  ExperimentConfig cfg;
  const ordered_json* regimes = find(j, "regimes");
  if (regimes == nullptr || !regimes->is_array()) {
    fail_config("\"regimes\" must be an array");
  }
  for (std::size_t i = 0; i < regimes->size(); ++i) {
    cfg.regimes.push_back(parse_regime((*regimes)[i], static_cast<int>(i)));
  }
  cfg.sample_count = static_cast<int>(integer_field(j, "top level", "sample_count", 5));
  if (const ordered_json* algorithms = find(j, "algorithms")) {
    if (!algorithms->is_array()) fail_config("\"algorithms\" must be an array");
    for (std::size_t i = 0; i < algorithms->size(); ++i) {
      cfg.algorithms.push_back(parse_algorithm((*algorithms)[i], static_cast<int>(i)));
    }
  }
  if (const ordered_json* externals = find(j, "external_partitions")) {
    if (!externals->is_array()) fail_config("\"external_partitions\" must be an array");
    for (std::size_t i = 0; i < externals->size(); ++i) {
      cfg.external_partitions.push_back(parse_external((*externals)[i], static_cast<int>(i)));
    }
  }
  cfg.output_dir = string_field(j, "top level", "output_dir", cfg.output_dir);
  cfg.master_seed = seed_field(j, "top level", "master_seed", 1);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open experiment config: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_experiment_config(text);
}

std::uint64_t sample_seed(std::uint64_t master_seed, int regime_index, int sample_index) {
  return master_seed + kRegimeStride * static_cast<std::uint64_t>(regime_index) +
         static_cast<std::uint64_t>(sample_index);
}

std::vector<RankedScore> rank_algorithms(std::vector<std::pair<std::string, double>> scores) {
  if (scores.empty()) throw std::invalid_argument("rank_algorithms needs at least one score");
  for (const auto& [source, score] : scores) {
    if (!std::isfinite(score)) {
      throw std::invalid_argument("rank_algorithms: non-finite score for \"" + source + "\"");
    }
  }
  std::sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<RankedScore> out(scores.size());
  std::size_t group_start = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].second != scores[group_start].second) group_start = i;
    out[i].source = scores[i].first;
    out[i].score = scores[i].second;
    out[i].rank = static_cast<int>(group_start) + 1;
    const bool more_in_group =
        i + 1 < scores.size() && scores[i + 1].second == scores[group_start].second;
    out[i].tied = i > group_start || more_in_group;
  }
  return out;
}

void emit_tables(const EvaluationReport& report, const std::string& dir) {
  if (report.scores.empty() && report.profiles.empty()) {
    throw std::invalid_argument("emit_tables: report holds no scores and no curves");
  }
  const fs::path base(dir);
  fs::create_directories(base);

  write_json_file(report_json(report), base / "report.json");

  for (const char* measure : kMeasures) {
    const fs::path path = base / (std::string("scores_") + measure + ".csv");
    std::ofstream out = open_for_write(path);
    out << "regime,sample,source,value\n";
    for (const ScoreRow& row : report.scores) {
      out << row.regime << ',' << row.sample << ',' << row.source << ','
          << fmt(measure_value(row, measure)) << '\n';
    }
    close_checked(out, path);
  }

  {
    const fs::path path = base / "ranking.csv";
    std::ofstream out = open_for_write(path);
    out << "regime,measure,source,mean_score,rank,tied\n";
    for (const RankEntry& entry : report.ranking) {
      out << entry.regime << ',' << entry.measure << ',' << entry.source << ','
          << fmt(entry.mean_score) << ',' << entry.rank << ',' << (entry.tied ? 1 : 0) << '\n';
    }
    close_checked(out, path);
  }

  std::vector<std::string> source_order;
  for (const SampleProfile& profile : report.profiles) {
    if (std::find(source_order.begin(), source_order.end(), profile.source) ==
        source_order.end()) {
      source_order.push_back(profile.source);
    }
  }

  for (const char* property : kProperties) {
    for (const std::string& source : source_order) {
      const fs::path path = base / ("curve_" + std::string(property) + "_" + source + ".csv");
      std::ofstream out = open_for_write(path);
      out << "regime,sample,bin_low,bin_high,mean,count\n";
      for (const SampleProfile& profile : report.profiles) {
        if (profile.source != source) continue;
        const BinnedSeries& series = property_series(profile, property);
        for (std::size_t i = 0; i < series.mean.size(); ++i) {
          if (series.count[i] == 0) continue;
          out << profile.regime << ',' << profile.sample << ',' << fmt(series.bin_low[i]) << ','
              << fmt(series.bin_high[i]) << ',' << fmt(series.mean[i]) << ',' << series.count[i]
              << '\n';
        }
      }
      close_checked(out, path);
    }
  }

  for (const std::string& source : source_order) {
    const fs::path path = base / ("embeddedness_" + source + ".csv");
    std::ofstream out = open_for_write(path);
    out << "regime,sample,bin_low,bin_high,count\n";
    for (const SampleProfile& profile : report.profiles) {
      if (profile.source != source) continue;
      const Histogram& histogram = profile.embeddedness;
      for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
        out << profile.regime << ',' << profile.sample << ',' << fmt(histogram.edges[i]) << ','
            << fmt(histogram.edges[i + 1]) << ',' << histogram.counts[i] << '\n';
      }
    }
    close_checked(out, path);
  }

  {
    const fs::path path = base / "powerlaw_fits.csv";
    std::ofstream out = open_for_write(path);
    out << "regime,sample,source,exponent,xmin,ks_distance,p_value,tail_count,sample_count,"
           "reliable,degenerate\n";
    for (const SampleProfile& profile : report.profiles) {
      const PowerLawFit& fit = profile.size_fit;
      out << profile.regime << ',' << profile.sample << ',' << profile.source << ','
          << fmt(fit.exponent) << ',' << fit.xmin << ',' << fmt(fit.ks_distance) << ','
          << fmt(fit.p_value) << ',' << fit.tail_count << ',' << fit.sample_count << ','
          << (fit.reliable ? 1 : 0) << ',' << (fit.degenerate ? 1 : 0) << '\n';
    }
    close_checked(out, path);
  }
}

EvaluationReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  const fs::path root(cfg.output_dir);
  fs::create_directories(root / "regimes");

  EvaluationReport report;
  ordered_json cell_timings = ordered_json::array();
  std::string fatal;

  for (std::size_t regime_index = 0; regime_index < cfg.regimes.size() && fatal.empty();
       ++regime_index) {
    const RegimeConfig& regime = cfg.regimes[regime_index];
    for (int sample = 0; sample < cfg.sample_count; ++sample) {
      const std::uint64_t seed =
          sample_seed(cfg.master_seed, static_cast<int>(regime_index), sample);
      const fs::path sample_dir =
          root / "regimes" / regime.name / ("sample_" + std::to_string(sample));

      SampleInfo info;
      info.regime = regime.name;
      info.sample = sample;
      info.seed = seed;

      const auto generation_started = std::chrono::steady_clock::now();
      LfrResult generated;
      try {
        generated = generate_lfr(regime.params, seed);
      } catch (const GenerationError& error) {
        report.samples.push_back(info);
        report.failures.push_back({regime.name, sample, "", "generate", error.what()});
        fatal = "regime \"" + regime.name + "\" sample " + std::to_string(sample) + ": " +
                error.what();
        break;
      }
      const double generation_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - generation_started)
              .count();

      fs::create_directories(sample_dir / "estimated");
      write_edge_list(generated.graph, (sample_dir / "network.edges").string());
      write_membership(generated.partition, (sample_dir / "reference.membership").string());

      // Everything downstream works from the persisted files, so the report
      // provably reflects what a reader of the output directory would see.
      const Graph g =
          read_edge_list((sample_dir / "network.edges").string(), regime.params.node_count);
      const Partition reference = read_membership((sample_dir / "reference.membership").string(),
                                                  regime.params.node_count);

      double target_sum = 0.0;
      for (const double t : generated.target_mixing) target_sum += t;
      double achieved_sum = 0.0;
      for (const double a : node_mixing(g, reference)) achieved_sum += a;

      info.generated = true;
      info.node_count = g.node_count();
      info.edge_count = g.edge_count();
      info.mean_degree = 2.0 * static_cast<double>(g.edge_count()) / g.node_count();
      info.target_mixing_mean = target_sum / g.node_count();
      info.achieved_mixing_mean = achieved_sum / g.node_count();
      info.reference_communities = reference.community_count();
      report.samples.push_back(info);

      ordered_json meta;
      meta["regime"] = info.regime;
      meta["sample"] = info.sample;
      meta["seed"] = info.seed;
      meta["node_count"] = info.node_count;
      meta["edge_count"] = info.edge_count;
      meta["mean_degree"] = info.mean_degree;
      meta["target_mixing_mean"] = info.target_mixing_mean;
      meta["achieved_mixing_mean"] = info.achieved_mixing_mean;
      meta["reference_communities"] = info.reference_communities;
      meta["generator_attempts"] = generated.stats.attempts;
      meta["initial_deviation"] = generated.stats.initial_deviation;
      meta["final_deviation"] = generated.stats.final_deviation;
      write_json_file(meta, sample_dir / "meta.json");

      report.profiles.push_back(make_profile(regime.name, sample, "reference", g, reference, seed));

      for (const AlgorithmEntry& entry : cfg.algorithms) {
        DetectionConfig detection = entry.config;
        // Offset rather than replace, so two entries that differ only in
        // their seed field stay distinct runs.
        detection.seed = entry.config.seed + seed;
        const auto cell_started = std::chrono::steady_clock::now();
        try {
          const DetectionResult result = run_algorithm(g, detection);
          write_membership(result.partition,
                           (sample_dir / "estimated" / (entry.name + ".membership")).string());
          report.scores.push_back(
              make_scores(regime.name, sample, entry.name, reference, result.partition));
          report.profiles.push_back(
              make_profile(regime.name, sample, entry.name, g, result.partition, seed));
        } catch (const std::exception& error) {
          report.failures.push_back({regime.name, sample, entry.name, "detect", error.what()});
        }
        ordered_json timing;
        timing["regime"] = regime.name;
        timing["sample"] = sample;
        timing["source"] = entry.name;
        timing["seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - cell_started).count();
        cell_timings.push_back(std::move(timing));
      }

      for (const ExternalPartitionEntry& entry : cfg.external_partitions) {
        const std::string path = instantiate_pattern(entry.path_pattern, regime.name, sample);
        try {
          const Partition estimated = load_external_partition(path, g.node_count());
          write_membership(estimated,
                           (sample_dir / "estimated" / (entry.name + ".membership")).string());
          report.scores.push_back(
              make_scores(regime.name, sample, entry.name, reference, estimated));
          report.profiles.push_back(
              make_profile(regime.name, sample, entry.name, g, estimated, seed));
        } catch (const std::exception& error) {
          report.failures.push_back({regime.name, sample, entry.name, "external",
                                     std::string(error.what()) + " (" + path + ")"});
        }
      }

      ordered_json timing;
      timing["regime"] = regime.name;
      timing["sample"] = sample;
      timing["source"] = "generate";
      timing["seconds"] = generation_seconds;
      cell_timings.push_back(std::move(timing));
    }
  }

  std::vector<std::string> regime_order;
  for (const RegimeConfig& regime : cfg.regimes) regime_order.push_back(regime.name);
  build_ranking(report, regime_order);

  if (!report.scores.empty() || !report.profiles.empty()) {
    emit_tables(report, (root / "report").string());
  }

  ordered_json manifest;
  manifest["config"] = config_json(cfg);
  int generated_samples = 0;
  for (const SampleInfo& info : report.samples) {
    if (info.generated) ++generated_samples;
  }
  ordered_json cells;
  cells["planned"] = static_cast<std::int64_t>(cfg.regimes.size()) * cfg.sample_count *
                     static_cast<std::int64_t>(cfg.algorithms.size() +
                                               cfg.external_partitions.size());
  cells["completed"] = report.scores.size();
  cells["samples_generated"] = generated_samples;
  manifest["cells"] = std::move(cells);
  manifest["failures"] = failures_json(report);
  write_json_file(manifest, root / "manifest.json");

  // Wall-clock diagnostics; the one artifact that legitimately differs
  // between same-seed reruns.
  ordered_json timings;
  timings["total_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  timings["cells"] = std::move(cell_timings);
  write_json_file(timings, root / "timings.json");

  if (!fatal.empty()) throw std::runtime_error("experiment aborted: " + fatal);
  return report;
}

}  // namespace combench
