#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "combench/detection.hpp"
#include "combench/generator.hpp"
#include "combench/powerlaw.hpp"
#include "combench/topology.hpp"

namespace combench {

// A named generation regime. The name doubles as a directory component, so
// it is restricted to [A-Za-z0-9_-].
struct RegimeConfig {
  std::string name;
  LfrParams params;
};

// One detection run per sample. `name` tags the rows this entry produces in
// the report and defaults to the algorithm string when parsed from JSON, so
// two entries for the same algorithm (say, two inflation settings) need
// explicit names.
struct AlgorithmEntry {
  std::string name;
  DetectionConfig config;
};

// A membership file produced by an outside tool, evaluated exactly like a
// native algorithm. The pattern is instantiated per cell by substituting
// "{regime}" and "{sample}".
struct ExternalPartitionEntry {
  std::string name;
  std::string path_pattern;
};

struct ExperimentConfig {
  std::vector<RegimeConfig> regimes;
  int sample_count = 5;
  std::vector<AlgorithmEntry> algorithms;
  std::vector<ExternalPartitionEntry> external_partitions;
  std::string output_dir = "combench-out";
  std::uint64_t master_seed = 1;

  // Throws std::invalid_argument unless there is at least one regime,
  // sample_count >= 1, at least one algorithm or external partition, every
  // regime parameter set is valid, and all source names are usable and
  // unique ("reference" is taken).
  void validate() const;
};

// Parses the documented JSON schema (see README). Unknown keys are errors.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

// Seed fan-out. Each sample's generation seed depends only on the master
// seed, the regime's position, and the sample index, so appending a regime
// or raising sample_count never changes existing samples. Detection runs
// offset the sample seed by the entry's own seed field.
std::uint64_t sample_seed(std::uint64_t master_seed, int regime_index, int sample_index);

// Scores of one estimated partition against the reference of one sample.
struct ScoreRow {
  std::string regime;
  int sample = 0;
  std::string source;
  double fcc = 0.0;
  double ri = 0.0;
  double ari = 0.0;
  double nmi = 0.0;
};

// Community-level curves for one partition of one sample, binned by
// community size, plus the node-level embeddedness histogram. The source
// "reference" holds the planted partition.
struct SampleProfile {
  std::string regime;
  int sample = 0;
  std::string source;
  int community_count = 0;
  NodeId largest_community = 0;
  double modularity = 0.0;
  double embeddedness_one_fraction = 0.0;  // share of degree>0 nodes fully inside
  BinnedSeries size;
  BinnedSeries scaled_density;
  BinnedSeries transitivity;
  BinnedSeries average_distance;
  BinnedSeries hub_dominance;
  Histogram embeddedness;
  PowerLawFit size_fit;  // fit of the community-size distribution
};

// Mean score of one source under one measure within a regime, with its
// competition rank: the best mean gets 1, exact ties share the lower rank
// number and are flagged, and the following rank is skipped.
struct RankEntry {
  std::string regime;
  std::string measure;  // fcc | ri | ari | nmi
  std::string source;
  double mean_score = 0.0;
  int rank = 0;
  bool tied = false;
};

// One skipped cell. Stage is "generate", "detect", or "external".
struct FailureRecord {
  std::string regime;
  int sample = 0;
  std::string source;  // empty for generation failures
  std::string stage;
  std::string message;
};

// Per-sample network facts, recorded whether or not any algorithm ran.
struct SampleInfo {
  std::string regime;
  int sample = 0;
  std::uint64_t seed = 0;
  bool generated = false;
  std::int64_t node_count = 0;
  std::int64_t edge_count = 0;
  double mean_degree = 0.0;
  double target_mixing_mean = 0.0;
  double achieved_mixing_mean = 0.0;
  int reference_communities = 0;
};

struct EvaluationReport {
  std::vector<SampleInfo> samples;
  std::vector<ScoreRow> scores;
  std::vector<RankEntry> ranking;
  std::vector<SampleProfile> profiles;
  std::vector<FailureRecord> failures;
};

// Ranks sources by score, highest first. Exact ties share the lower rank
// number and set the tie flag; order within the result follows rank, then
// source name.
struct RankedScore {
  std::string source;
  double score = 0.0;
  int rank = 0;
  bool tied = false;
};
std::vector<RankedScore> rank_algorithms(std::vector<std::pair<std::string, double>> scores);

// Runs the full (regime x sample x source) grid: generates each sample,
// persists the network, reference membership, and metadata under
// output_dir/regimes/, evaluates every source against the reference read
// back from disk, ranks regime-level sample means, and writes the report
// files via emit_tables plus manifest.json (failures) and timings.json
// (wall-clock, the one file exempt from byte-reproducibility).
//
// A failing detection run or unreadable external partition leaves a hole
// and a failure record; a generation failure is recorded, the partial
// report is still written, and the error is rethrown with the regime and
// sample attached.
EvaluationReport run_experiment(const ExperimentConfig& cfg);

// Writes report.json, per-measure score CSVs, ranking.csv, one curve CSV
// per (property, source), embeddedness histogram CSVs, and
// powerlaw_fits.csv into `dir`. Throws std::invalid_argument on a report
// with neither scores nor profiles, before creating anything.
void emit_tables(const EvaluationReport& report, const std::string& dir);

}  // namespace combench
