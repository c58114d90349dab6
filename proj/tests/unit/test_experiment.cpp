#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "combench/experiment.hpp"
#include "combench/io.hpp"
#include "combench/measures.hpp"
#include "combench/topology.hpp"

using namespace combench;
namespace fs = std::filesystem;

namespace {

// Scratch directory removed when the test case ends.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("combench-exp-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// A quick regime with unmistakable structure, for plumbing tests.
RegimeConfig tiny_regime(const std::string& name) {
  RegimeConfig regime;
  regime.name = name;
  regime.params.node_count = 300;
  regime.params.average_degree = 8.0;
  regime.params.max_degree = 30;
  regime.params.min_community = 10;
  regime.params.max_community = 40;
  regime.params.mixing = 0.1;
  return regime;
}

AlgorithmEntry algorithm_entry(const std::string& algorithm) {
  AlgorithmEntry entry;
  entry.name = algorithm;
  entry.config.algorithm = algorithm;
  return entry;
}

bool same_series(const BinnedSeries& a, const BinnedSeries& b) {
  if (a.bin_low != b.bin_low || a.bin_high != b.bin_high || a.count != b.count) return false;
  for (std::size_t i = 0; i < a.mean.size(); ++i) {
    if (a.count[i] == 0) continue;  // empty bins hold NaN means
    if (a.mean[i] != b.mean[i]) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("experiment");

TEST_CASE("rank_algorithms orders scores and shares the lower rank on ties") {
  SUBCASE("two distinct scores") {
    const auto ranked = rank_algorithms({{"a", 0.9}, {"b", 0.5}});
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0].source == "a");
    CHECK(ranked[0].rank == 1);
    CHECK_FALSE(ranked[0].tied);
    CHECK(ranked[1].source == "b");
    CHECK(ranked[1].rank == 2);
    CHECK_FALSE(ranked[1].tied);
  }
  SUBCASE("a tie shares the lower rank number and skips the next") {
    const auto ranked = rank_algorithms({{"d", 0.2}, {"b", 0.8}, {"a", 1.0}, {"c", 0.8}});
    REQUIRE(ranked.size() == 4);
    CHECK(ranked[0].source == "a");
    CHECK(ranked[0].rank == 1);
    CHECK_FALSE(ranked[0].tied);
    CHECK(ranked[1].source == "b");
    CHECK(ranked[1].rank == 2);
    CHECK(ranked[1].tied);
    CHECK(ranked[2].source == "c");
    CHECK(ranked[2].rank == 2);
    CHECK(ranked[2].tied);
    CHECK(ranked[3].source == "d");
    CHECK(ranked[3].rank == 4);
    CHECK_FALSE(ranked[3].tied);
  }
  SUBCASE("all equal") {
    const auto ranked = rank_algorithms({{"a", 0.5}, {"b", 0.5}, {"c", 0.5}});
    for (const RankedScore& entry : ranked) {
      CHECK(entry.rank == 1);
      CHECK(entry.tied);
    }
  }
}

TEST_CASE("rank_algorithms reproduces a hand-checked five-method column") {
  // NMI column of a published comparison used as a frozen fixture.
  const auto ranked = rank_algorithms({{"fast_greedy", 0.588},
                                       {"markov_cluster", 0.881},
                                       {"infomap", 0.930},
                                       {"copra", 0.070},
                                       {"walktrap", 0.865}});
  REQUIRE(ranked.size() == 5);
  CHECK(ranked[0].source == "infomap");
  CHECK(ranked[0].rank == 1);
  CHECK(ranked[1].source == "markov_cluster");
  CHECK(ranked[1].rank == 2);
  CHECK(ranked[2].source == "walktrap");
  CHECK(ranked[2].rank == 3);
  CHECK(ranked[3].source == "fast_greedy");
  CHECK(ranked[3].rank == 4);
  CHECK(ranked[4].source == "copra");
  CHECK(ranked[4].rank == 5);
  for (const RankedScore& entry : ranked) CHECK_FALSE(entry.tied);
}

TEST_CASE("rank_algorithms rejects empty and non-finite input") {
  CHECK_THROWS_AS(rank_algorithms({}), std::invalid_argument);
  CHECK_THROWS_AS(rank_algorithms({{"a", std::nan("")}}), std::invalid_argument);
}

TEST_CASE("sample seeds depend only on master seed, regime position, and sample") {
  CHECK(sample_seed(7, 0, 0) == 7);
  CHECK(sample_seed(7, 0, 1) == 8);
  CHECK(sample_seed(7, 1, 0) == 7 + 1000003);
  CHECK(sample_seed(7, 2, 4) == 7 + 2 * 1000003 + 4);
  // No collisions across a realistic grid.
  std::vector<std::uint64_t> seen;
  for (int regime = 0; regime < 4; ++regime) {
    for (int sample = 0; sample < 50; ++sample) {
      seen.push_back(sample_seed(123, regime, sample));
    }
  }
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("experiment config parses the documented schema") {
  const std::string text = R"({
    "master_seed": 42,
    "sample_count": 3,
    "output_dir": "out",
    "regimes": [
      {"name": "small", "node_count": 300, "average_degree": 8, "max_degree": 30,
       "min_community": 10, "max_community": 40, "mixing": 0.1},
      {"name": "mixed", "node_count": 400, "average_degree": 8, "max_degree": 30,
       "min_community": 10, "mixing_mode": "bimodal", "bimodal_high_mean": 0.4}
    ],
    "algorithms": [
      {"algorithm": "louvain"},
      {"algorithm": "markov_cluster", "name": "mcl_fine", "mcl_inflation": 4.0}
    ],
    "external_partitions": [
      {"name": "oracle", "path": "ext/{regime}/sample_{sample}.membership"}
    ]
  })";
  const ExperimentConfig cfg = parse_experiment_config(text);
  CHECK(cfg.master_seed == 42);
  CHECK(cfg.sample_count == 3);
  CHECK(cfg.output_dir == "out");
  REQUIRE(cfg.regimes.size() == 2);
  CHECK(cfg.regimes[0].params.node_count == 300);
  CHECK(cfg.regimes[0].params.mixing_mode == MixingMode::kConstant);
  CHECK(cfg.regimes[1].params.mixing_mode == MixingMode::kBimodal);
  CHECK(cfg.regimes[1].params.bimodal_high_mean == doctest::Approx(0.4));
  CHECK(cfg.regimes[1].params.max_community == 0);  // resolved at generation time
  REQUIRE(cfg.algorithms.size() == 2);
  CHECK(cfg.algorithms[0].name == "louvain");  // defaults to the algorithm string
  CHECK(cfg.algorithms[1].name == "mcl_fine");
  CHECK(cfg.algorithms[1].config.mcl_inflation == doctest::Approx(4.0));
  REQUIRE(cfg.external_partitions.size() == 1);
  CHECK(cfg.external_partitions[0].path_pattern == "ext/{regime}/sample_{sample}.membership");
}

TEST_CASE("experiment config parsing rejects malformed input") {
  const std::string base = R"({
    "regimes": [{"name": "r", "node_count": 300, "average_degree": 8,
                 "max_degree": 30, "min_community": 10}],
    "algorithms": [{"algorithm": "louvain"}]
  })";
  CHECK_NOTHROW(parse_experiment_config(base));
  CHECK_THROWS_AS(parse_experiment_config("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_config("[1, 2]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_config(R"({"algorithms": []})"), std::invalid_argument);

  SUBCASE("unknown keys are typos, not extensions") {
    CHECK_THROWS_AS(parse_experiment_config(R"({
      "regimes": [{"name": "r", "node_count": 300, "average_degree": 8,
                   "max_degree": 30, "min_community": 10, "mixin": 0.2}],
      "algorithms": [{"algorithm": "louvain"}]
    })"),
                    std::invalid_argument);
  }
  SUBCASE("missing required regime key") {
    CHECK_THROWS_AS(parse_experiment_config(R"({
      "regimes": [{"name": "r", "node_count": 300, "average_degree": 8,
                   "max_degree": 30}],
      "algorithms": [{"algorithm": "louvain"}]
    })"),
                    std::invalid_argument);
  }
  SUBCASE("wrong type") {
    CHECK_THROWS_AS(parse_experiment_config(R"({
      "regimes": [{"name": "r", "node_count": "many", "average_degree": 8,
                   "max_degree": 30, "min_community": 10}],
      "algorithms": [{"algorithm": "louvain"}]
    })"),
                    std::invalid_argument);
  }
  SUBCASE("unknown mixing mode") {
    CHECK_THROWS_AS(parse_experiment_config(R"({
      "regimes": [{"name": "r", "node_count": 300, "average_degree": 8,
                   "max_degree": 30, "min_community": 10, "mixing_mode": "uniform"}],
      "algorithms": [{"algorithm": "louvain"}]
    })"),
                    std::invalid_argument);
  }
  SUBCASE("negative seed") {
    CHECK_THROWS_AS(parse_experiment_config(R"({
      "master_seed": -1,
      "regimes": [{"name": "r", "node_count": 300, "average_degree": 8,
                   "max_degree": 30, "min_community": 10}],
      "algorithms": [{"algorithm": "louvain"}]
    })"),
                    std::invalid_argument);
  }
}

TEST_CASE("experiment config validation") {
  ExperimentConfig cfg;
  cfg.regimes.push_back(tiny_regime("tiny"));
  cfg.algorithms.push_back(algorithm_entry("louvain"));
  CHECK_NOTHROW(cfg.validate());

  SUBCASE("no algorithms and no external partitions") {
    cfg.algorithms.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("an external partition alone is enough") {
    cfg.algorithms.clear();
    cfg.external_partitions.push_back({"oracle", "somewhere/{regime}_{sample}.txt"});
    CHECK_NOTHROW(cfg.validate());
  }
  SUBCASE("sample_count must be positive") {
    cfg.sample_count = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("no regimes") {
    cfg.regimes.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("regime names become directories, so they are restricted") {
    cfg.regimes[0].name = "bad/name";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("duplicate regime names") {
    cfg.regimes.push_back(tiny_regime("tiny"));
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("duplicate source names") {
    cfg.algorithms.push_back(algorithm_entry("louvain"));
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("the reference tag is reserved") {
    cfg.algorithms[0].name = "reference";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
  SUBCASE("regime parameters are validated with the regime named") {
    cfg.regimes[0].params.average_degree = 100.0;  // above max_degree
    try {
      cfg.validate();
      FAIL("expected an exception");
    } catch (const std::invalid_argument& error) {
      CHECK(std::string(error.what()).find("tiny") != std::string::npos);
    }
  }
  SUBCASE("algorithm settings are validated") {
    cfg.algorithms[0].config.algorithm = "leiden";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }
}

TEST_CASE("a strong structure regime scores high on every measure") {
  TempDir dir;
  ExperimentConfig cfg;
  RegimeConfig regime;
  regime.name = "clear";
  regime.params.node_count = 1000;
  regime.params.average_degree = 14.0;
  regime.params.max_degree = 40;
  regime.params.min_community = 10;
  regime.params.max_community = 50;
  regime.params.mixing = 0.05;
  cfg.regimes.push_back(regime);
  cfg.sample_count = 2;
  cfg.algorithms.push_back(algorithm_entry("louvain"));
  cfg.output_dir = dir.file("run");
  cfg.master_seed = 20;

  const EvaluationReport report = run_experiment(cfg);

  REQUIRE(report.scores.size() == 2);
  for (const ScoreRow& row : report.scores) {
    CHECK(row.source == "louvain");
    CHECK(row.fcc >= 0.8);
    CHECK(row.ri >= 0.8);
    CHECK(row.ari >= 0.8);
    CHECK(row.nmi >= 0.8);
  }
  REQUIRE(report.samples.size() == 2);
  for (const SampleInfo& info : report.samples) {
    CHECK(info.generated);
    CHECK(info.node_count == 1000);
    CHECK(info.mean_degree == doctest::Approx(14.0).epsilon(0.10));
    CHECK(info.achieved_mixing_mean < 0.15);
  }
  CHECK(report.failures.empty());

  // One reference and one estimated profile per sample.
  REQUIRE(report.profiles.size() == 4);
  CHECK(report.profiles[0].source == "reference");
  CHECK(report.profiles[0].embeddedness_one_fraction < 0.7);  // mixing keeps most nodes partial
  CHECK(report.profiles[0].community_count == report.samples[0].reference_communities);

  // Ranking covers the four measures for the single source.
  REQUIRE(report.ranking.size() == 4);
  for (const RankEntry& entry : report.ranking) {
    CHECK(entry.rank == 1);
    CHECK_FALSE(entry.tied);
    CHECK(entry.mean_score >= 0.8);
  }

  // Persisted layout.
  const fs::path root(cfg.output_dir);
  CHECK(fs::exists(root / "regimes" / "clear" / "sample_0" / "network.edges"));
  CHECK(fs::exists(root / "regimes" / "clear" / "sample_0" / "reference.membership"));
  CHECK(fs::exists(root / "regimes" / "clear" / "sample_0" / "meta.json"));
  CHECK(fs::exists(root / "regimes" / "clear" / "sample_1" / "estimated" / "louvain.membership"));
  CHECK(fs::exists(root / "report" / "report.json"));
  CHECK(fs::exists(root / "report" / "scores_nmi.csv"));
  CHECK(fs::exists(root / "report" / "ranking.csv"));
  CHECK(fs::exists(root / "report" / "curve_scaled_density_reference.csv"));
  CHECK(fs::exists(root / "report" / "curve_average_distance_louvain.csv"));
  CHECK(fs::exists(root / "report" / "embeddedness_reference.csv"));
  CHECK(fs::exists(root / "report" / "powerlaw_fits.csv"));
  CHECK(fs::exists(root / "manifest.json"));
  CHECK(fs::exists(root / "timings.json"));

  // The report's reference curves equal a fresh profile of the persisted
  // files, so the artifacts fully determine the published numbers.
  const Graph g = read_edge_list((root / "regimes" / "clear" / "sample_0" / "network.edges").string());
  const Partition reference =
      read_membership((root / "regimes" / "clear" / "sample_0" / "reference.membership").string());
  const auto profiles = profile_communities(g, reference);
  const BinnedSeries density = bin_by_size(profiles, [](const CommunityProfile& c) {
    return c.scaled_density;
  });
  CHECK(same_series(report.profiles[0].scaled_density, density));

  // Scores recomputed from the persisted memberships match the report.
  const Partition estimated = read_membership(
      (root / "regimes" / "clear" / "sample_0" / "estimated" / "louvain.membership").string());
  CHECK(report.scores[0].nmi == nmi(reference, estimated));
  CHECK(report.scores[0].fcc == fcc(reference, estimated));
}

TEST_CASE("same master seed produces byte-identical reports") {
  TempDir dir;
  ExperimentConfig cfg;
  cfg.regimes.push_back(tiny_regime("tiny"));
  cfg.sample_count = 2;
  cfg.algorithms.push_back(algorithm_entry("louvain"));
  cfg.algorithms.push_back(algorithm_entry("label_propagation"));
  cfg.master_seed = 99;

  cfg.output_dir = dir.file("a");
  const EvaluationReport first = run_experiment(cfg);
  cfg.output_dir = dir.file("b");
  const EvaluationReport second = run_experiment(cfg);

  CHECK(first.scores.size() == second.scores.size());
  for (const std::string name :
       {"report/report.json", "report/ranking.csv", "report/scores_nmi.csv",
        "report/scores_ari.csv", "report/curve_scaled_density_reference.csv",
        "report/embeddedness_louvain.csv", "report/powerlaw_fits.csv", "manifest.json",
        "regimes/tiny/sample_0/network.edges", "regimes/tiny/sample_0/reference.membership",
        "regimes/tiny/sample_0/meta.json",
        "regimes/tiny/sample_1/estimated/label_propagation.membership"}) {
    CHECK_MESSAGE(slurp(dir.file("a") + "/" + name) == slurp(dir.file("b") + "/" + name), name);
  }

  // Two sources x four measures -> eight value/rank cells, each measure a
  // tie-aware permutation over the two sources.
  REQUIRE(first.ranking.size() == 8);
  for (const char* measure : {"fcc", "ri", "ari", "nmi"}) {
    std::vector<int> ranks;
    for (const RankEntry& entry : first.ranking) {
      if (entry.measure == measure) ranks.push_back(entry.rank);
    }
    REQUIRE(ranks.size() == 2);
    const bool plain = ranks[0] == 1 && ranks[1] == 2;
    const bool tied = ranks[0] == 1 && ranks[1] == 1;
    CHECK((plain || tied));
  }
}

TEST_CASE("external partitions join the evaluation path") {
  TempDir dir;
  ExperimentConfig cfg;
  cfg.regimes.push_back(tiny_regime("tiny"));
  cfg.sample_count = 1;
  cfg.algorithms.push_back(algorithm_entry("louvain"));
  cfg.master_seed = 5;
  cfg.output_dir = dir.file("first");
  run_experiment(cfg);

  // Hand the reference back as an "external" result; the same network is
  // regenerated because the master seed fixes it.
  fs::create_directories(dir.file("ext"));
  fs::copy_file(dir.file("first") + "/regimes/tiny/sample_0/reference.membership",
                dir.file("ext") + "/tiny_0.membership");
  cfg.external_partitions.push_back({"oracle", dir.file("ext") + "/{regime}_{sample}.membership"});
  cfg.output_dir = dir.file("second");
  const EvaluationReport report = run_experiment(cfg);

  REQUIRE(report.scores.size() == 2);
  const ScoreRow& oracle = report.scores[1];
  CHECK(oracle.source == "oracle");
  CHECK(oracle.fcc == 1.0);
  CHECK(oracle.ri == 1.0);
  CHECK(oracle.ari == 1.0);
  CHECK(oracle.nmi == 1.0);
  CHECK(fs::exists(fs::path(cfg.output_dir) / "regimes" / "tiny" / "sample_0" / "estimated" /
                   "oracle.membership"));

  // The oracle tops every measure; ties with louvain share rank 1.
  for (const RankEntry& entry : report.ranking) {
    if (entry.source == "oracle") CHECK(entry.rank == 1);
  }
}

TEST_CASE("a missing external partition is a recorded hole, not an abort") {
  TempDir dir;
  ExperimentConfig cfg;
  cfg.regimes.push_back(tiny_regime("tiny"));
  cfg.sample_count = 1;
  cfg.algorithms.push_back(algorithm_entry("louvain"));
  cfg.external_partitions.push_back({"oracle", dir.file("nowhere") + "/{regime}_{sample}.txt"});
  cfg.output_dir = dir.file("run");
  cfg.master_seed = 5;

  const EvaluationReport report = run_experiment(cfg);

  REQUIRE(report.scores.size() == 1);  // louvain only
  CHECK(report.scores[0].source == "louvain");
  REQUIRE(report.failures.size() == 1);
  CHECK(report.failures[0].stage == "external");
  CHECK(report.failures[0].source == "oracle");
  CHECK(report.failures[0].regime == "tiny");

  const auto manifest = nlohmann::ordered_json::parse(slurp(dir.file("run") + "/manifest.json"));
  REQUIRE(manifest["failures"].size() == 1);
  CHECK(manifest["failures"][0]["stage"] == "external");
  CHECK(manifest["cells"]["planned"] == 2);
  CHECK(manifest["cells"]["completed"] == 1);

  // Ranking only covers sources that produced results.
  for (const RankEntry& entry : report.ranking) CHECK(entry.source == "louvain");
}

TEST_CASE("a generation failure is reported with its cell and leaves a manifest") {
  TempDir dir;
  ExperimentConfig cfg;
  cfg.regimes.push_back(tiny_regime("good"));
  RegimeConfig impossible;
  impossible.name = "impossible";
  impossible.params.node_count = 12;
  impossible.params.average_degree = 3.0;
  impossible.params.max_degree = 5;
  impossible.params.min_community = 7;   // sizes from [7, 8] can never tile 12 nodes
  impossible.params.max_community = 8;
  impossible.params.mixing = 0.1;
  CHECK_NOTHROW(impossible.params.validate());
  cfg.regimes.push_back(impossible);
  cfg.sample_count = 1;
  cfg.algorithms.push_back(algorithm_entry("louvain"));
  cfg.output_dir = dir.file("run");
  cfg.master_seed = 5;

  try {
    run_experiment(cfg);
    FAIL("expected the generation failure to propagate");
  } catch (const std::runtime_error& error) {
    const std::string message = error.what();
    CHECK(message.find("impossible") != std::string::npos);
    CHECK(message.find("sample 0") != std::string::npos);
  }

  // The completed regime was persisted along with the failure manifest.
  CHECK(fs::exists(fs::path(cfg.output_dir) / "regimes" / "good" / "sample_0" / "network.edges"));
  CHECK(fs::exists(fs::path(cfg.output_dir) / "report" / "report.json"));
  const auto manifest = nlohmann::ordered_json::parse(slurp(dir.file("run") + "/manifest.json"));
  REQUIRE(manifest["failures"].size() == 1);
  CHECK(manifest["failures"][0]["stage"] == "generate");
  CHECK(manifest["failures"][0]["regime"] == "impossible");
}

TEST_CASE("emit_tables rejects an empty report and writes nothing") {
  TempDir dir;
  const EvaluationReport report;
  const std::string target = dir.file("never");
  CHECK_THROWS_AS(emit_tables(report, target), std::invalid_argument);
  CHECK_FALSE(fs::exists(target));
}

TEST_SUITE_END();
