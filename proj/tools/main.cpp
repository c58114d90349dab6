// combench: command line front end for the benchmark library.
//
// Subcommands: generate (synthetic network + planted communities), detect
// (run one algorithm on a graph), evaluate (score an estimated membership
// against a reference), profile (community topology curves), experiment
// (full config-driven grid). COMBENCH_OUTPUT_DIR provides the default
// output directory wherever one is accepted.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "combench/detection.hpp"
#include "combench/experiment.hpp"
#include "combench/generator.hpp"
#include "combench/io.hpp"
#include "combench/measures.hpp"
#include "combench/powerlaw.hpp"
#include "combench/topology.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

void write_json_file(const ordered_json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
  out.flush();
  if (!out.good()) throw std::runtime_error("write failed: " + path.string());
}

ordered_json fit_json(const combench::PowerLawFit& fit) {
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

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateOptions {
  combench::LfrParams params;
  std::string mixing_mode = "constant";
  std::uint64_t seed = 1;
  std::string output_dir;
};

void add_generate(CLI::App& app, GenerateOptions& opt) {
  CLI::App* cmd = app.add_subcommand(
      "generate", "Generate a benchmark network with planted communities");
  cmd->add_option("--nodes", opt.params.node_count, "Number of nodes")->required();
  cmd->add_option("--average-degree", opt.params.average_degree, "Target mean degree")
      ->required();
  cmd->add_option("--max-degree", opt.params.max_degree, "Largest allowed degree")->required();
  cmd->add_option("--degree-exponent", opt.params.degree_exponent,
                  "Power-law exponent of the degree distribution");
  cmd->add_option("--community-exponent", opt.params.community_exponent,
                  "Power-law exponent of the community sizes");
  cmd->add_option("--min-community", opt.params.min_community, "Smallest community size")
      ->required();
  cmd->add_option("--max-community", opt.params.max_community,
                  "Largest community size (0: max degree + 1)");
  cmd->add_option("--mixing", opt.params.mixing,
                  "Target share of links leaving each node's community");
  cmd->add_option("--mixing-mode", opt.mixing_mode, "constant or bimodal")
      ->check(CLI::IsMember({"constant", "bimodal"}));
  cmd->add_option("--bimodal-mean", opt.params.bimodal_high_mean,
                  "Mean mixing of the non-zero half in bimodal mode");
  cmd->add_option("--bimodal-sd", opt.params.bimodal_high_sd,
                  "Mixing spread of the non-zero half in bimodal mode");
  cmd->add_option("--seed", opt.seed, "Random seed");
  cmd->add_option("--output-dir", opt.output_dir, "Where to write the artifacts")
      ->envname("COMBENCH_OUTPUT_DIR")
      ->required();

  cmd->callback([&opt] {
    combench::LfrParams params = opt.params;
    params.mixing_mode = opt.mixing_mode == "bimodal" ? combench::MixingMode::kBimodal
                                                      : combench::MixingMode::kConstant;
    params.validate();
    const combench::LfrResult result = combench::generate_lfr(params, opt.seed);

    const fs::path dir(opt.output_dir);
    fs::create_directories(dir);
    combench::write_edge_list(result.graph, (dir / "network.edges").string());
    combench::write_membership(result.partition, (dir / "reference.membership").string());

    double target_sum = 0.0;
    for (const double t : result.target_mixing) target_sum += t;
    double achieved_sum = 0.0;
    for (const double a : combench::node_mixing(result.graph, result.partition)) {
      achieved_sum += a;
    }
    ordered_json meta;
    meta["seed"] = opt.seed;
    meta["node_count"] = result.graph.node_count();
    meta["edge_count"] = result.graph.edge_count();
    meta["mean_degree"] =
        2.0 * static_cast<double>(result.graph.edge_count()) / result.graph.node_count();
    meta["community_count"] = result.partition.community_count();
    meta["target_mixing_mean"] = target_sum / result.graph.node_count();
    meta["achieved_mixing_mean"] = achieved_sum / result.graph.node_count();
    meta["generator_attempts"] = result.stats.attempts;
    meta["initial_deviation"] = result.stats.initial_deviation;
    meta["final_deviation"] = result.stats.final_deviation;
    write_json_file(meta, dir / "meta.json");

    std::cout << "wrote " << (dir / "network.edges").string() << " ("
              << result.graph.node_count() << " nodes, " << result.graph.edge_count()
              << " edges, " << result.partition.community_count() << " communities, mean mixing "
              << fmt(achieved_sum / result.graph.node_count()) << ")\n";
  });
}

// ---------------------------------------------------------------------------
// detect
// ---------------------------------------------------------------------------

struct DetectOptions {
  std::string graph_path;
  combench::NodeId nodes = -1;
  combench::DetectionConfig config;
  std::string output_path;
};

void add_detect(CLI::App& app, DetectOptions& opt) {
  CLI::App* cmd = app.add_subcommand("detect", "Run a community detection algorithm");
  cmd->add_option("--graph", opt.graph_path, "Edge list file")->required();
  cmd->add_option("--nodes", opt.nodes, "Node count (default: max id + 1)");
  cmd->add_option("--algorithm", opt.config.algorithm,
                  "fast_greedy | louvain | walktrap | label_propagation | markov_cluster")
      ->required();
  cmd->add_option("--seed", opt.config.seed, "Random seed");
  cmd->add_option("--walktrap-steps", opt.config.walktrap_steps, "Random walk length");
  cmd->add_option("--lpa-max-sweeps", opt.config.lpa_max_sweeps, "Label propagation sweep cap");
  cmd->add_option("--mcl-expansion", opt.config.mcl_expansion, "Markov cluster expansion power");
  cmd->add_option("--mcl-inflation", opt.config.mcl_inflation, "Markov cluster inflation");
  cmd->add_option("--mcl-prune-threshold", opt.config.mcl_prune_threshold,
                  "Markov cluster pruning threshold");
  cmd->add_option("--mcl-max-iterations", opt.config.mcl_max_iterations,
                  "Markov cluster iteration cap");
  cmd->add_option("--output", opt.output_path,
                  "Membership file to write (default: stdout)");

  cmd->callback([&opt] {
    opt.config.validate();
    const combench::Graph g = combench::read_edge_list(opt.graph_path, opt.nodes);
    const combench::DetectionResult result = combench::run_algorithm(g, opt.config);
    if (opt.output_path.empty()) {
      for (combench::NodeId v = 0; v < g.node_count(); ++v) {
        std::cout << v << ' ' << result.partition[v] << '\n';
      }
      std::cerr << opt.config.algorithm << ": " << result.partition.community_count()
                << " communities, modularity " << fmt(result.modularity) << '\n';
    } else {
      combench::write_membership(result.partition, opt.output_path);
      std::cout << opt.config.algorithm << ": " << result.partition.community_count()
                << " communities, modularity " << fmt(result.modularity) << ", wrote "
                << opt.output_path << '\n';
    }
  });
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateOptions {
  std::string reference_path;
  std::string estimated_path;
  combench::NodeId nodes = -1;
  std::string output_path;
};

void add_evaluate(CLI::App& app, EvaluateOptions& opt) {
  CLI::App* cmd =
      app.add_subcommand("evaluate", "Score an estimated membership against a reference");
  cmd->add_option("--reference", opt.reference_path, "Reference membership file")->required();
  cmd->add_option("--estimated", opt.estimated_path, "Estimated membership file")->required();
  cmd->add_option("--nodes", opt.nodes, "Node count (default: max id + 1 in the reference)");
  cmd->add_option("--output", opt.output_path, "JSON file to write (default: stdout)");

  cmd->callback([&opt] {
    const combench::Partition reference =
        combench::read_membership(opt.reference_path, opt.nodes);
    const combench::Partition estimated =
        combench::read_membership(opt.estimated_path, reference.node_count());
    ordered_json scores;
    scores["fcc"] = combench::fcc(reference, estimated);
    scores["ri"] = combench::rand_index(reference, estimated);
    scores["ari"] = combench::adjusted_rand_index(reference, estimated);
    scores["nmi"] = combench::nmi(reference, estimated);
    scores["reference_communities"] = reference.community_count();
    scores["estimated_communities"] = estimated.community_count();
    if (opt.output_path.empty()) {
      std::cout << scores.dump(2) << '\n';
    } else {
      write_json_file(scores, opt.output_path);
      std::cout << "wrote " << opt.output_path << '\n';
    }
  });
}

// ---------------------------------------------------------------------------
// profile
// ---------------------------------------------------------------------------

struct ProfileOptions {
  std::string graph_path;
  std::string membership_path;
  combench::NodeId nodes = -1;
  int bins_per_decade = 5;
  int embeddedness_bins = 20;
  std::uint64_t seed = 1;
  std::string output_dir;
};

void add_profile(CLI::App& app, ProfileOptions& opt) {
  CLI::App* cmd =
      app.add_subcommand("profile", "Community topology curves for one partition");
  cmd->add_option("--graph", opt.graph_path, "Edge list file")->required();
  cmd->add_option("--membership", opt.membership_path, "Membership file")->required();
  cmd->add_option("--nodes", opt.nodes, "Node count (default: max id + 1)");
  cmd->add_option("--bins-per-decade", opt.bins_per_decade,
                  "Logarithmic size-bin resolution")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--embeddedness-bins", opt.embeddedness_bins,
                  "Histogram bins over [0, 1]")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opt.seed, "Seed for the power-law fit bootstrap");
  cmd->add_option("--output-dir", opt.output_dir, "Where to write the CSV files")
      ->envname("COMBENCH_OUTPUT_DIR")
      ->required();

  cmd->callback([&opt] {
    const combench::Graph g = combench::read_edge_list(opt.graph_path, opt.nodes);
    const combench::Partition p =
        combench::read_membership(opt.membership_path, g.node_count());
    const std::vector<combench::CommunityProfile> profiles =
        combench::profile_communities(g, p);

    const fs::path dir(opt.output_dir);
    fs::create_directories(dir);

    using Selector = double (*)(const combench::CommunityProfile&);
    const std::pair<const char*, Selector> properties[] = {
        {"size",
         [](const combench::CommunityProfile& c) { return static_cast<double>(c.size); }},
        {"scaled_density",
         [](const combench::CommunityProfile& c) { return c.scaled_density; }},
        {"transitivity", [](const combench::CommunityProfile& c) { return c.transitivity; }},
        {"average_distance",
         [](const combench::CommunityProfile& c) {
           return c.distance_disconnected ? std::nan("") : c.average_distance;
         }},
        {"hub_dominance", [](const combench::CommunityProfile& c) { return c.hub_dominance; }},
    };
    for (const auto& [name, selector] : properties) {
      const combench::BinnedSeries series =
          combench::bin_by_size(profiles, selector, opt.bins_per_decade);
      const fs::path path = dir / ("curve_" + std::string(name) + ".csv");
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
      out << "bin_low,bin_high,mean,count\n";
      for (std::size_t i = 0; i < series.mean.size(); ++i) {
        if (series.count[i] == 0) continue;
        out << fmt(series.bin_low[i]) << ',' << fmt(series.bin_high[i]) << ','
            << fmt(series.mean[i]) << ',' << series.count[i] << '\n';
      }
      out.flush();
      if (!out.good()) throw std::runtime_error("write failed: " + path.string());
    }

    const std::vector<combench::NodeEmbeddedness> nodes = combench::embeddedness(g, p);
    std::vector<double> values;
    values.reserve(nodes.size());
    for (const combench::NodeEmbeddedness& node : nodes) values.push_back(node.value);
    const combench::Histogram histogram =
        combench::histogram_unit_interval(values, opt.embeddedness_bins);
    {
      const fs::path path = dir / "embeddedness.csv";
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
      out << "bin_low,bin_high,count\n";
      for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
        out << fmt(histogram.edges[i]) << ',' << fmt(histogram.edges[i + 1]) << ','
            << histogram.counts[i] << '\n';
      }
      out.flush();
      if (!out.good()) throw std::runtime_error("write failed: " + path.string());
    }

    const std::vector<combench::NodeId> sizes = combench::community_sizes(p);
    const std::vector<std::int64_t> size_samples(sizes.begin(), sizes.end());
    write_json_file(fit_json(combench::fit_power_law(size_samples, 100, opt.seed)),
                    dir / "size_fit.json");

    std::cout << "profiled " << p.community_count() << " communities into "
              << dir.string() << '\n';
  });
}

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

struct ExperimentOptions {
  std::string config_path;
  std::string output_dir;
  std::int64_t seed = -1;  // negative: keep the config's master seed
};

void add_experiment(CLI::App& app, ExperimentOptions& opt) {
  CLI::App* cmd = app.add_subcommand(
      "experiment", "Run the full generate/detect/evaluate grid from a JSON config");
  cmd->add_option("config", opt.config_path, "Experiment config file")->required();
  cmd->add_option("--output-dir", opt.output_dir,
                  "Overrides the config's output directory")
      ->envname("COMBENCH_OUTPUT_DIR");
  cmd->add_option("--seed", opt.seed, "Overrides the config's master seed");

  cmd->callback([&opt] {
    combench::ExperimentConfig cfg = combench::load_experiment_config(opt.config_path);
    if (!opt.output_dir.empty()) cfg.output_dir = opt.output_dir;
    if (opt.seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(opt.seed);
    const combench::EvaluationReport report = combench::run_experiment(cfg);

    int generated = 0;
    for (const combench::SampleInfo& info : report.samples) {
      if (info.generated) ++generated;
    }
    std::cout << generated << " samples generated, " << report.scores.size()
              << " detection cells scored, " << report.failures.size() << " failures\n";
    for (const combench::RankEntry& entry : report.ranking) {
      if (entry.measure != "nmi") continue;
      std::cout << "  " << entry.regime << " nmi  rank " << entry.rank << "  "
                << fmt(entry.mean_score) << "  " << entry.source
                << (entry.tied ? "  (tied)" : "") << '\n';
    }
    std::cout << "report written to " << (fs::path(cfg.output_dir) / "report").string() << '\n';
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"community detection benchmark toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  GenerateOptions generate_options;
  DetectOptions detect_options;
  EvaluateOptions evaluate_options;
  ProfileOptions profile_options;
  ExperimentOptions experiment_options;
  add_generate(app, generate_options);
  add_detect(app, detect_options);
  add_evaluate(app, evaluate_options);
  add_profile(app, profile_options);
  add_experiment(app, experiment_options);

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
  return 0;
}
