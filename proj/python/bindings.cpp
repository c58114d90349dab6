// Python bindings for the combench core library.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "combench/detection.hpp"
#include "combench/experiment.hpp"
#include "combench/generator.hpp"
#include "combench/graph.hpp"
#include "combench/io.hpp"
#include "combench/measures.hpp"
#include "combench/partition.hpp"
#include "combench/powerlaw.hpp"
#include "combench/topology.hpp"

namespace py = pybind11;
using namespace combench;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Community detection benchmarking toolkit";
  m.attr("__version__") = "0.1.0";

  // --- graphs ---
  py::class_<Graph>(m, "Graph")
      .def(py::init<>())
      .def("node_count", &Graph::node_count)
      .def("edge_count", &Graph::edge_count)
      .def("degree", &Graph::degree, py::arg("v"))
      .def(
          "neighbors",
          [](const Graph& g, NodeId v) {
            const auto span = g.neighbors(v);
            return std::vector<NodeId>(span.begin(), span.end());
          },
          py::arg("v"))
      .def("has_edge", &Graph::has_edge, py::arg("a"), py::arg("b"))
      .def("edges", &Graph::edges);
  m.def("build_graph", &build_graph, py::arg("edges"), py::arg("n"));
  m.def("connected_components", &connected_components, py::arg("graph"));
  m.def("read_edge_list", &read_edge_list, py::arg("path"), py::arg("n") = -1);
  m.def("write_edge_list", &write_edge_list, py::arg("graph"), py::arg("path"));

  // --- partitions ---
  py::class_<Partition>(m, "Partition")
      .def(py::init<>())
      .def_static("from_labels", &Partition::from_labels, py::arg("labels"))
      .def_static("from_dense", &Partition::from_dense, py::arg("membership"),
                  py::arg("community_count"))
      .def_static("singletons", &Partition::singletons, py::arg("n"))
      .def_static("single_community", &Partition::single_community, py::arg("n"))
      .def("node_count", &Partition::node_count)
      .def("community_count", &Partition::community_count)
      .def("__getitem__", [](const Partition& p, NodeId v) { return p[v]; })
      .def("membership", &Partition::membership)
      .def("sizes", &Partition::sizes)
      .def("communities", &Partition::communities)
      .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; });
  m.def("read_membership", &read_membership, py::arg("path"), py::arg("expected_n") = -1);
  m.def("write_membership", &write_membership, py::arg("partition"), py::arg("path"));

  // --- comparison measures ---
  m.def("rand_index", &rand_index, py::arg("reference"), py::arg("estimated"));
  m.def("adjusted_rand_index", &adjusted_rand_index, py::arg("reference"), py::arg("estimated"));
  m.def("nmi", &nmi, py::arg("reference"), py::arg("estimated"));
  m.def("fcc", &fcc, py::arg("reference"), py::arg("estimated"));
  m.def("modularity",
        py::overload_cast<const Graph&, const Partition&>(&modularity),
        py::arg("graph"), py::arg("partition"));

  // --- detection ---
  py::class_<DetectionConfig>(m, "DetectionConfig")
      .def(py::init<>())
      .def_readwrite("algorithm", &DetectionConfig::algorithm)
      .def_readwrite("seed", &DetectionConfig::seed)
      .def_readwrite("walktrap_steps", &DetectionConfig::walktrap_steps)
      .def_readwrite("lpa_max_sweeps", &DetectionConfig::lpa_max_sweeps)
      .def_readwrite("mcl_expansion", &DetectionConfig::mcl_expansion)
      .def_readwrite("mcl_inflation", &DetectionConfig::mcl_inflation)
      .def_readwrite("mcl_prune_threshold", &DetectionConfig::mcl_prune_threshold)
      .def_readwrite("mcl_max_iterations", &DetectionConfig::mcl_max_iterations)
      .def("validate", &DetectionConfig::validate);
  py::class_<MergeEvent>(m, "MergeEvent")
      .def_readonly("a", &MergeEvent::a)
      .def_readonly("b", &MergeEvent::b)
      .def_readonly("modularity_after", &MergeEvent::modularity_after);
  py::class_<Dendrogram>(m, "Dendrogram")
      .def_readonly("leaf_count", &Dendrogram::leaf_count)
      .def_readonly("merges", &Dendrogram::merges);
  py::class_<DetectionResult>(m, "DetectionResult")
      .def_readonly("partition", &DetectionResult::partition)
      .def_readonly("modularity", &DetectionResult::modularity)
      .def_readonly("iterations", &DetectionResult::iterations)
      .def_readonly("converged", &DetectionResult::converged)
      .def_readonly("dendrogram", &DetectionResult::dendrogram);
  m.def("partition_at_prefix", &partition_at_prefix, py::arg("dendrogram"), py::arg("prefix"));
  m.def("run_algorithm", &run_algorithm, py::arg("graph"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("load_external_partition", &load_external_partition, py::arg("path"),
        py::arg("expected_n"));

  // --- generator ---
  py::enum_<MixingMode>(m, "MixingMode")
      .value("CONSTANT", MixingMode::kConstant)
      .value("BIMODAL", MixingMode::kBimodal);
  py::class_<LfrParams>(m, "LfrParams")
      .def(py::init<>())
      .def_readwrite("node_count", &LfrParams::node_count)
      .def_readwrite("average_degree", &LfrParams::average_degree)
      .def_readwrite("max_degree", &LfrParams::max_degree)
      .def_readwrite("degree_exponent", &LfrParams::degree_exponent)
      .def_readwrite("community_exponent", &LfrParams::community_exponent)
      .def_readwrite("min_community", &LfrParams::min_community)
      .def_readwrite("max_community", &LfrParams::max_community)
      .def_readwrite("mixing", &LfrParams::mixing)
      .def_readwrite("mixing_mode", &LfrParams::mixing_mode)
      .def_readwrite("bimodal_high_mean", &LfrParams::bimodal_high_mean)
      .def_readwrite("bimodal_high_sd", &LfrParams::bimodal_high_sd)
      .def("resolved_max_community", &LfrParams::resolved_max_community)
      .def("validate", &LfrParams::validate);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
  py::class_<GeneratorStats>(m, "GeneratorStats")
      .def_readonly("attempts", &GeneratorStats::attempts)
      .def_readonly("rewire_attempted", &GeneratorStats::rewire_attempted)
      .def_readonly("rewire_accepted", &GeneratorStats::rewire_accepted)
      .def_readonly("initial_deviation", &GeneratorStats::initial_deviation)
      .def_readonly("final_deviation", &GeneratorStats::final_deviation);
  py::class_<LfrResult>(m, "LfrResult")
      .def_readonly("graph", &LfrResult::graph)
      .def_readonly("partition", &LfrResult::partition)
      .def_readonly("target_mixing", &LfrResult::target_mixing)
      .def_readonly("internal_targets", &LfrResult::internal_targets)
      .def_readonly("stats", &LfrResult::stats);
  m.def("generate_lfr", &generate_lfr, py::arg("params"), py::arg("seed"),
        py::call_guard<py::gil_scoped_release>());
  m.def("node_mixing", &node_mixing, py::arg("graph"), py::arg("partition"));

  // --- community topology ---
  py::class_<NodeEmbeddedness>(m, "NodeEmbeddedness")
      .def_readonly("node", &NodeEmbeddedness::node)
      .def_readonly("internal_degree", &NodeEmbeddedness::internal_degree)
      .def_readonly("total_degree", &NodeEmbeddedness::total_degree)
      .def_readonly("value", &NodeEmbeddedness::value);
  py::class_<CommunityProfile>(m, "CommunityProfile")
      .def_readonly("community", &CommunityProfile::community)
      .def_readonly("size", &CommunityProfile::size)
      .def_readonly("internal_edges", &CommunityProfile::internal_edges)
      .def_readonly("scaled_density", &CommunityProfile::scaled_density)
      .def_readonly("transitivity", &CommunityProfile::transitivity)
      .def_readonly("average_distance", &CommunityProfile::average_distance)
      .def_readonly("distance_disconnected", &CommunityProfile::distance_disconnected)
      .def_readonly("hub_dominance", &CommunityProfile::hub_dominance);
  py::class_<BinnedSeries>(m, "BinnedSeries")
      .def_readonly("bin_low", &BinnedSeries::bin_low)
      .def_readonly("bin_high", &BinnedSeries::bin_high)
      .def_readonly("mean", &BinnedSeries::mean)
      .def_readonly("count", &BinnedSeries::count);
  py::class_<Histogram>(m, "Histogram")
      .def_readonly("edges", &Histogram::edges)
      .def_readonly("counts", &Histogram::counts);
  m.def("embeddedness", &embeddedness, py::arg("graph"), py::arg("partition"));
  m.def("community_sizes", &community_sizes, py::arg("partition"));
  m.def("scaled_density", &scaled_density, py::arg("size"), py::arg("internal_edges"));
  m.def("profile_communities", &profile_communities, py::arg("graph"), py::arg("partition"));
  m.def("bin_by_size", &bin_by_size, py::arg("profiles"), py::arg("selector"),
        py::arg("bins_per_decade") = 5);
  m.def("histogram_unit_interval", &histogram_unit_interval, py::arg("values"),
        py::arg("bins"));

  // --- power-law fitting ---
  py::class_<PowerLawFit>(m, "PowerLawFit")
      .def_readonly("exponent", &PowerLawFit::exponent)
      .def_readonly("xmin", &PowerLawFit::xmin)
      .def_readonly("ks_distance", &PowerLawFit::ks_distance)
      .def_readonly("p_value", &PowerLawFit::p_value)
      .def_readonly("tail_count", &PowerLawFit::tail_count)
      .def_readonly("sample_count", &PowerLawFit::sample_count)
      .def_readonly("reliable", &PowerLawFit::reliable)
      .def_readonly("degenerate", &PowerLawFit::degenerate);
  m.def("fit_power_law", &fit_power_law, py::arg("samples"),
        py::arg("bootstrap_replicates") = 100, py::arg("seed") = 1,
        py::call_guard<py::gil_scoped_release>());

  // --- experiment harness ---
  py::class_<RegimeConfig>(m, "RegimeConfig")
      .def(py::init<>())
      .def_readwrite("name", &RegimeConfig::name)
      .def_readwrite("params", &RegimeConfig::params);
  py::class_<AlgorithmEntry>(m, "AlgorithmEntry")
      .def(py::init<>())
      .def_readwrite("name", &AlgorithmEntry::name)
      .def_readwrite("config", &AlgorithmEntry::config);
  py::class_<ExternalPartitionEntry>(m, "ExternalPartitionEntry")
      .def(py::init<>())
      .def_readwrite("name", &ExternalPartitionEntry::name)
      .def_readwrite("path_pattern", &ExternalPartitionEntry::path_pattern);
  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("regimes", &ExperimentConfig::regimes)
      .def_readwrite("sample_count", &ExperimentConfig::sample_count)
      .def_readwrite("algorithms", &ExperimentConfig::algorithms)
      .def_readwrite("external_partitions", &ExperimentConfig::external_partitions)
      .def_readwrite("output_dir", &ExperimentConfig::output_dir)
      .def_readwrite("master_seed", &ExperimentConfig::master_seed)
      .def("validate", &ExperimentConfig::validate);
  m.def("parse_experiment_config", &parse_experiment_config, py::arg("json_text"));
  m.def("load_experiment_config", &load_experiment_config, py::arg("path"));
  m.def("sample_seed", &sample_seed, py::arg("master_seed"), py::arg("regime_index"),
        py::arg("sample_index"));

  py::class_<ScoreRow>(m, "ScoreRow")
      .def_readonly("regime", &ScoreRow::regime)
      .def_readonly("sample", &ScoreRow::sample)
      .def_readonly("source", &ScoreRow::source)
      .def_readonly("fcc", &ScoreRow::fcc)
      .def_readonly("ri", &ScoreRow::ri)
      .def_readonly("ari", &ScoreRow::ari)
      .def_readonly("nmi", &ScoreRow::nmi);
  py::class_<SampleProfile>(m, "SampleProfile")
      .def_readonly("regime", &SampleProfile::regime)
      .def_readonly("sample", &SampleProfile::sample)
      .def_readonly("source", &SampleProfile::source)
      .def_readonly("community_count", &SampleProfile::community_count)
      .def_readonly("largest_community", &SampleProfile::largest_community)
      .def_readonly("modularity", &SampleProfile::modularity)
      .def_readonly("embeddedness_one_fraction", &SampleProfile::embeddedness_one_fraction)
      .def_readonly("size", &SampleProfile::size)
      .def_readonly("scaled_density", &SampleProfile::scaled_density)
      .def_readonly("transitivity", &SampleProfile::transitivity)
      .def_readonly("average_distance", &SampleProfile::average_distance)
      .def_readonly("hub_dominance", &SampleProfile::hub_dominance)
      .def_readonly("embeddedness", &SampleProfile::embeddedness)
      .def_readonly("size_fit", &SampleProfile::size_fit);
  py::class_<RankEntry>(m, "RankEntry")
      .def_readonly("regime", &RankEntry::regime)
      .def_readonly("measure", &RankEntry::measure)
      .def_readonly("source", &RankEntry::source)
      .def_readonly("mean_score", &RankEntry::mean_score)
      .def_readonly("rank", &RankEntry::rank)
      .def_readonly("tied", &RankEntry::tied);
  py::class_<FailureRecord>(m, "FailureRecord")
      .def_readonly("regime", &FailureRecord::regime)
      .def_readonly("sample", &FailureRecord::sample)
      .def_readonly("source", &FailureRecord::source)
      .def_readonly("stage", &FailureRecord::stage)
      .def_readonly("message", &FailureRecord::message);
  py::class_<SampleInfo>(m, "SampleInfo")
      .def_readonly("regime", &SampleInfo::regime)
      .def_readonly("sample", &SampleInfo::sample)
      .def_readonly("seed", &SampleInfo::seed)
      .def_readonly("generated", &SampleInfo::generated)
      .def_readonly("node_count", &SampleInfo::node_count)
      .def_readonly("edge_count", &SampleInfo::edge_count)
      .def_readonly("mean_degree", &SampleInfo::mean_degree)
      .def_readonly("target_mixing_mean", &SampleInfo::target_mixing_mean)
      .def_readonly("achieved_mixing_mean", &SampleInfo::achieved_mixing_mean)
      .def_readonly("reference_communities", &SampleInfo::reference_communities);
  py::class_<EvaluationReport>(m, "EvaluationReport")
      .def_readonly("samples", &EvaluationReport::samples)
      .def_readonly("scores", &EvaluationReport::scores)
      .def_readonly("ranking", &EvaluationReport::ranking)
      .def_readonly("profiles", &EvaluationReport::profiles)
      .def_readonly("failures", &EvaluationReport::failures);
  py::class_<RankedScore>(m, "RankedScore")
      .def_readonly("source", &RankedScore::source)
      .def_readonly("score", &RankedScore::score)
      .def_readonly("rank", &RankedScore::rank)
      .def_readonly("tied", &RankedScore::tied);
  m.def("rank_algorithms", &rank_algorithms, py::arg("scores"));
  m.def("run_experiment", &run_experiment, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("emit_tables", &emit_tables, py::arg("report"), py::arg("dir"));
}
