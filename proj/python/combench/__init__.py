"""Community detection benchmarking toolkit.

Thin wrapper around the compiled extension: synthetic benchmark graphs with
planted communities, five detection algorithms, partition-comparison scores,
community topology profiles, and the config-driven experiment harness.
"""

from combench._core import (
    AlgorithmEntry,
    BinnedSeries,
    CommunityProfile,
    Dendrogram,
    DetectionConfig,
    DetectionResult,
    EvaluationReport,
    ExperimentConfig,
    ExternalPartitionEntry,
    FailureRecord,
    GenerationError,
    GeneratorStats,
    Graph,
    Histogram,
    LfrParams,
    LfrResult,
    MergeEvent,
    MixingMode,
    NodeEmbeddedness,
    Partition,
    PowerLawFit,
    RankEntry,
    RankedScore,
    RegimeConfig,
    SampleInfo,
    SampleProfile,
    ScoreRow,
    __version__,
    adjusted_rand_index,
    bin_by_size,
    build_graph,
    community_sizes,
    connected_components,
    embeddedness,
    emit_tables,
    fcc,
    fit_power_law,
    generate_lfr,
    histogram_unit_interval,
    load_external_partition,
    load_experiment_config,
    modularity,
    nmi,
    node_mixing,
    parse_experiment_config,
    partition_at_prefix,
    profile_communities,
    rand_index,
    rank_algorithms,
    read_edge_list,
    read_membership,
    run_algorithm,
    run_experiment,
    sample_seed,
    scaled_density,
    write_edge_list,
    write_membership,
)

__all__ = [
    "AlgorithmEntry",
    "BinnedSeries",
    "CommunityProfile",
    "Dendrogram",
    "DetectionConfig",
    "DetectionResult",
    "EvaluationReport",
    "ExperimentConfig",
    "ExternalPartitionEntry",
    "FailureRecord",
    "GenerationError",
    "GeneratorStats",
    "Graph",
    "Histogram",
    "LfrParams",
    "LfrResult",
    "MergeEvent",
    "MixingMode",
    "NodeEmbeddedness",
    "Partition",
    "PowerLawFit",
    "RankEntry",
    "RankedScore",
    "RegimeConfig",
    "SampleInfo",
    "SampleProfile",
    "ScoreRow",
    "__version__",
    "adjusted_rand_index",
    "bin_by_size",
    "build_graph",
    "community_sizes",
    "connected_components",
    "embeddedness",
    "emit_tables",
    "fcc",
    "fit_power_law",
    "generate_lfr",
    "histogram_unit_interval",
    "load_external_partition",
    "load_experiment_config",
    "modularity",
    "nmi",
    "node_mixing",
    "parse_experiment_config",
    "partition_at_prefix",
    "profile_communities",
    "rand_index",
    "rank_algorithms",
    "read_edge_list",
    "read_membership",
    "run_algorithm",
    "run_experiment",
    "sample_seed",
    "scaled_density",
    "write_edge_list",
    "write_membership",
]
