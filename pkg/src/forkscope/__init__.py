"""forkscope: fork detection across version-control repositories.

Identifies forks by three definitions: forge metadata (type 1), shared
commits (type 2), and shared root source trees (type 3); computes fork
networks, fork cliques, and p-clique partitions over a deduplicated
development-history DAG; and derives the distribution statistics that
quantify how much the definitions diverge.
"""

from .cliques import (
    ForkClique,
    PCliquePartition,
    find_cliques,
    overlap_stats,
    pclique_partition,
    type3_cliques_bruteforce,
)
from .errors import (
    CliqueThresholdError,
    DatasetError,
    ForgeMetadataError,
    ForkscopeError,
    GraphBuildError,
    RepoIngestError,
    SynthConfigError,
)
from .forge import ForgeForkGraph
from .graph import ArtifactId, HistoryGraph, NodeKind, build
from .ingest import (
    ingest_local_repos,
    ingest_summary,
    load_edge_list,
    load_forge_forks,
    normalize_origin_url,
    origin_lookup,
    write_edge_list,
    write_forge_csv,
)
from .networks import Cluster, fork_count, fork_networks
from .relations import ForkType, is_fork
from .stats import (
    DeltaO,
    SizeDistribution,
    WeightedCCDF,
    component_contribution,
    delta_o,
    size_distribution,
    weighted_ccdf,
)
from .synth import GroundTruth, SynthConfig, chain_history, generate_synthetic

__version__ = "0.1.0"

__all__ = [
    "ArtifactId",
    "Cluster",
    "CliqueThresholdError",
    "DatasetError",
    "DeltaO",
    "ForgeForkGraph",
    "ForgeMetadataError",
    "ForkClique",
    "ForkType",
    "ForkscopeError",
    "GraphBuildError",
    "GroundTruth",
    "HistoryGraph",
    "NodeKind",
    "PCliquePartition",
    "RepoIngestError",
    "SizeDistribution",
    "SynthConfig",
    "SynthConfigError",
    "WeightedCCDF",
    "build",
    "chain_history",
    "component_contribution",
    "delta_o",
    "find_cliques",
    "fork_count",
    "fork_networks",
    "generate_synthetic",
    "ingest_local_repos",
    "ingest_summary",
    "is_fork",
    "load_edge_list",
    "load_forge_forks",
    "normalize_origin_url",
    "origin_lookup",
    "overlap_stats",
    "pclique_partition",
    "size_distribution",
    "type3_cliques_bruteforce",
    "weighted_ccdf",
    "write_edge_list",
    "write_forge_csv",
]
