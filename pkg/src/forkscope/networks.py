"""Fork networks: connected components of the symmetric closure of a fork relation.

A fork network is computed as a connected component of the undirected view of
the relevant subgraph: the forge forest for type 1, origins plus revisions
for type 2, and the full origin/revision/rootdir graph for type 3. Components
are reported as their origin members only; every origin lands in exactly one
cluster, so each run yields a partition of all origins.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .forge import ForgeForkGraph
from .graph import HistoryGraph, NodeKind
from .relations import ForkType


@dataclass(frozen=True)
class Cluster:
    """One fork network: a set of origins, with a dense per-run id."""

    fork_type: ForkType
    cluster_id: int
    members: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


def _component_labels(n: int, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    if n == 0:
        return np.empty(0, dtype=np.int64)
    m = csr_matrix(
        (np.ones(src.shape[0], dtype=np.int8), (src, dst)), shape=(n, n)
    )
    _, labels = connected_components(m, directed=False)
    return labels


def _clusters_from_labels(
    fork_type: ForkType, labels: np.ndarray, origin_count: int
) -> list[Cluster]:
    groups: dict[int, list[int]] = {}
    for i in range(origin_count):
        groups.setdefault(int(labels[i]), []).append(i)
    ordered = sorted(groups.values(), key=lambda m: (-len(m), m[0]))
    return [
        Cluster(fork_type, cid, tuple(members))
        for cid, members in enumerate(ordered)
    ]


def fork_networks(
    fork_type: ForkType,
    g: HistoryGraph,
    forge: ForgeForkGraph | None = None,
) -> list[Cluster]:
    """Partition all origins of `g` into fork networks of the given type.

    Clusters come back sorted by size descending, ties broken by smallest
    member index, with dense cluster ids in that order.
    """
    if fork_type == ForkType.FORGE:
        if forge is None:
            raise ValueError("type 1 networks require forge metadata")
        pairs = list(forge.edges())
        src = np.array([c for c, _ in pairs], dtype=np.int64)
        dst = np.array([p for _, p in pairs], dtype=np.int64)
        labels = _component_labels(g.n_origins, src, dst)
        return _clusters_from_labels(fork_type, labels, g.n_origins)

    src, dst = g.edge_arrays()
    if fork_type == ForkType.SHARED_COMMIT:
        # Drop revision->rootdir edges; rootdirs then sit in their own components.
        keep = g.kinds[dst] != NodeKind.ROOT_DIRECTORY
        src, dst = src[keep], dst[keep]
    labels = _component_labels(g.n_nodes, src, dst)
    return _clusters_from_labels(fork_type, labels, g.n_origins)


def fork_count(clusters: Sequence[Cluster]) -> tuple[int, int, int]:
    """(origins in non-singleton clusters, number of clusters, number of singletons).

    The clusters must be pairwise disjoint and nonempty.
    """
    seen: set[int] = set()
    total = 0
    for c in clusters:
        members = _members(c)
        if not members:
            raise ValueError("empty cluster in partition")
        total += len(members)
        seen.update(members)
    if len(seen) != total:
        raise ValueError("clusters overlap: input is not a partition")
    forks = sum(len(_members(c)) for c in clusters if len(_members(c)) >= 2)
    isolated = sum(1 for c in clusters if len(_members(c)) == 1)
    return forks, len(clusters), isolated


def _members(cluster) -> tuple[int, ...]:
    return tuple(getattr(cluster, "members", cluster))


def write_clusters_csv(path, clusters: Iterable[Cluster], g: HistoryGraph) -> None:
    """Rows "cluster_id,size,origin_id", one per member, in cluster order."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["cluster_id", "size", "origin_id"])
        for c in clusters:
            for m in c.members:
                w.writerow([c.cluster_id, c.size, g.node_id(m).hex])
