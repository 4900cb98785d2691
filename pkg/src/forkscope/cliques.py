"""Fork cliques and the p-clique partition.

Every parentless ("root") commit generates a clique: the set of all origins
whose histories contain it, found with one traversal of the transposed graph
per root. Ancestry is transitive, so iterating over roots instead of over
repositories finds every distinct clique while visiting each commit a small
number of times; on chain-shaped history the whole enumeration costs about
one DFS of the revision graph. Duplicate cliques (several roots generating
the same origin set) collapse via a digest of the sorted member ids.

Cliques overlap, so they are not a partition. The p-clique partition fixes
that by assigning every origin to the largest clique containing it (ties by
fingerprint), dropping cliques left empty.

The same per-generator enumeration for shared-root-tree cliques would have to
walk from every root directory, which degenerates toward quadratic cost on
real corpora; a brute-force version is provided for small instances only.
"""

from __future__ import annotations

import csv
import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CliqueThresholdError, ForkscopeError
from .graph import ArtifactId, HistoryGraph


@dataclass(frozen=True)
class ForkClique:
    """A set of origins all pairwise sharing history, plus its generating node.

    `witness` is the id of one generator: a parentless revision for shared
    commit cliques, a root directory for the brute-force shared-root variant.
    The fingerprint is a pure function of the member set.
    """

    members: tuple[int, ...]
    fingerprint: str
    witness: ArtifactId

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class PCliquePartition:
    """Disjoint origin groups, each carved from (at most) one clique.

    `provenance[i]` is the fingerprint of the clique group `i` was carved
    from, or None for origins that appeared in no input clique.
    """

    groups: tuple[tuple[int, ...], ...]
    provenance: tuple[str | None, ...]

    def __len__(self) -> int:
        return len(self.groups)


def fingerprint_members(member_ids: Iterable[bytes]) -> str:
    """Order-independent digest of a set of origin ids."""
    return hashlib.sha256(b"".join(sorted(member_ids))).hexdigest()


def _origin_leaves(g: HistoryGraph, start: int) -> list[int]:
    """Origins reachable from `start` in the transposed graph (tight loop)."""
    indptr = memoryview(g._tr_indptr)
    indices = memoryview(g._tr_indices)
    n_ori = g.n_origins
    visited = bytearray(g.n_nodes)
    visited[start] = 1
    stack = [start]
    push = stack.append
    pop = stack.pop
    origins: list[int] = []
    while stack:
        v = pop()
        if v < n_ori:
            origins.append(v)
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if not visited[w]:
                visited[w] = 1
                push(w)
    origins.sort()
    return origins


def _clique_of(g: HistoryGraph, generator: int) -> tuple[int, tuple[int, ...], str]:
    members = tuple(_origin_leaves(g, generator))
    fp = fingerprint_members(g.id_bytes(m) for m in members)
    return generator, members, fp


def _dedupe(
    g: HistoryGraph, raw: Iterable[tuple[int, tuple[int, ...], str]]
) -> list[ForkClique]:
    by_fp: dict[str, tuple[tuple[int, ...], int]] = {}
    for generator, members, fp in raw:
        prior = by_fp.get(fp)
        if prior is None:
            by_fp[fp] = (members, generator)
        elif prior[0] != members:
            raise ForkscopeError(
                f"fingerprint collision: {fp} covers two distinct member sets"
            )
    out = [
        ForkClique(members, fp, g.node_id(generator))
        for fp, (members, generator) in by_fp.items()
    ]
    out.sort(key=lambda c: (-c.size, c.fingerprint))
    return out


def find_cliques(g: HistoryGraph, threads: int = 1) -> list[ForkClique]:
    """All distinct shared-commit fork cliques of `g`, singletons included.

    One transposed traversal per parentless revision; traversals are
    independent and may run on several threads, with results merged in a
    deterministic order regardless of scheduling. Output is sorted by size
    descending, then fingerprint.
    """
    roots = g.root_revisions().tolist()
    if threads > 1 and len(roots) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda r: _clique_of(g, r), roots, chunksize=16))
        results.sort(key=lambda t: t[0])
    else:
        results = [_clique_of(g, r) for r in roots]
    return _dedupe(g, results)


def type3_cliques_bruteforce(g: HistoryGraph, max_origins: int = 500) -> list[ForkClique]:
    """Shared-root-tree cliques by walking from every root directory.

    Small-instance oracle only: cost grows with origins x rootdirs, so the
    call refuses graphs with more than `max_origins` origins.
    """
    if g.n_origins > max_origins:
        raise CliqueThresholdError(
            f"refusing type-3 clique enumeration on {g.n_origins} origins "
            f"(> {max_origins}): per-rootdir traversal cost is quadratic at scale"
        )
    return _dedupe(g, (_clique_of(g, d) for d in g.rootdirs()))


def pclique_partition(
    cliques: Sequence[ForkClique], all_origins: Iterable[int]
) -> PCliquePartition:
    """Partition origins by keeping each one only in its largest clique.

    Cliques are processed largest first (ties by ascending fingerprint); an
    origin already claimed by an earlier clique is removed from later ones,
    and cliques left empty disappear. Origins outside every clique become
    singleton groups with no provenance.
    """
    universe = set(all_origins)
    ordered = sorted(cliques, key=lambda c: (-c.size, c.fingerprint))
    assigned: set[int] = set()
    groups: list[tuple[int, ...]] = []
    provenance: list[str | None] = []
    for c in ordered:
        universe.update(c.members)
        residue = tuple(m for m in c.members if m not in assigned)
        if residue:
            groups.append(residue)
            provenance.append(c.fingerprint)
            assigned.update(residue)
    for origin in sorted(universe - assigned):
        groups.append((origin,))
        provenance.append(None)
    return PCliquePartition(tuple(groups), tuple(provenance))


def overlap_stats(cliques: Sequence[ForkClique]) -> tuple[int, int, float]:
    """(origins in exactly one clique, origins in two or more, mean cliques per origin)."""
    membership: dict[int, int] = {}
    for c in cliques:
        for m in c.members:
            membership[m] = membership.get(m, 0) + 1
    if not membership:
        return 0, 0, 0.0
    single = sum(1 for n in membership.values() if n == 1)
    multi = len(membership) - single
    mean = sum(membership.values()) / len(membership)
    return single, multi, mean


def write_cliques_csv(path, cliques: Iterable[ForkClique], g: HistoryGraph) -> None:
    """Rows "clique_fingerprint,size,origin_id", one per member."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["clique_fingerprint", "size", "origin_id"])
        for c in cliques:
            for m in c.members:
                w.writerow([c.fingerprint, c.size, g.node_id(m).hex])


def write_pcliques_csv(path, partition: PCliquePartition, g: HistoryGraph) -> None:
    """Rows "group_id,size,origin_id" with dense group ids in partition order."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["group_id", "size", "origin_id"])
        for gid, members in enumerate(partition.groups):
            for m in members:
                w.writerow([gid, len(members), g.node_id(m).hex])
