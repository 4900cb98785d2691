"""Seeded synthetic corpora with known ground-truth fork relations.

The generator grows linear commit chains repo by repo. A new repo either
starts fresh, forks an earlier repo on the forge (recorded in the forge
metadata AND sharing history), or clones an earlier repo out of band (sharing
history with no forge record). Each commit gets a unique root directory id
unless a content collision is injected, which copies the root id of a commit
in a historically unrelated repo; that models cross-VCS re-imports and
creates shared-root links without shared commits. Shared commits always
imply a shared root (the forked-at commit keeps its tree), so the three
relations nest: forge pairs share commits, and commit sharers share roots.

Everything is driven by one seed through a single PCG64 stream, so a config
reproduces its corpus bit for bit.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, asdict

import numpy as np

from .errors import SynthConfigError
from .forge import ForgeForkGraph
from .graph import ArtifactId, HistoryGraph, NodeKind, build

_PROB_FIELDS = ("forge_fork_prob", "clone_prob", "collision_prob")


@dataclass(frozen=True)
class SynthConfig:
    """Knobs for the generator; all randomness flows from `seed`.

    `mean_commits` sizes a fresh repo's chain, `mean_divergence` the commits
    a fork/clone adds past its fork point (both Poisson, floored at 1).
    """

    seed: int = 0
    repos: int = 25
    mean_commits: float = 8.0
    forge_fork_prob: float = 0.3
    clone_prob: float = 0.1
    mean_divergence: float = 3.0
    collision_prob: float = 0.05

    def __post_init__(self):
        if self.repos < 1:
            raise SynthConfigError("repos must be >= 1")
        if self.mean_commits < 1:
            raise SynthConfigError("mean_commits must be >= 1")
        if self.mean_divergence < 0:
            raise SynthConfigError("mean_divergence must be >= 0")
        for name in _PROB_FIELDS:
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise SynthConfigError(f"{name} must lie in [0, 1], got {p}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class GroundTruth:
    """Generator bookkeeping: the relations the algorithms must recover.

    Repos are numbered 0..repos-1 in creation order; `origin_ids[i]` is repo
    i's origin id in the emitted graph. `forge_pairs` are directed
    (parent, child); the shared-commit and shared-root pair sets hold
    unordered pairs as (i, j) with i < j.
    """

    labels: tuple[str, ...]
    origin_ids: tuple[ArtifactId, ...]
    forge_pairs: frozenset[tuple[int, int]]
    shared_commit_pairs: frozenset[tuple[int, int]]
    shared_root_pairs: frozenset[tuple[int, int]]
    commit_ids: tuple[frozenset[ArtifactId], ...]
    rootdir_ids: tuple[frozenset[ArtifactId], ...]

    def origin_nodes(self, g: HistoryGraph) -> list[int]:
        """Graph node index of each repo's origin, by repo number."""
        return [g.origin_index[aid] for aid in self.origin_ids]


def _rev_id(n: int) -> ArtifactId:
    return ArtifactId.revision(hashlib.sha1(f"rev:{n}".encode()).digest())


def _dir_id(n: int) -> ArtifactId:
    return ArtifactId.root_directory(hashlib.sha1(f"dir:{n}".encode()).digest())


def generate_synthetic(cfg: SynthConfig) -> tuple[HistoryGraph, ForgeForkGraph, GroundTruth]:
    """Generate (history graph, forge metadata, ground truth) from `cfg`."""
    rng = np.random.default_rng(cfg.seed)

    commit_parent: list[int | None] = []   # commit ordinal -> parent ordinal
    commit_dir: list[int] = []             # commit ordinal -> rootdir ordinal
    repo_chain: list[list[int]] = []       # repo -> ancestor chain, root..head
    repo_own: list[list[int]] = []         # repo -> commits it created itself
    forge_records: list[tuple[int, int]] = []  # (parent repo, child repo)

    def new_commit(parent: int | None) -> int:
        ordinal = len(commit_parent)
        commit_parent.append(parent)
        commit_dir.append(ordinal)  # unique tree until a collision rewrites it
        return ordinal

    def grow_chain(start: int | None, count: int) -> list[int]:
        out = []
        prev = start
        for _ in range(count):
            prev = new_commit(prev)
            out.append(prev)
        return out

    for i in range(cfg.repos):
        forked = i > 0 and rng.random() < cfg.forge_fork_prob
        cloned = (not forked) and i > 0 and rng.random() < cfg.clone_prob
        if forked or cloned:
            upstream = int(rng.integers(0, i))
            base = repo_chain[upstream]
            at = int(rng.integers(0, len(base)))
            divergence = max(1, int(rng.poisson(cfg.mean_divergence)))
            own = grow_chain(base[at], divergence)
            repo_chain.append(base[: at + 1] + own)
            repo_own.append(own)
            if forked:
                forge_records.append((upstream, i))
        else:
            own = grow_chain(None, max(1, int(rng.poisson(cfg.mean_commits))))
            repo_chain.append(own)
            repo_own.append(own)

    commit_sets = [frozenset(chain) for chain in repo_chain]
    shared_commit = _intersecting_pairs(commit_sets)

    # Content collisions: give one of a repo's own commits the root tree of a
    # commit in a repo it shares no history with.
    related: dict[int, set[int]] = {i: {i} for i in range(cfg.repos)}
    for i, j in shared_commit:
        related[i].add(j)
        related[j].add(i)
    for i in range(cfg.repos):
        if rng.random() >= cfg.collision_prob:
            continue
        strangers = [k for k in range(cfg.repos) if k not in related[i]]
        if not strangers:
            continue
        target_repo = strangers[int(rng.integers(0, len(strangers)))]
        victim = repo_own[i][int(rng.integers(0, len(repo_own[i])))]
        donor = repo_chain[target_repo][int(rng.integers(0, len(repo_chain[target_repo])))]
        commit_dir[victim] = commit_dir[donor]

    rootdir_sets = [
        frozenset(commit_dir[c] for c in chain) for chain in repo_chain
    ]
    shared_root = _intersecting_pairs(rootdir_sets)

    labels = tuple(f"https://synth.example/repo{i:05d}" for i in range(cfg.repos))
    origin_ids = tuple(
        ArtifactId.origin(hashlib.sha1(b"ori:" + label.encode()).digest()) for label in labels
    )
    rev_ids = [_rev_id(n) for n in range(len(commit_parent))]
    dir_ids = {d: _dir_id(d) for d in set(commit_dir)}

    nodes: list[tuple[ArtifactId, NodeKind]] = [(aid, NodeKind.ORIGIN) for aid in origin_ids]
    nodes += [(aid, NodeKind.REVISION) for aid in rev_ids]
    nodes += [(aid, NodeKind.ROOT_DIRECTORY) for aid in dir_ids.values()]
    edges: list[tuple[ArtifactId, ArtifactId]] = []
    for i in range(cfg.repos):
        edges.append((origin_ids[i], rev_ids[repo_chain[i][-1]]))
    for c, parent in enumerate(commit_parent):
        if parent is not None:
            edges.append((rev_ids[c], rev_ids[parent]))
        edges.append((rev_ids[c], dir_ids[commit_dir[c]]))
    g = build(nodes, edges)

    origin_node = {i: g.origin_index[origin_ids[i]] for i in range(cfg.repos)}
    forge = ForgeForkGraph.from_edges(
        g.n_origins, [(origin_node[child], origin_node[parent]) for parent, child in forge_records]
    )

    truth = GroundTruth(
        labels=labels,
        origin_ids=origin_ids,
        forge_pairs=frozenset(forge_records),
        shared_commit_pairs=shared_commit,
        shared_root_pairs=shared_root,
        commit_ids=tuple(frozenset(rev_ids[c] for c in s) for s in commit_sets),
        rootdir_ids=tuple(frozenset(dir_ids[d] for d in s) for s in rootdir_sets),
    )
    return g, forge, truth


def _intersecting_pairs(sets: list[frozenset[int]]) -> frozenset[tuple[int, int]]:
    pairs = set()
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if sets[i] & sets[j]:
                pairs.add((i, j))
    return frozenset(pairs)


def chain_history(n_commits: int, *, validate: bool = True) -> HistoryGraph:
    """Degenerate single-repo history: one chain of `n_commits` commits.

    Array-level construction (no per-node Python objects), intended for
    benchmarking traversal scaling on corpora up to tens of millions of
    commits. Node ids are 20-byte counters.
    """
    if n_commits < 1:
        raise ValueError("n_commits must be >= 1")
    c = n_commits
    n = 2 * c + 1
    kinds = np.empty(n, dtype=np.uint8)
    kinds[0] = NodeKind.ORIGIN
    kinds[1:c + 1] = NodeKind.REVISION
    kinds[c + 1:] = NodeKind.ROOT_DIRECTORY
    ids = np.zeros((n, 20), dtype=np.uint8)
    # Per-kind ascending counter ids keep the node table in sorted order.
    counters = np.concatenate([
        np.zeros(1, dtype=np.uint64),
        np.arange(c, dtype=np.uint64),
        np.arange(c, dtype=np.uint64),
    ])
    ids[:, 12:] = counters.astype(">u8").view(np.uint8).reshape(n, 8)

    revs = np.arange(1, c + 1, dtype=np.int64)
    src = np.concatenate([np.array([0], dtype=np.int64), revs[1:], revs])
    dst = np.concatenate([np.array([c], dtype=np.int64), revs[:-1], revs + c])
    return HistoryGraph(kinds, ids, src, dst, validate=validate, _presorted_nodes=True)
