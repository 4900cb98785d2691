"""Immutable, deduplicated in-memory model of multi-repository development history.

The graph holds three node kinds: origins (repositories), revisions (commits),
and root directories (full source trees). Edges always run origin -> revision
(heads), revision -> revision (parent), or revision -> root directory (exactly
one per revision). Nodes are content-addressed: two revisions with the same
identifier are the same commit no matter how many repositories contain it, so
merging many repositories into one graph deduplicates shared history for free.

Nodes are stored in dense index order, sorted by (kind, id). Because kinds
sort origins first, node index ``i`` is an origin iff ``i < n_origins``, which
the analysis modules rely on. Both the forward and the edge-reversed
(transposed) adjacency are materialized as CSR-style index arrays.

A built graph is never mutated and is safe for concurrent read-only traversal;
each traversal owns its private visited buffer.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import GraphBuildError

ID_WIDTHS = (20, 32)

Direction = Literal["forward", "transposed"]


class NodeKind(enum.IntEnum):
    """Node kinds, in node-index sort order."""

    ORIGIN = 0
    REVISION = 1
    ROOT_DIRECTORY = 2

    @property
    def token(self) -> str:
        return _KIND_TOKENS[self]

    @classmethod
    def from_token(cls, token: str) -> "NodeKind":
        try:
            return _TOKEN_KINDS[token]
        except KeyError:
            raise ValueError(f"unknown node kind token {token!r}") from None


_KIND_TOKENS = {
    NodeKind.ORIGIN: "ori",
    NodeKind.REVISION: "rev",
    NodeKind.ROOT_DIRECTORY: "dir",
}
_TOKEN_KINDS = {v: k for k, v in _KIND_TOKENS.items()}

# Permitted (source kind, destination kind) pairs.
_ALLOWED_EDGE_KINDS = {
    (NodeKind.ORIGIN, NodeKind.REVISION),
    (NodeKind.REVISION, NodeKind.REVISION),
    (NodeKind.REVISION, NodeKind.ROOT_DIRECTORY),
}


@dataclass(frozen=True, slots=True)
class ArtifactId:
    """Kind-qualified, fixed-width identifier of a graph node.

    Revision and root-directory ids are intrinsic (cryptographic hashes of
    content), origin ids are extrinsic (derived from the hosting URL). Both
    20-byte and 32-byte digests are accepted; ids only compare equal within
    the same kind and width.
    """

    kind: NodeKind
    value: bytes

    def __post_init__(self):
        if not isinstance(self.value, bytes):
            raise TypeError(f"id value must be bytes, got {type(self.value).__name__}")
        if len(self.value) not in ID_WIDTHS:
            raise ValueError(f"id width must be one of {ID_WIDTHS}, got {len(self.value)}")

    @classmethod
    def origin(cls, value: bytes) -> "ArtifactId":
        return cls(NodeKind.ORIGIN, value)

    @classmethod
    def revision(cls, value: bytes) -> "ArtifactId":
        return cls(NodeKind.REVISION, value)

    @classmethod
    def root_directory(cls, value: bytes) -> "ArtifactId":
        return cls(NodeKind.ROOT_DIRECTORY, value)

    @classmethod
    def from_hex(cls, kind: NodeKind, hex_id: str) -> "ArtifactId":
        return cls(kind, bytes.fromhex(hex_id))

    @property
    def hex(self) -> str:
        return self.value.hex()

    @property
    def sort_key(self) -> tuple[int, int, bytes]:
        return (int(self.kind), len(self.value), self.value)

    def __repr__(self) -> str:
        return f"ArtifactId({self.kind.token}:{self.hex})"


class HistoryGraph:
    """Deduplicated development-history DAG with forward and transposed adjacency.

    Use :func:`build` (or the loaders in :mod:`forkscope.ingest`) to construct
    one; the constructor itself is an internal array-level entry point.
    """

    def __init__(
        self,
        kinds: np.ndarray,
        ids: np.ndarray,
        src: np.ndarray,
        dst: np.ndarray,
        *,
        validate: bool = True,
        _presorted_nodes: bool = False,
    ):
        if not _presorted_nodes:
            raise GraphBuildError("construct graphs via forkscope.graph.build()")
        self._kinds = np.ascontiguousarray(kinds, dtype=np.uint8)
        self._ids = np.ascontiguousarray(ids, dtype=np.uint8)
        n = self._kinds.shape[0]
        if self._ids.shape[0] != n or self._ids.shape[1] not in ID_WIDTHS:
            raise GraphBuildError("id matrix does not match node table")
        # Kind blocks: origins, then revisions, then root directories.
        self._n_origins = int(np.searchsorted(self._kinds, NodeKind.REVISION))
        self._n_revisions = int(np.searchsorted(self._kinds, NodeKind.ROOT_DIRECTORY)) - self._n_origins
        self._n_rootdirs = n - self._n_origins - self._n_revisions

        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        if src.size and (src.min() < 0 or src.max() >= n or dst.min() < 0 or dst.max() >= n):
            raise GraphBuildError("edge references a node index out of range")
        src, dst = self._dedupe_edges(src, dst)
        if validate:
            self._validate_edges(src, dst)
        self._fwd_indptr, self._fwd_indices = _to_csr(n, src, dst)
        self._tr_indptr, self._tr_indices = _to_csr(n, dst, src)
        self._origin_index = {self.node_id(i): i for i in range(self._n_origins)}
        for arr in (self._kinds, self._ids, self._fwd_indptr, self._fwd_indices,
                    self._tr_indptr, self._tr_indices):
            arr.flags.writeable = False

    # -- validation ---------------------------------------------------------

    def _validate_edges(self, src: np.ndarray, dst: np.ndarray) -> None:
        n = self.n_nodes
        ks = self._kinds[src].astype(np.int16)
        kd = self._kinds[dst].astype(np.int16)
        pair = ks * 3 + kd
        allowed = np.array([a * 3 + b for a, b in _ALLOWED_EDGE_KINDS])
        bad = ~np.isin(pair, allowed)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise GraphBuildError(
                "edge kind violation: "
                f"{NodeKind(int(ks[i])).token} -> {NodeKind(int(kd[i])).token} "
                f"({self.node_id(int(src[i]))} -> {self.node_id(int(dst[i]))})"
            )
        if np.any(src == dst):
            i = int(np.flatnonzero(src == dst)[0])
            raise GraphBuildError(f"cycle detected among revisions: self-loop at {self.node_id(int(src[i]))}")

        o0, o1 = 0, self._n_origins
        r0, r1 = o1, o1 + self._n_revisions
        # Every revision points to exactly one root directory.
        to_dir = pair == NodeKind.REVISION * 3 + NodeKind.ROOT_DIRECTORY
        dir_count = np.bincount(src[to_dir], minlength=n)[r0:r1]
        if np.any(dir_count != 1):
            i = r0 + int(np.flatnonzero(dir_count != 1)[0])
            word = "no" if dir_count[i - r0] == 0 else "multiple"
            raise GraphBuildError(f"revision {self.node_id(i)} has {word} root directories")
        # Every origin points to at least one revision (empty origins are rejected upstream too).
        from_ori = pair == NodeKind.ORIGIN * 3 + NodeKind.REVISION
        head_count = np.bincount(src[from_ori], minlength=n)[o0:o1]
        if np.any(head_count == 0):
            i = int(np.flatnonzero(head_count == 0)[0])
            raise GraphBuildError(f"origin {self.node_id(i)} has no revisions")
        # Acyclicity of the revision subgraph: every strongly connected
        # component must be a single node (self-loops were rejected above).
        rev_edge = pair == NodeKind.REVISION * 3 + NodeKind.REVISION
        n_rev = self._n_revisions
        if n_rev and rev_edge.any():
            rs = (src[rev_edge] - r0).astype(np.int64)
            rd = (dst[rev_edge] - r0).astype(np.int64)
            sub = csr_matrix((np.ones(rs.size, dtype=np.int8), (rs, rd)), shape=(n_rev, n_rev))
            ncomp, _ = connected_components(sub, directed=True, connection="strong")
            if ncomp != n_rev:
                raise GraphBuildError("cycle detected among revisions")

    @staticmethod
    def _dedupe_edges(src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if not src.size:
            return src, dst
        # Encode each edge as one int64; node counts stay far below 2**31.
        n = int(max(src.max(), dst.max())) + 1
        key = np.unique(src * n + dst)
        return key // n, key % n

    # -- shape --------------------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return self._kinds.shape[0]

    @property
    def n_origins(self) -> int:
        return self._n_origins

    @property
    def n_revisions(self) -> int:
        return self._n_revisions

    @property
    def n_rootdirs(self) -> int:
        return self._n_rootdirs

    @property
    def n_edges(self) -> int:
        return int(self._fwd_indices.shape[0])

    @property
    def id_width(self) -> int:
        return int(self._ids.shape[1])

    @property
    def origin_index(self) -> dict[ArtifactId, int]:
        """Map from origin ArtifactId to node index."""
        return self._origin_index

    @property
    def kinds(self) -> np.ndarray:
        """Read-only per-node kind array (uint8 NodeKind values)."""
        return self._kinds

    def origins(self) -> range:
        return range(0, self._n_origins)

    def revisions(self) -> range:
        return range(self._n_origins, self._n_origins + self._n_revisions)

    def rootdirs(self) -> range:
        return range(self._n_origins + self._n_revisions, self.n_nodes)

    # -- node access --------------------------------------------------------

    def node_kind(self, i: int) -> NodeKind:
        return NodeKind(int(self._kinds[i]))

    def node_id(self, i: int) -> ArtifactId:
        return ArtifactId(self.node_kind(i), self._ids[i].tobytes())

    def id_bytes(self, i: int) -> bytes:
        return self._ids[i].tobytes()

    def find(self, aid: ArtifactId) -> int:
        """Node index of `aid`; raises KeyError if absent."""
        lo, hi = {
            NodeKind.ORIGIN: (0, self._n_origins),
            NodeKind.REVISION: (self._n_origins, self._n_origins + self._n_revisions),
            NodeKind.ROOT_DIRECTORY: (self._n_origins + self._n_revisions, self.n_nodes),
        }[aid.kind]
        if len(aid.value) == self.id_width:
            while lo < hi:
                mid = (lo + hi) // 2
                v = self._ids[mid].tobytes()
                if v < aid.value:
                    lo = mid + 1
                elif v > aid.value:
                    hi = mid
                else:
                    return mid
        raise KeyError(aid)

    # -- adjacency ----------------------------------------------------------

    def _adj(self, direction: Direction) -> tuple[np.ndarray, np.ndarray]:
        if direction == "forward":
            return self._fwd_indptr, self._fwd_indices
        if direction == "transposed":
            return self._tr_indptr, self._tr_indices
        raise ValueError(f"direction must be 'forward' or 'transposed', got {direction!r}")

    def neighbors(self, i: int, direction: Direction = "forward") -> np.ndarray:
        indptr, indices = self._adj(direction)
        return indices[indptr[i]:indptr[i + 1]]

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """All forward edges as parallel (src, dst) index arrays."""
        src = np.repeat(np.arange(self.n_nodes, dtype=np.int64), np.diff(self._fwd_indptr))
        return src, self._fwd_indices.astype(np.int64)

    def edges(self) -> Iterator[tuple[int, int]]:
        indptr = self._fwd_indptr
        indices = self._fwd_indices
        for v in range(self.n_nodes):
            for j in range(indptr[v], indptr[v + 1]):
                yield v, int(indices[j])

    def root_revisions(self) -> np.ndarray:
        """Revisions with no parent revision (out-degree 1: only the rootdir edge)."""
        r0 = self._n_origins
        r1 = r0 + self._n_revisions
        outdeg = np.diff(self._fwd_indptr)[r0:r1]
        return r0 + np.flatnonzero(outdeg == 1).astype(np.int64)

    # -- traversal ----------------------------------------------------------

    def traverse(
        self,
        start: int,
        direction: Direction = "forward",
        kinds: NodeKind | Iterable[NodeKind] | None = None,
    ) -> Iterator[int]:
        """Depth-first traversal from `start`, yielding each node index once.

        `kinds` filters which nodes are yielded; the walk itself passes
        through every kind regardless of the filter.
        """
        if not 0 <= start < self.n_nodes:
            raise IndexError(f"start index {start} out of range [0, {self.n_nodes})")
        indptr, indices = self._adj(direction)
        if kinds is None:
            keep = None
        elif isinstance(kinds, NodeKind):
            keep = frozenset((int(kinds),))
        else:
            keep = frozenset(int(k) for k in kinds)
        kind_of = self._kinds
        visited = bytearray(self.n_nodes)
        visited[start] = 1
        stack = [start]
        while stack:
            v = stack.pop()
            if keep is None or kind_of[v] in keep:
                yield v
            # Reversed push so lower-indexed neighbors are visited first.
            for w in indices[indptr[v]:indptr[v + 1]][::-1].tolist():
                if not visited[w]:
                    visited[w] = 1
                    stack.append(w)

    def reachable(
        self,
        start: int,
        direction: Direction = "forward",
        kinds: NodeKind | Iterable[NodeKind] | None = None,
    ) -> frozenset[int]:
        return frozenset(self.traverse(start, direction, kinds))


def _to_csr(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.lexsort((dst, src))
    src = src[order]
    dst = dst[order]
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, dst.astype(np.int32)


def build(
    nodes: Iterable[tuple[ArtifactId, NodeKind]],
    edges: Iterable[tuple[ArtifactId, ArtifactId]],
) -> HistoryGraph:
    """Build an immutable history graph from declared nodes and edges.

    Duplicate node declarations and duplicate edges collapse (the inputs are
    content-addressed), so the output depends only on the input sets: the
    same multiset of nodes and edges in any order produces an identical
    graph. Violations of the edge-kind constraints, dangling references,
    revisions without exactly one root directory, origins without revisions,
    and revision cycles all raise :class:`GraphBuildError`.
    """
    declared: dict[ArtifactId, None] = {}
    width: int | None = None
    for aid, kind in nodes:
        if aid.kind != kind:
            raise GraphBuildError(f"declared kind {kind.token} does not match id {aid!r}")
        if width is None:
            width = len(aid.value)
        elif len(aid.value) != width:
            raise GraphBuildError(
                f"mixed id widths: graph uses {width}-byte ids but {aid!r} has {len(aid.value)}"
            )
        declared[aid] = None
    ordered = sorted(declared, key=lambda a: a.sort_key)
    index = {aid: i for i, aid in enumerate(ordered)}

    src: list[int] = []
    dst: list[int] = []
    for a, b in edges:
        try:
            src.append(index[a])
        except KeyError:
            raise GraphBuildError(f"edge references undeclared node {a!r}") from None
        try:
            dst.append(index[b])
        except KeyError:
            raise GraphBuildError(f"edge references undeclared node {b!r}") from None

    n = len(ordered)
    w = width if width is not None else ID_WIDTHS[0]
    kinds = np.fromiter((int(a.kind) for a in ordered), dtype=np.uint8, count=n)
    ids = np.frombuffer(b"".join(a.value for a in ordered), dtype=np.uint8).reshape(n, w) \
        if n else np.empty((0, w), dtype=np.uint8)
    return HistoryGraph(
        kinds,
        ids,
        np.asarray(src, dtype=np.int64),
        np.asarray(dst, dtype=np.int64),
        _presorted_nodes=True,
    )
