"""Loaders: edge-list files, forge fork CSVs, and local git repositories.

File formats
------------
Nodes file: one ``<kind> <hex id>`` per line, kind in {ori, rev, dir}, all
ids lowercase hex of a single width (40 or 64 digits). Edges file: one
``<hex src> <hex dst>`` per line referencing declared nodes. Forge CSV:
header ``child,parent``, RFC-4180 quoting, cells holding either origin hex
ids or repository URLs. All files are UTF-8 with LF line endings.
"""

from __future__ import annotations

import csv
import hashlib
import logging
import subprocess
from pathlib import Path
from typing import Iterable, Mapping

from .errors import DatasetError, RepoIngestError
from .forge import ForgeForkGraph
from .graph import ArtifactId, HistoryGraph, NodeKind, build

log = logging.getLogger("forkscope.ingest")


# -- edge-list datasets ------------------------------------------------------

def load_edge_list(nodes_path, edges_path) -> HistoryGraph:
    """Load a history graph from a nodes file and an edges file.

    Malformed lines (bad kind token, bad hex, width mismatch, duplicate ids)
    raise :class:`DatasetError` naming the file and line; structural problems
    surface as :class:`~forkscope.errors.GraphBuildError` from the builder.
    """
    by_hex: dict[str, ArtifactId] = {}
    nodes: list[tuple[ArtifactId, NodeKind]] = []
    width: int | None = None
    with open(nodes_path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise DatasetError(nodes_path, lineno, f"expected '<kind> <hex id>', got {line!r}")
            token, hex_id = parts
            try:
                kind = NodeKind.from_token(token)
            except ValueError as e:
                raise DatasetError(nodes_path, lineno, str(e)) from None
            try:
                value = bytes.fromhex(hex_id)
            except ValueError:
                raise DatasetError(nodes_path, lineno, f"invalid hex id {hex_id!r}") from None
            if width is None:
                width = len(value)
            if len(value) != width:
                raise DatasetError(
                    nodes_path, lineno,
                    f"id width {len(value)} does not match dataset width {width}",
                )
            if hex_id.lower() in by_hex:
                raise DatasetError(nodes_path, lineno, f"duplicate node {hex_id}")
            try:
                aid = ArtifactId(kind, value)
            except ValueError as e:
                raise DatasetError(nodes_path, lineno, str(e)) from None
            by_hex[hex_id.lower()] = aid
            nodes.append((aid, kind))

    edges: list[tuple[ArtifactId, ArtifactId]] = []
    with open(edges_path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise DatasetError(edges_path, lineno, f"expected '<hex src> <hex dst>', got {line!r}")
            try:
                src = by_hex[parts[0].lower()]
            except KeyError:
                raise DatasetError(edges_path, lineno, f"edge references undeclared node {parts[0]}") from None
            try:
                dst = by_hex[parts[1].lower()]
            except KeyError:
                raise DatasetError(edges_path, lineno, f"edge references undeclared node {parts[1]}") from None
            edges.append((src, dst))

    return build(nodes, edges)


def write_edge_list(g: HistoryGraph, nodes_path, edges_path) -> None:
    """Write `g` in the edge-list format (round-trips through load_edge_list)."""
    with open(nodes_path, "w", encoding="utf-8", newline="") as f:
        for i in range(g.n_nodes):
            aid = g.node_id(i)
            f.write(f"{aid.kind.token} {aid.hex}\n")
    with open(edges_path, "w", encoding="utf-8", newline="") as f:
        for src, dst in g.edges():
            f.write(f"{g.node_id(src).hex} {g.node_id(dst).hex}\n")


# -- forge fork metadata -----------------------------------------------------

def normalize_origin_url(value: str) -> str:
    """Canonical form used to match forge records against known origins.

    URLs get a lowercased scheme and host and lose trailing slashes and one
    ".git" suffix; bare hex ids are lowercased; anything else only loses the
    trailing slash/.git decoration.
    """
    s = value.strip()
    if "://" in s:
        scheme, rest = s.split("://", 1)
        host, sep, path = rest.partition("/")
        s = scheme.lower() + "://" + host.lower() + sep + path
    else:
        stripped = s.rstrip("/")
        if _is_hex(stripped):
            return stripped.lower()
    s = s.rstrip("/")
    if s.endswith(".git"):
        s = s[:-4]
    return s.rstrip("/")


def _is_hex(s: str) -> bool:
    try:
        bytes.fromhex(s)
    except ValueError:
        return False
    return len(s) % 2 == 0 and bool(s)


def origin_lookup(g: HistoryGraph, labels: Mapping[ArtifactId, str] | None = None) -> dict[str, int]:
    """Normalized-token -> origin-index map for matching forge CSV cells.

    Every origin is reachable by its hex id; origins with a known label
    (URL or path) are additionally reachable by the label's normal form.
    """
    known: dict[str, int] = {}
    for aid, idx in g.origin_index.items():
        known[aid.hex] = idx
    if labels:
        for aid, label in labels.items():
            known[normalize_origin_url(label)] = g.origin_index[aid]
    return known


def load_forge_forks(path, known_origins: Mapping[str, int], n_origins: int) -> ForgeForkGraph:
    """Load forge fork records, skipping rows that reference unknown origins.

    The skipped-row count ends up on the returned graph (it feeds the ingest
    summary); structural violations (self-forks, duplicate parents, cycles)
    raise :class:`~forkscope.errors.ForgeMetadataError`.
    """
    pairs: list[tuple[int, int]] = []
    skipped = 0
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise DatasetError(path, 1, 'missing header "child,parent"') from None
        if [h.strip().lower() for h in header] != ["child", "parent"]:
            raise DatasetError(path, 1, f'expected header "child,parent", got {header!r}')
        for row in reader:
            if not row:
                continue
            if len(row) != 2:
                raise DatasetError(path, reader.line_num, f"expected 2 fields, got {len(row)}")
            child = known_origins.get(normalize_origin_url(row[0]))
            parent = known_origins.get(normalize_origin_url(row[1]))
            if child is None or parent is None:
                skipped += 1
                continue
            pairs.append((child, parent))
    if skipped:
        log.info("skipped %d forge records referencing unknown origins", skipped)
    return ForgeForkGraph.from_edges(n_origins, pairs, skipped_records=skipped)


def write_forge_csv(path, rows: Iterable[tuple[str, str]]) -> None:
    """Write (child, parent) rows under the standard header."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["child", "parent"])
        for child, parent in rows:
            w.writerow([child, parent])


# -- local repositories ------------------------------------------------------

def origin_id_for_label(label: str) -> ArtifactId:
    """Extrinsic origin id: digest of the repository label (URL or path)."""
    return ArtifactId.origin(hashlib.sha1(b"ori:" + label.encode("utf-8")).digest())


def ingest_local_repos(paths: Iterable[str | Path]) -> tuple[HistoryGraph, dict[ArtifactId, str]]:
    """Ingest local git repositories into one deduplicated history graph.

    Streams ``git log --all`` per repository, records (commit, parents, root
    tree), and points each repository's origin node at its tip commits
    (commits with no child inside that repository). Commits and trees shared
    between repositories collapse to single nodes. Returns the graph and a
    map from origin id to the repository path it labels.
    """
    nodes: dict[ArtifactId, NodeKind] = {}
    edges: set[tuple[ArtifactId, ArtifactId]] = set()
    labels: dict[ArtifactId, str] = {}

    for raw_path in paths:
        label = str(raw_path)
        path = Path(raw_path)
        origin = origin_id_for_label(label)
        commits: dict[str, tuple[str, list[str]]] = {}
        for line in _git_log_lines(path):
            parts = line.split()
            if len(parts) < 2 or not all(_is_hex(p) for p in parts):
                raise RepoIngestError(f"{label}: unparseable git log line {line!r}")
            commits[parts[0]] = (parts[1], parts[2:])
        if not commits:
            raise RepoIngestError(f"{label}: repository has no commits")

        is_parent: set[str] = set()
        for _, parents in commits.values():
            is_parent.update(parents)
        for chex, (thex, parents) in commits.items():
            rev = ArtifactId.revision(bytes.fromhex(chex))
            tree = ArtifactId.root_directory(bytes.fromhex(thex))
            nodes[rev] = NodeKind.REVISION
            nodes[tree] = NodeKind.ROOT_DIRECTORY
            edges.add((rev, tree))
            for p in parents:
                if p not in commits:
                    raise RepoIngestError(f"{label}: commit {chex} has unknown parent {p}")
                edges.add((rev, ArtifactId.revision(bytes.fromhex(p))))
        nodes[origin] = NodeKind.ORIGIN
        labels[origin] = label
        for chex in commits:
            if chex not in is_parent:
                edges.add((origin, ArtifactId.revision(bytes.fromhex(chex))))

    g = build(list(nodes.items()), sorted(edges, key=lambda e: (e[0].sort_key, e[1].sort_key)))
    return g, labels


def _git_log_lines(path: Path):
    cmd = ["git", "-C", str(path), "log", "--all", "--format=%H %T %P"]
    try:
        proc = subprocess.Popen(
            cmd, stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True
        )
    except OSError as e:
        raise RepoIngestError(f"{path}: cannot run git: {e}") from None
    assert proc.stdout is not None
    try:
        for line in proc.stdout:
            line = line.strip()
            if line:
                yield line
    finally:
        stderr = proc.stderr.read() if proc.stderr else ""
        proc.stdout.close()
        if proc.stderr:
            proc.stderr.close()
        code = proc.wait()
    if code != 0:
        raise RepoIngestError(f"{path}: git log failed: {stderr.strip() or f'exit {code}'}")


# -- summaries ---------------------------------------------------------------

def ingest_summary(g: HistoryGraph, skipped_forge_records: int = 0) -> dict:
    """The standard post-ingest report."""
    return {
        "origins": g.n_origins,
        "revisions": g.n_revisions,
        "rootdirs": g.n_rootdirs,
        "skipped_forge_records": skipped_forge_records,
    }
