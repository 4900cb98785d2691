"""Shared fixture builders and independent oracles for the test suite.

The oracles restate the operations being checked in the most literal form
available (fixpoint closure, union-find over pairwise predicates, per-root
set collection over a dict adjacency) and never touch the library's
adjacency structures or traversals.
"""

from __future__ import annotations

import hashlib
from collections import defaultdict

from forkscope import ArtifactId, ForgeForkGraph, HistoryGraph, NodeKind, build


# -- id factories -------------------------------------------------------------

def oid(label: str) -> ArtifactId:
    return ArtifactId.origin(hashlib.sha1(f"ori:{label}".encode()).digest())


def rid(tag) -> ArtifactId:
    return ArtifactId.revision(hashlib.sha1(f"rev:{tag}".encode()).digest())


def did(tag) -> ArtifactId:
    return ArtifactId.root_directory(hashlib.sha1(f"dir:{tag}".encode()).digest())


# -- fixture construction ------------------------------------------------------

def build_fixture(
    origin_heads: dict[str, list],
    rev_parents: dict[object, list],
    rev_dir: dict[object, object] | None = None,
    ns: str = "",
):
    """Build a graph from origin->heads and revision->parents maps.

    Every revision gets its own root directory unless `rev_dir` maps it to a
    shared directory tag. Returns (graph, origin index by label, revision
    index by tag).
    """
    dirs = {**{tag: tag for tag in rev_parents}, **(rev_dir or {})}
    nodes = [(oid(ns + label), NodeKind.ORIGIN) for label in origin_heads]
    nodes += [(rid((ns, tag)), NodeKind.REVISION) for tag in rev_parents]
    nodes += [(did((ns, tag)), NodeKind.ROOT_DIRECTORY) for tag in set(dirs.values())]
    edges = []
    for label, heads in origin_heads.items():
        for h in heads:
            edges.append((oid(ns + label), rid((ns, h))))
    for tag, parents in rev_parents.items():
        for p in parents:
            edges.append((rid((ns, tag)), rid((ns, p))))
        edges.append((rid((ns, tag)), did((ns, dirs[tag]))))
    g = build(nodes, edges)
    origin_idx = {label: g.origin_index[oid(ns + label)] for label in origin_heads}
    rev_idx = {tag: g.find(rid((ns, tag))) for tag in rev_parents}
    return g, origin_idx, rev_idx


def forge_from_records(g: HistoryGraph, origin_idx: dict, records: list[tuple[str, str]]):
    """ForgeForkGraph from (child label, parent label) pairs."""
    return ForgeForkGraph.from_edges(
        g.n_origins, [(origin_idx[c], origin_idx[p]) for c, p in records]
    )


def members_by_label(clusters, origin_idx: dict) -> set[frozenset[str]]:
    """Cluster member sets expressed as origin labels, for readable asserts."""
    by_index = {v: k for k, v in origin_idx.items()}
    out = set()
    for c in clusters:
        members = getattr(c, "members", c)
        out.add(frozenset(by_index[m] for m in members))
    return out


def inject_unrelated_merges(g: HistoryGraph, merge_specs: list[tuple[int, int]], ns: str = "m"):
    """Rebuild `g` with extra origins whose head commit merges two others.

    Each (a, b) spec adds one new origin and one new revision with parents
    a and b (existing revision indices), modeling a merge of unrelated
    histories: the new origin then reaches every root either parent reaches,
    so it lands in several cliques.
    """
    nodes = [(g.node_id(i), g.node_kind(i)) for i in range(g.n_nodes)]
    edges = [(g.node_id(s), g.node_id(d)) for s, d in g.edges()]
    for k, (a, b) in enumerate(merge_specs):
        origin = oid(f"{ns}:merge-origin:{k}")
        rev = rid((ns, "merge", k))
        tree = did((ns, "merge", k))
        nodes += [(origin, NodeKind.ORIGIN), (rev, NodeKind.REVISION),
                  (tree, NodeKind.ROOT_DIRECTORY)]
        edges += [(origin, rev), (rev, g.node_id(a)), (rev, g.node_id(b)), (rev, tree)]
    return build(nodes, edges)


# -- independent oracles -------------------------------------------------------

def closure_reachability(n: int, edges: list[tuple[int, int]]) -> list[set[int]]:
    """Reachable-set per node by fixpoint expansion (includes the node itself)."""
    direct = defaultdict(set)
    for s, d in edges:
        direct[s].add(d)
    reach = [set([v]) | direct[v] for v in range(n)]
    changed = True
    while changed:
        changed = False
        for v in range(n):
            grown = set(reach[v])
            for w in list(reach[v]):
                grown |= reach[w]
            if grown != reach[v]:
                reach[v] = grown
                changed = True
    return reach


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def groups(self) -> set[frozenset[int]]:
        by_root = defaultdict(set)
        for x in range(len(self.parent)):
            by_root[self.find(x)].add(x)
        return {frozenset(v) for v in by_root.values()}


def components_from_pairs(n: int, pairs) -> set[frozenset[int]]:
    """Union-find partition of 0..n-1 from related pairs (singletons included)."""
    uf = UnionFind(n)
    for a, b in pairs:
        uf.union(a, b)
    return uf.groups()


def dict_adjacency(g: HistoryGraph) -> tuple[dict, dict]:
    """(forward, reverse) adjacency dicts rebuilt from the exported edge list."""
    fwd, rev = defaultdict(list), defaultdict(list)
    for s, d in g.edges():
        fwd[s].append(d)
        rev[d].append(s)
    return fwd, rev


def brute_force_cliques(g: HistoryGraph) -> set[frozenset[int]]:
    """Origin-leaf set of every parentless revision, uniqued; pure dict BFS."""
    fwd, rev = dict_adjacency(g)
    out = set()
    for r in g.revisions():
        if any(g.node_kind(w) == NodeKind.REVISION for w in fwd[r]):
            continue
        seen = {r}
        queue = [r]
        leaves = set()
        while queue:
            v = queue.pop()
            if g.node_kind(v) == NodeKind.ORIGIN:
                leaves.add(v)
            for w in rev[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        out.add(frozenset(leaves))
    return out


def brute_force_type3_cliques(g: HistoryGraph) -> set[frozenset[int]]:
    """Origin-leaf set of every root directory, uniqued; pure dict BFS."""
    _, rev = dict_adjacency(g)
    out = set()
    for d in g.rootdirs():
        seen = {d}
        queue = [d]
        leaves = set()
        while queue:
            v = queue.pop()
            if g.node_kind(v) == NodeKind.ORIGIN:
                leaves.add(v)
            for w in rev[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        out.add(frozenset(leaves))
    return out


def fold_pclique(member_sets_with_fp: list[tuple[frozenset[int], str]], universe) -> set[frozenset[int]]:
    """Independent set-subtraction restatement of the p-clique partition."""
    taken: set[int] = set()
    groups: list[frozenset[int]] = []
    for members, _ in sorted(member_sets_with_fp, key=lambda t: (-len(t[0]), t[1])):
        residue = frozenset(members - taken)
        if residue:
            groups.append(residue)
            taken |= residue
    for o in set(universe) - taken:
        groups.append(frozenset([o]))
    return set(groups)
