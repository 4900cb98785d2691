#!/usr/bin/env python3
"""Walk through the three fork definitions on tiny hand-built histories.

Builds three toy corpora: a forge-fork forest, a pair of repositories that
share their initial commit, and a pair with disjoint commits but one
identical source tree (a re-imported repository). Prints what each pairwise
definition sees.
"""

import hashlib

from forkscope import ArtifactId, ForgeForkGraph, ForkType, NodeKind, build, is_fork


def oid(label):
    return ArtifactId.origin(hashlib.sha1(f"ori:{label}".encode()).digest())


def rid(tag):
    return ArtifactId.revision(hashlib.sha1(f"rev:{tag}".encode()).digest())


def did(tag):
    return ArtifactId.root_directory(hashlib.sha1(f"dir:{tag}".encode()).digest())


def graph_of(origin_heads, rev_parents, rev_dir=None):
    dirs = {**{t: t for t in rev_parents}, **(rev_dir or {})}
    nodes = [(oid(o), NodeKind.ORIGIN) for o in origin_heads]
    nodes += [(rid(t), NodeKind.REVISION) for t in rev_parents]
    nodes += [(did(t), NodeKind.ROOT_DIRECTORY) for t in set(dirs.values())]
    edges = [(oid(o), rid(h)) for o, heads in origin_heads.items() for h in heads]
    for t, parents in rev_parents.items():
        edges += [(rid(t), rid(p)) for p in parents]
        edges.append((rid(t), did(dirs[t])))
    g = build(nodes, edges)
    return g, {o: g.origin_index[oid(o)] for o in origin_heads}


print("=" * 64)
print("Type 1: forge forks are whatever the platform recorded")
print("=" * 64)
# Seven repositories; the platform knows B was forked from A, C and D from
# B, F from E. G was never forked.
g1, idx1 = graph_of(
    {o: [f"{o}-head"] for o in "ABCDEFG"},
    {f"{o}-head": [] for o in "ABCDEFG"},
)
forge = ForgeForkGraph.from_edges(g1.n_origins, [
    (idx1["B"], idx1["A"]), (idx1["C"], idx1["B"]),
    (idx1["D"], idx1["B"]), (idx1["F"], idx1["E"]),
])
for child, parent in [("B", "A"), ("A", "B"), ("C", "A"), ("G", "A")]:
    verdict = is_fork(ForkType.FORGE, idx1[parent], idx1[child], g1, forge)
    print(f"  is {child} a forge fork of {parent}?  {verdict}")
print("  note: directed (A->B but not B->A) and not transitive (B->C but not A->C)")

print()
print("=" * 64)
print("Type 2: shared commits, however the clone was made")
print("=" * 64)
# A and B diverged right after their common initial commit.
g2, idx2 = graph_of(
    {"A": ["a2"], "B": ["b2"]},
    {"init": [], "a1": ["init"], "a2": ["a1"], "b1": ["init"], "b2": ["b1"]},
)
print("  A and B share only the initial commit:")
print("    A ~2 B:", is_fork(ForkType.SHARED_COMMIT, idx2["A"], idx2["B"], g2))
print("    B ~2 A:", is_fork(ForkType.SHARED_COMMIT, idx2["B"], idx2["A"], g2),
      " (symmetric)")

print()
print("=" * 64)
print("Type 3: identical full source trees, no shared commits at all")
print("=" * 64)
# B re-imported A's code into a fresh history (think git-svn): different
# commit ids, but B's first tree is byte-for-byte A's released tree.
g3, idx3 = graph_of(
    {"A": ["a2"], "B": ["b2"]},
    {"a1": [], "a2": ["a1"], "b1": [], "b2": ["b1"]},
    rev_dir={"a1": "shared-tree", "b1": "shared-tree"},
)
print("    A ~2 B:", is_fork(ForkType.SHARED_COMMIT, idx3["A"], idx3["B"], g3))
print("    A ~3 B:", is_fork(ForkType.SHARED_ROOT, idx3["A"], idx3["B"], g3))
print("  every shared commit also shares its tree, so type 2 implies type 3;")
print("  the reverse does not hold, as this pair shows.")
