"""Pairwise fork predicates for the three fork definitions.

Type 1 (forge fork) is directed and comes from platform metadata. Type 2
(shared commit) holds when two repositories' development histories contain a
common commit; type 3 (shared root) when any two of their commits carry
recursively identical full source trees. Types 2 and 3 are symmetric, none of
the three is transitive, and a shared commit always implies a shared root
tree (the tree of that very commit), so type 2 is contained in type 3.

These predicates exist for tests, oracles, and spot checks; bulk analysis
goes through :mod:`forkscope.networks` and :mod:`forkscope.cliques`.
"""

from __future__ import annotations

import enum

from .forge import ForgeForkGraph
from .graph import HistoryGraph, NodeKind


class ForkType(enum.IntEnum):
    FORGE = 1            # declared on the hosting platform
    SHARED_COMMIT = 2    # histories intersect in at least one commit
    SHARED_ROOT = 3      # some commits carry identical full source trees


def _check_origin(g: HistoryGraph, i: int, name: str) -> None:
    if not 0 <= i < g.n_origins:
        raise ValueError(f"{name}={i} is not an origin node index")


def is_fork(
    fork_type: ForkType,
    a: int,
    b: int,
    g: HistoryGraph,
    forge: ForgeForkGraph | None = None,
) -> bool:
    """Whether origin `b` is a fork of origin `a` under the given definition.

    Types 2 and 3 are symmetric in (a, b); type 1 is directed: it holds iff
    the forge records `a` as the parent of `b`. Both arguments must be
    distinct origin node indices of `g`.
    """
    _check_origin(g, a, "a")
    _check_origin(g, b, "b")
    if a == b:
        raise ValueError("fork predicates are irreflexive: a and b must differ")

    if fork_type == ForkType.FORGE:
        if forge is None:
            raise ValueError("type 1 forks require forge metadata")
        return forge.parent_of(b) == a

    kind = NodeKind.REVISION if fork_type == ForkType.SHARED_COMMIT else NodeKind.ROOT_DIRECTORY
    seen_a = set(g.traverse(a, "forward", kind))
    # Early exit on the first shared artifact.
    return any(v in seen_a for v in g.traverse(b, "forward", kind))
