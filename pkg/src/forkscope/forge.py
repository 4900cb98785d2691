"""Forge-declared fork ancestry: a forest of origin -> parent-origin edges.

Code hosting platforms record "forked from" as a single optional parent per
repository, so the whole relation is a forest of disjoint trees over origins.
Origins are referenced by their node index in an associated history graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import ForgeMetadataError


@dataclass
class ForgeForkGraph:
    """Child-to-parent forge fork edges over origin node indices 0..n_origins."""

    n_origins: int
    parent: dict[int, int] = field(default_factory=dict)
    skipped_records: int = 0

    @classmethod
    def from_edges(
        cls,
        n_origins: int,
        edges: Iterable[tuple[int, int]],
        *,
        skipped_records: int = 0,
    ) -> "ForgeForkGraph":
        """Build and validate a forest from (child, parent) origin index pairs.

        Duplicate identical records collapse; a child with two distinct
        parents, a self-fork, an out-of-range origin, or a parent cycle
        raises :class:`ForgeMetadataError`.
        """
        parent: dict[int, int] = {}
        for child, par in edges:
            if not (0 <= child < n_origins and 0 <= par < n_origins):
                raise ForgeMetadataError(f"fork record ({child}, {par}) references unknown origin")
            if child == par:
                raise ForgeMetadataError(f"origin {child} recorded as a fork of itself")
            if child in parent and parent[child] != par:
                raise ForgeMetadataError(
                    f"origin {child} has two distinct parents ({parent[child]} and {par})"
                )
            parent[child] = par
        graph = cls(n_origins, parent, skipped_records)
        graph._check_forest()
        return graph

    def _check_forest(self) -> None:
        safe: set[int] = set()
        for start in self.parent:
            path: list[int] = []
            on_path: set[int] = set()
            v = start
            while v in self.parent and v not in safe:
                if v in on_path:
                    raise ForgeMetadataError(f"fork records contain a cycle through origin {v}")
                on_path.add(v)
                path.append(v)
                v = self.parent[v]
            safe.update(path)

    def parent_of(self, origin: int) -> int | None:
        return self.parent.get(origin)

    def edges(self) -> Iterator[tuple[int, int]]:
        """All (child, parent) records in child order."""
        for child in sorted(self.parent):
            yield child, self.parent[child]

    @property
    def n_records(self) -> int:
        return len(self.parent)
