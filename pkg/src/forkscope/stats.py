"""Distribution statistics for comparing fork definitions.

Works on cluster partitions (networks or p-cliques) over a common origin
universe: size distributions, weighted complementary cumulative distributions
W(x) = number of origins living in clusters of size >= x, their per-size
signed difference deltaO, the normalized Kolmogorov-Smirnov distance, and the
per-size flux of a target cluster's members out of a baseline partition.
"""

from __future__ import annotations

import bisect
import csv
import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


def _members(cluster) -> tuple[int, ...]:
    return tuple(getattr(cluster, "members", cluster))


@dataclass(frozen=True)
class SizeDistribution:
    """Cluster-size multiset: counts[s] clusters of size s, over total_origins origins."""

    counts: Mapping[int, int]
    total_origins: int

    @property
    def n_clusters(self) -> int:
        return sum(self.counts.values())

    @property
    def mean_size(self) -> float:
        n = self.n_clusters
        return self.total_origins / n if n else 0.0

    @property
    def max_size(self) -> int:
        return max(self.counts) if self.counts else 0


@dataclass(frozen=True)
class WeightedCCDF:
    """W(x) = origins in clusters of size >= x, sampled at every observed size and x=1."""

    points: tuple[tuple[int, int], ...]
    total_origins: int

    def value_at(self, x: int) -> int:
        """Step-function evaluation of W at any size x >= 1."""
        if x < 1:
            raise ValueError("sizes start at 1")
        sizes = [s for s, _ in self.points]
        # W is flat between observed sizes: W(x) equals W at the next
        # observed size >= x, and 0 beyond the largest.
        i = bisect.bisect_left(sizes, x)
        return self.points[i][1] if i < len(self.points) else 0

    @property
    def max_size(self) -> int:
        return self.points[-1][0] if self.points else 0


@dataclass(frozen=True)
class DeltaO:
    """Signed per-size difference W_A(x) - W_B(x) and its normalized maximum."""

    points: tuple[tuple[int, int], ...]
    total_origins: int
    ks: float

    def value_at(self, x: int) -> int:
        for s, d in self.points:
            if s == x:
                return d
        raise KeyError(x)


def size_distribution(clusters: Iterable) -> SizeDistribution:
    """Exact size counts of a partition (clusters must be disjoint and nonempty)."""
    counts: Counter[int] = Counter()
    seen: set[int] = set()
    total = 0
    for c in clusters:
        members = _members(c)
        if not members:
            raise ValueError("empty cluster in partition")
        counts[len(members)] += 1
        total += len(members)
        seen.update(members)
    if len(seen) != total:
        raise ValueError("clusters overlap: input is not a partition")
    return SizeDistribution(dict(counts), total)


def weighted_ccdf(d: SizeDistribution) -> WeightedCCDF:
    """W(x) = sum over s >= x of s * counts[s], at every observed size and x=1."""
    sizes = sorted(set(d.counts) | {1})
    points: list[tuple[int, int]] = []
    acc = 0
    for s in reversed(sizes):
        acc += s * d.counts.get(s, 0)
        points.append((s, acc))
    points.reverse()
    return WeightedCCDF(tuple(points), d.total_origins)


def delta_o(a: WeightedCCDF, b: WeightedCCDF) -> DeltaO:
    """Per-size differences W_A - W_B over the union of both size supports.

    Both inputs must cover the same origin universe (equal W(1) totals).
    The support always includes size 1 (where the difference is zero by
    construction) and one size past the larger maximum, where both W vanish.
    """
    if a.total_origins != b.total_origins:
        raise ValueError(
            f"mismatched origin totals: {a.total_origins} vs {b.total_origins}"
        )
    top = max(a.max_size, b.max_size, 1)
    support = sorted({s for s, _ in a.points} | {s for s, _ in b.points} | {1, top + 1})
    points = tuple((x, a.value_at(x) - b.value_at(x)) for x in support)
    peak = max(abs(d) for _, d in points)
    ks = peak / a.total_origins if a.total_origins else 0.0
    return DeltaO(points, a.total_origins, ks)


def component_contribution(target, baseline_clusters: Iterable) -> dict[int, int]:
    """Per-size origin counts of where a target cluster's members sit in a baseline.

    For each member of `target`, looks up the size of its baseline cluster;
    returns {baseline size: number of target members} (values sum to the
    target size). Every member must be covered by the baseline partition.
    """
    size_of: dict[int, int] = {}
    for c in baseline_clusters:
        members = _members(c)
        for m in members:
            size_of[m] = len(members)
    flux: Counter[int] = Counter()
    for m in _members(target):
        if m not in size_of:
            raise ValueError(f"target member {m} is not covered by the baseline partition")
        flux[size_of[m]] += 1
    return dict(flux)


def summary(clusters: Sequence, ks: float | None = None) -> dict:
    """Fixed-key JSON summary {forks, networks, isolated, mean_size, ks}."""
    from .networks import fork_count

    forks, n_networks, isolated = fork_count(clusters)
    dist = size_distribution(clusters)
    return {
        "forks": forks,
        "networks": n_networks,
        "isolated": isolated,
        "mean_size": dist.mean_size,
        "ks": ks,
    }


def write_sizes_csv(path, d: SizeDistribution) -> None:
    """Rows "size,count", ascending."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["size", "count"])
        for s in sorted(d.counts):
            w.writerow([s, d.counts[s]])


def write_ccdf_csv(path, c: WeightedCCDF) -> None:
    """Rows "size,W", ascending."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["size", "W"])
        for s, value in c.points:
            w.writerow([s, value])


def write_delta_csv(path, d: DeltaO) -> None:
    """Rows "size,deltaO", ascending."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["size", "deltaO"])
        for s, value in d.points:
            w.writerow([s, value])


def write_contribution_csv(path, flux: Mapping[int, int]) -> None:
    """Rows "size,count", ascending."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["size", "count"])
        for s in sorted(flux):
            w.writerow([s, flux[s]])


def write_summary_json(path, payload: Mapping) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
