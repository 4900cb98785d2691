from __future__ import annotations

from dataclasses import dataclass

import pytest

from forkscope import ForgeForkGraph, HistoryGraph

from helpers import build_fixture, forge_from_records


@dataclass
class Fixture:
    g: HistoryGraph
    origin_idx: dict
    rev_idx: dict
    forge: ForgeForkGraph | None = None


@pytest.fixture
def forge_forest() -> Fixture:
    """Forge fork forest: B forked from A; C, D from B; F from E; G alone."""
    heads = {label: [f"h{label}"] for label in "ABCDEFG"}
    revs = {f"h{label}": [] for label in "ABCDEFG"}
    g, origin_idx, rev_idx = build_fixture(heads, revs, ns="forge_forest:")
    forge = forge_from_records(
        g, origin_idx, [("B", "A"), ("C", "B"), ("D", "B"), ("F", "E")]
    )
    return Fixture(g, origin_idx, rev_idx, forge)


@pytest.fixture
def initial_commit_pair() -> Fixture:
    """Two repositories sharing only their initial commit 1."""
    heads = {"A": [5], "B": [6]}
    revs = {1: [], 2: [1], 3: [1], 4: [2], 5: [3], 6: [2, 4]}
    g, origin_idx, rev_idx = build_fixture(heads, revs, ns="initial_commit_pair:")
    return Fixture(g, origin_idx, rev_idx)


@pytest.fixture
def reimport_pair() -> Fixture:
    """Disjoint commit histories that share root directory 1."""
    heads = {"A": [9], "B": [10]}
    revs = {9: [7], 7: [5], 5: [], 10: [8], 8: [6], 6: []}
    rev_dir = {5: "d1", 7: "d2", 9: "d2", 6: "d1", 8: "d3", 10: "d4"}
    g, origin_idx, rev_idx = build_fixture(heads, revs, rev_dir, ns="reimport_pair:")
    return Fixture(g, origin_idx, rev_idx)


@pytest.fixture
def pair_and_loner() -> Fixture:
    """A and B share a chain; C has its own diamond history."""
    heads = {"A": [5], "B": [2], "C": [8]}
    revs = {5: [3], 2: [3], 3: [4], 4: [], 8: [9, 10], 9: [11], 10: [11], 11: []}
    g, origin_idx, rev_idx = build_fixture(heads, revs, ns="pair_and_loner:")
    return Fixture(g, origin_idx, rev_idx)


@pytest.fixture
def bridge_trio() -> Fixture:
    """A-B and B-C share history, A-C do not: one network, two cliques.

    The namespace is chosen so that fingerprint({A,B}) < fingerprint({B,C}),
    pinning which equal-sized clique the p-clique partition keeps intact.
    """
    heads = {"A": [5], "B": [2], "C": [8]}
    revs = {5: [3], 3: [4], 4: [], 2: [3, 9], 8: [9, 10], 9: [11], 10: [11], 11: []}
    g, origin_idx, rev_idx = build_fixture(heads, revs, ns="trio:")
    return Fixture(g, origin_idx, rev_idx)
