from __future__ import annotations

from itertools import combinations

import pytest

from forkscope import (
    ForkType,
    SynthConfig,
    fork_count,
    fork_networks,
    generate_synthetic,
    is_fork,
)
from forkscope.networks import Cluster, write_clusters_csv

from helpers import components_from_pairs, members_by_label


def test_forge_forest_type1_networks(forge_forest):
    clusters = fork_networks(ForkType.FORGE, forge_forest.g, forge_forest.forge)
    assert members_by_label(clusters, forge_forest.origin_idx) == {
        frozenset("ABCD"), frozenset("EF"), frozenset("G"),
    }
    assert fork_count(clusters) == (6, 3, 1)


def test_pair_and_loner_type2_networks(pair_and_loner):
    clusters = fork_networks(ForkType.SHARED_COMMIT, pair_and_loner.g)
    assert members_by_label(clusters, pair_and_loner.origin_idx) == {
        frozenset("AB"), frozenset("C"),
    }


def test_bridge_trio_single_network_despite_no_shared_history(bridge_trio):
    g, oi = bridge_trio.g, bridge_trio.origin_idx
    clusters = fork_networks(ForkType.SHARED_COMMIT, g)
    assert members_by_label(clusters, oi) == {frozenset("ABC")}
    # ... even though A and C share nothing directly.
    assert not is_fork(ForkType.SHARED_COMMIT, oi["A"], oi["C"], g)


def test_reimport_pair_type2_vs_type3_networks(reimport_pair):
    t2 = fork_networks(ForkType.SHARED_COMMIT, reimport_pair.g)
    t3 = fork_networks(ForkType.SHARED_ROOT, reimport_pair.g)
    assert members_by_label(t2, reimport_pair.origin_idx) == {frozenset("A"), frozenset("B")}
    assert members_by_label(t3, reimport_pair.origin_idx) == {frozenset("AB")}


def test_cluster_ordering_and_ids(forge_forest):
    clusters = fork_networks(ForkType.FORGE, forge_forest.g, forge_forest.forge)
    assert [c.cluster_id for c in clusters] == [0, 1, 2]
    assert [c.size for c in clusters] == [4, 2, 1]
    for c in clusters:
        assert list(c.members) == sorted(c.members)


def test_fork_count_degenerate_partitions():
    singles = [Cluster(ForkType.FORGE, i, (i,)) for i in range(5)]
    assert fork_count(singles) == (0, 5, 5)
    one = [Cluster(ForkType.FORGE, 0, tuple(range(7)))]
    assert fork_count(one) == (7, 1, 0)


def test_fork_count_rejects_overlap():
    bad = [Cluster(ForkType.FORGE, 0, (0, 1)), Cluster(ForkType.FORGE, 1, (1, 2))]
    with pytest.raises(ValueError, match="not a partition"):
        fork_count(bad)
    with pytest.raises(ValueError, match="empty"):
        fork_count([Cluster(ForkType.FORGE, 0, ())])


def _corpus(seed: int, repos: int):
    cfg = SynthConfig(
        seed=seed, repos=repos, mean_commits=7, forge_fork_prob=0.3,
        clone_prob=0.2, mean_divergence=2.5, collision_prob=0.2,
    )
    return generate_synthetic(cfg)


@pytest.mark.parametrize("seed,repos", [(0, 20), (1, 60), (2, 200)])
def test_networks_equal_union_find_over_pairwise_relation(seed, repos):
    g, forge, gt = _corpus(seed, repos)
    node = gt.origin_nodes(g)
    rank = {n: i for i, n in enumerate(node)}
    for fork_type, truth_pairs in [
        (ForkType.FORGE, {tuple(sorted((rank[node[p]], rank[node[c]]))) for p, c in gt.forge_pairs}),
        (ForkType.SHARED_COMMIT, gt.shared_commit_pairs),
        (ForkType.SHARED_ROOT, gt.shared_root_pairs),
    ]:
        clusters = fork_networks(fork_type, g, forge)
        got = {frozenset(rank[m] for m in c.members) for c in clusters}
        expected = components_from_pairs(len(node), truth_pairs)
        assert got == expected


def test_partition_property_every_type(forge_forest, pair_and_loner, bridge_trio):
    for fx, types in [
        (forge_forest, [ForkType.FORGE, ForkType.SHARED_COMMIT, ForkType.SHARED_ROOT]),
        (pair_and_loner, [ForkType.SHARED_COMMIT, ForkType.SHARED_ROOT]),
        (bridge_trio, [ForkType.SHARED_COMMIT, ForkType.SHARED_ROOT]),
    ]:
        for t in types:
            clusters = fork_networks(t, fx.g, fx.forge)
            members = [m for c in clusters for m in c.members]
            assert sorted(members) == list(range(fx.g.n_origins))


@pytest.mark.parametrize("seed", [4, 9])
def test_type2_networks_refine_type3_networks(seed):
    g, forge, _ = _corpus(seed, 50)
    t2 = fork_networks(ForkType.SHARED_COMMIT, g)
    t3 = fork_networks(ForkType.SHARED_ROOT, g)
    covering = {m: c.cluster_id for c in t3 for m in c.members}
    for c in t2:
        assert len({covering[m] for m in c.members}) == 1


def test_type1_refines_type2_when_forge_forks_share_history():
    # Generator-scoped property: its forge forks always inherit commits.
    g, forge, _ = _corpus(3, 80)
    t1 = fork_networks(ForkType.FORGE, g, forge)
    t2 = fork_networks(ForkType.SHARED_COMMIT, g)
    covering = {m: c.cluster_id for c in t2 for m in c.members}
    for c in t1:
        assert len({covering[m] for m in c.members}) == 1


def test_clusters_csv_export(tmp_path, forge_forest):
    clusters = fork_networks(ForkType.FORGE, forge_forest.g, forge_forest.forge)
    path = tmp_path / "clusters.csv"
    write_clusters_csv(path, clusters, forge_forest.g)
    lines = path.read_text().splitlines()
    assert lines[0] == "cluster_id,size,origin_id"
    assert len(lines) == 1 + forge_forest.g.n_origins
    assert lines[1].startswith("0,4,")
