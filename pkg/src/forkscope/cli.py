"""Command-line pipeline: ingest -> analysis -> CSV/JSON exports.

Three subcommands: `networks` partitions origins into fork networks per
definition, `cliques` enumerates shared-commit cliques and the p-clique
partition, `compare` diffs the weighted size distributions of two
partitions. Outputs are sorted and byte-stable: the same inputs, seed, and
flags reproduce identical files at any thread count. Set FORKSCOPE_LOG to a
level name (info, debug, ...) for progress logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import cliques as cliques_mod
from . import ingest, networks, stats, synth
from .errors import ForkscopeError
from .forge import ForgeForkGraph
from .graph import HistoryGraph
from .relations import ForkType

log = logging.getLogger("forkscope.cli")

PARTITION_CHOICES = ("networks1", "networks2", "networks3", "pcliques")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forkscope",
        description="Identify fork networks, cliques, and definition divergence "
                    "across version-control repositories.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--input-mode", required=True, choices=("edge-list", "local-repos", "synthetic")
    )
    common.add_argument("--nodes", help="nodes file (edge-list mode)")
    common.add_argument("--edges", help="edges file (edge-list mode)")
    common.add_argument("--repos", nargs="+", help="repository paths (local-repos mode)")
    common.add_argument("--forge-csv", help="child,parent fork records CSV")
    common.add_argument("--out-dir", required=True)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, help="synthetic seed (overrides config)")
    common.add_argument("--synthetic-config", help="JSON SynthConfig (synthetic mode)")

    p_net = sub.add_parser("networks", parents=[common], help="fork networks per type")
    p_net.add_argument(
        "--type", dest="types", action="append", type=int, choices=(1, 2, 3),
        help="fork type to compute (repeatable; default: all available)",
    )

    sub.add_parser("cliques", parents=[common], help="fork cliques and p-clique partition")

    p_cmp = sub.add_parser("compare", parents=[common], help="distribution differences A - B")
    p_cmp.add_argument("--a", required=True, choices=PARTITION_CHOICES)
    p_cmp.add_argument("--b", required=True, choices=PARTITION_CHOICES)
    p_cmp.add_argument(
        "--contribution", action="store_true",
        help="also attribute the largest cluster of B over the A partition",
    )
    return parser


def _configure_logging() -> None:
    level_name = os.environ.get("FORKSCOPE_LOG", "").strip()
    if level_name:
        level = getattr(logging, level_name.upper(), None)
        if isinstance(level, int):
            logging.basicConfig(level=level, format="%(name)s: %(message)s")


def _load_inputs(args) -> tuple[HistoryGraph, ForgeForkGraph | None, dict]:
    """Build the graph and optional forge metadata for any input mode."""
    if args.input_mode == "edge-list":
        if not args.nodes or not args.edges:
            raise ForkscopeError("edge-list mode requires --nodes and --edges")
        g = ingest.load_edge_list(args.nodes, args.edges)
        forge = None
        if args.forge_csv:
            forge = ingest.load_forge_forks(
                args.forge_csv, ingest.origin_lookup(g), g.n_origins
            )
    elif args.input_mode == "local-repos":
        if not args.repos:
            raise ForkscopeError("local-repos mode requires --repos")
        g, labels = ingest.ingest_local_repos(args.repos)
        forge = None
        if args.forge_csv:
            forge = ingest.load_forge_forks(
                args.forge_csv, ingest.origin_lookup(g, labels), g.n_origins
            )
    else:
        cfg = _synth_config(args)
        g, forge, _ = synth.generate_synthetic(cfg)
    summary = ingest.ingest_summary(g, forge.skipped_records if forge else 0)
    log.info("ingested %(origins)d origins, %(revisions)d revisions", summary)
    return g, forge, summary


def _synth_config(args) -> synth.SynthConfig:
    fields = {}
    if args.synthetic_config:
        with open(args.synthetic_config, encoding="utf-8") as f:
            fields = json.load(f)
    if args.seed is not None:
        fields["seed"] = args.seed
    return synth.SynthConfig(**fields)


def _partition_for(selector: str, g: HistoryGraph, forge, threads: int):
    """Clusters (as member tuples) for a --a/--b selector."""
    if selector == "pcliques":
        found = cliques_mod.find_cliques(g, threads=threads)
        return cliques_mod.pclique_partition(found, g.origins()).groups
    fork_type = ForkType(int(selector[-1]))
    if fork_type == ForkType.FORGE and forge is None:
        raise ForkscopeError("type 1 partitions require --forge-csv (or synthetic mode)")
    return networks.fork_networks(fork_type, g, forge)


def cmd_networks(args) -> int:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    g, forge, summary = _load_inputs(args)
    stats.write_summary_json(out / "ingest_summary.json", summary)

    types = args.types or ([1] if forge is not None else []) + [2, 3]
    report = {}
    for t in sorted(set(types)):
        fork_type = ForkType(t)
        if fork_type == ForkType.FORGE and forge is None:
            raise ForkscopeError("type 1 networks require --forge-csv (or synthetic mode)")
        clusters = networks.fork_networks(fork_type, g, forge)
        networks.write_clusters_csv(out / f"clusters_type{t}.csv", clusters, g)
        dist = stats.size_distribution(clusters)
        stats.write_sizes_csv(out / f"sizes_type{t}.csv", dist)
        forks, n_networks, isolated = networks.fork_count(clusters)
        report[f"type{t}"] = {
            "forks": forks,
            "networks": n_networks,
            "isolated": isolated,
            "mean_size": dist.mean_size,
            "percent_forks": 100.0 * forks / g.n_origins if g.n_origins else 0.0,
        }
    stats.write_summary_json(out / "summary.json", report)
    return 0


def cmd_cliques(args) -> int:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    g, forge, summary = _load_inputs(args)
    stats.write_summary_json(out / "ingest_summary.json", summary)

    found = cliques_mod.find_cliques(g, threads=args.threads)
    cliques_mod.write_cliques_csv(out / "cliques.csv", found, g)
    single, multi, mean = cliques_mod.overlap_stats(found)
    stats.write_summary_json(out / "overlap.json", {
        "cliques": len(found),
        "origins_single_clique": single,
        "origins_multi_clique": multi,
        "mean_cliques_per_origin": mean,
    })
    partition = cliques_mod.pclique_partition(found, g.origins())
    cliques_mod.write_pcliques_csv(out / "pcliques.csv", partition, g)
    stats.write_sizes_csv(
        out / "pclique_sizes.csv", stats.size_distribution(partition.groups)
    )
    return 0


def cmd_compare(args) -> int:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    g, forge, summary = _load_inputs(args)
    stats.write_summary_json(out / "ingest_summary.json", summary)

    part_a = _partition_for(args.a, g, forge, args.threads)
    part_b = _partition_for(args.b, g, forge, args.threads)
    ccdf_a = stats.weighted_ccdf(stats.size_distribution(part_a))
    ccdf_b = stats.weighted_ccdf(stats.size_distribution(part_b))
    delta = stats.delta_o(ccdf_a, ccdf_b)
    stats.write_delta_csv(out / "delta.csv", delta)
    stats.write_summary_json(out / "ks.json", {
        "a": args.a,
        "b": args.b,
        "ks": delta.ks,
        "max_abs_delta": max(abs(d) for _, d in delta.points),
        "total_origins": delta.total_origins,
    })
    if args.contribution:
        giant = min(part_b, key=lambda c: (-len(_tuple(c)), _tuple(c)))
        flux = stats.component_contribution(giant, part_a)
        stats.write_contribution_csv(out / "contribution.csv", flux)
    return 0


def _tuple(cluster) -> tuple[int, ...]:
    return tuple(getattr(cluster, "members", cluster))


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"networks": cmd_networks, "cliques": cmd_cliques, "compare": cmd_compare}
    try:
        return handlers[args.command](args)
    except ForkscopeError as e:
        print(f"forkscope: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
