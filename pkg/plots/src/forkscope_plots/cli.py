"""Command-line wrapper: forkscope-plot --kind ... --in ... --out ..."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, PlotError, PlotSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forkscope-plot",
        description="Render forkscope CSV outputs (ccdf, delta, contribution) to image files.",
    )
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument(
        "--in", dest="inputs", action="append", required=True, metavar="CSV",
        help="input CSV (repeatable; later files overlay earlier ones)",
    )
    parser.add_argument("--out", required=True, help="output image path (.png or .svg)")
    parser.add_argument("--log-x", action=argparse.BooleanOptionalAction, default=None)
    parser.add_argument("--log-y", action=argparse.BooleanOptionalAction, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(
        kind=args.kind,
        inputs=tuple(args.inputs),
        output=args.out,
        log_x=args.log_x,
        log_y=args.log_y,
    )
    try:
        render(spec)
    except PlotError as e:
        print(f"forkscope-plot: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
