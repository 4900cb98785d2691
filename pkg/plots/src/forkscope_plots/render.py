"""Render forkscope CSV exports into figures.

Three plot kinds, one per documented CSV schema:

- ``ccdf``: "size,W" series as log-log step curves (cumulative frequency
  distributions of cluster sizes, overlaid when several files are given).
- ``delta``: "size,deltaO" series as signed difference curves.
- ``contribution``: a "size,deltaO" curve with "size,count" files overlaid
  as dots, attributing a single cluster's members over the baseline.

Rendering depends only on the CSV contents: style, fonts, and metadata are
pinned so the same inputs always produce byte-identical image files.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

KINDS = ("ccdf", "delta", "contribution")

_HEADERS = {
    "ccdf": [["size", "W"]],
    "delta": [["size", "deltaO"]],
    "contribution": [["size", "deltaO"], ["size", "count"]],
}

# Log-log is the natural scale for heavy-tailed size distributions; the
# signed difference plots keep linear y by default.
_DEFAULT_LOG = {"ccdf": (True, True), "delta": (True, False), "contribution": (True, False)}

_RC = {
    "figure.figsize": (7.0, 4.5),
    "figure.dpi": 100,
    "savefig.dpi": 100,
    "font.family": "DejaVu Sans",
    "svg.hashsalt": "forkscope-plots",
    "axes.grid": True,
    "grid.alpha": 0.3,
}


class PlotError(Exception):
    """Bad plot specification or unusable input/output file."""


@dataclass(frozen=True)
class PlotSpec:
    kind: str
    inputs: tuple[str, ...]
    output: str
    log_x: bool | None = None   # None: kind default
    log_y: bool | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PlotError(f"unknown plot kind {self.kind!r}; expected one of {KINDS}")
        if not self.inputs:
            raise PlotError("at least one input CSV is required")


@dataclass
class Series:
    label: str
    header: list[str]
    x: list[int] = field(default_factory=list)
    y: list[float] = field(default_factory=list)


def read_series(path: str, allowed_headers: list[list[str]]) -> Series:
    p = Path(path)
    if not p.is_file():
        raise PlotError(f"input CSV not found: {path}")
    with open(p, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise PlotError(f"{path}: empty CSV") from None
        if header not in allowed_headers:
            raise PlotError(
                f"{path}: unexpected header {header!r}; expected one of {allowed_headers}"
            )
        series = Series(label=p.stem, header=header)
        for row in reader:
            if len(row) != 2:
                raise PlotError(f"{path}:{reader.line_num}: expected 2 fields, got {len(row)}")
            try:
                series.x.append(int(row[0]))
                series.y.append(float(row[1]))
            except ValueError:
                raise PlotError(f"{path}:{reader.line_num}: non-numeric row {row!r}") from None
    return series


def render(spec: PlotSpec) -> Path:
    """Render `spec` and return the written image path."""
    series = [read_series(path, _HEADERS[spec.kind]) for path in spec.inputs]
    log_x, log_y = _DEFAULT_LOG[spec.kind]
    log_x = spec.log_x if spec.log_x is not None else log_x
    log_y = spec.log_y if spec.log_y is not None else log_y

    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        try:
            if spec.kind == "ccdf":
                for s in series:
                    ax.step(s.x, s.y, where="post", marker="o", label=s.label)
                ax.set_ylabel("origins in clusters of size >= x")
            elif spec.kind == "delta":
                ax.axhline(0.0, color="0.4", linewidth=0.8)
                for s in series:
                    ax.plot(s.x, s.y, marker="o", label=s.label)
                ax.set_ylabel("deltaO")
            else:
                ax.axhline(0.0, color="0.4", linewidth=0.8)
                for s in series:
                    if s.header == ["size", "deltaO"]:
                        ax.plot(s.x, s.y, marker=".", label=s.label)
                    else:
                        ax.scatter(s.x, s.y, marker="o", zorder=3, label=s.label)
                ax.set_ylabel("origins")
            ax.set_xlabel("cluster size")
            if log_x:
                ax.set_xscale("log")
            if log_y:
                ax.set_yscale("log")
            if len(series) > 1:
                ax.legend()
            fig.tight_layout()
            out = Path(spec.output)
            try:
                # Empty metadata keeps dates and tool versions out of the
                # file so re-renders are byte-identical.
                fig.savefig(out, metadata=_clean_metadata(out.suffix))
            except OSError as e:
                raise PlotError(f"cannot write {spec.output}: {e}") from None
        finally:
            plt.close(fig)
    return Path(spec.output)


def _clean_metadata(suffix: str) -> dict:
    if suffix == ".png":
        return {"Software": None}
    if suffix == ".svg":
        return {"Date": None}
    return {}
