"""Figure rendering for forkscope CSV outputs."""

from .render import KINDS, PlotError, PlotSpec, render

__all__ = ["KINDS", "PlotError", "PlotSpec", "render"]
