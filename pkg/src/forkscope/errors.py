"""Exception types shared across the package."""

from __future__ import annotations


class ForkscopeError(Exception):
    """Base class for all errors raised by forkscope."""


class GraphBuildError(ForkscopeError):
    """The supplied nodes/edges violate the history-graph contract."""


class DatasetError(ForkscopeError):
    """A data file is malformed; carries the offending location."""

    def __init__(self, path: object, lineno: int, reason: str):
        self.path = str(path)
        self.lineno = lineno
        self.reason = reason
        super().__init__(f"{self.path}:{lineno}: {reason}")


class ForgeMetadataError(ForkscopeError):
    """Forge fork records do not form a forest (duplicate parents, cycles, self-forks)."""


class RepoIngestError(ForkscopeError):
    """A local repository could not be read."""


class SynthConfigError(ForkscopeError):
    """Invalid synthetic-corpus configuration."""


class CliqueThresholdError(ForkscopeError):
    """A brute-force enumeration was refused because the instance is too large."""
