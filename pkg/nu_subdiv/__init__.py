from __future__ import annotations

from importlib.metadata import PackageNotFoundError, version

from .api import graph, index, reduce, routes, sweep, tamari, triangulate, verify
from .config import Config, GuardConfig, OutputConfig, ReductionConfig, VerifyConfig
from .path import IndexedPath, LatticePath, index_path

try:
    __version__ = version("nu-subdiv")
except PackageNotFoundError:
    __version__ = "0.0.0"

__all__ = [
    "__version__",
    "Config",
    "GuardConfig",
    "IndexedPath",
    "LatticePath",
    "OutputConfig",
    "ReductionConfig",
    "VerifyConfig",
    "graph",
    "index",
    "index_path",
    "reduce",
    "routes",
    "sweep",
    "tamari",
    "triangulate",
    "verify",
]
