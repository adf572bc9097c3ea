"""
Exception hierarchy for nu-subdiv.

Every error raised on bad input derives from ``ValueError`` so callers that
already catch ``ValueError`` keep working; the resource guard derives from
``RuntimeError`` because the input is valid, only too large.
"""
from __future__ import annotations


class NuSubdivError(Exception):
    """Base class for all nu-subdiv errors."""


class PathError(NuSubdivError, ValueError):
    """Malformed lattice path, wrong closure shape, or cyclic shift out of range."""


class GraphError(NuSubdivError, ValueError):
    """Invalid edge or graph operation (cycles, stuck routes, bad cell index)."""


class ReductionError(NuSubdivError, ValueError):
    """Invalid generator or reduction step, or a step bound that was exceeded."""


class TamariError(NuSubdivError, ValueError):
    """Arc set that is not a (cyclic) forest, or an arc lookup that failed."""


class DegenerateSimplexError(NuSubdivError, ValueError):
    """Simplex whose vertices are affinely dependent (determinant zero)."""


class ValidationError(NuSubdivError, ValueError):
    """Serialized input (JSON) that does not match the expected shape.

    ``location`` points at the offending part of the document, e.g.
    ``facets[3].vertices``.
    """

    def __init__(self, message: str, location: str = "") -> None:
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class SizeGuardError(NuSubdivError, RuntimeError):
    """Instance exceeds a configured size guard (override with ``force``)."""
