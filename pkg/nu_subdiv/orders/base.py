"""
Abstract base class for reduction orders.
"""
from __future__ import annotations

from abc import ABC, abstractmethod

from ..algebra import BetaPoly, Triple, poly_reducible_triples
from ..errors import ReductionError


class ReductionOrder(ABC):
    """
    Strategy choosing the next reduction of a polynomial.

    Reductions are applied polynomial-wide, so the choice only depends on the
    current polynomial.  Subclasses must return a triple that is reducible in
    at least one stored monomial.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Registry name of the order."""
        pass

    @abstractmethod
    def next_triple(self, poly: BetaPoly) -> Triple:
        """
        Pick the next reduction.

        Args:
            poly: a polynomial that is not yet reduced

        Returns:
            ``(i, j, k)`` such that ``x_ij * x_jk`` divides some stored monomial
        """
        pass

    @staticmethod
    def _candidates(poly: BetaPoly) -> list[Triple]:
        triples = poly_reducible_triples(poly)
        if not triples:
            raise ReductionError("polynomial is already reduced")
        return triples

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"
