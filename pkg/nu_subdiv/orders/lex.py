"""Lexicographic reduction order."""
from __future__ import annotations

from ..algebra import BetaPoly, Triple
from .base import ReductionOrder


class LexOrder(ReductionOrder):
    """Always reduces the lexicographically smallest reducible triple."""

    @property
    def name(self) -> str:
        return "lex"

    def next_triple(self, poly: BetaPoly) -> Triple:
        return self._candidates(poly)[0]
