"""Seeded random reduction order."""
from __future__ import annotations

import random

from ..algebra import BetaPoly, Triple
from .base import ReductionOrder


class SeededRandomOrder(ReductionOrder):
    """Picks a reducible triple uniformly at random from a seeded generator.

    Two orders built with the same seed make the same choices on the same
    polynomials.
    """

    def __init__(self, seed: int) -> None:
        self.seed = seed
        self._rng = random.Random(seed)

    @property
    def name(self) -> str:
        return "random"

    def next_triple(self, poly: BetaPoly) -> Triple:
        return self._rng.choice(self._candidates(poly))
