"""
Length reduction order ρ_len.

At every step the smallest middle vertex ``j`` with a reducible pair is
chosen, and at ``j`` the pair formed by the longest incoming generator
``x_ij`` and then the longest outgoing generator ``x_jk``.  Lengths are
cyclic over the ``n`` labels of ν̄ (see :func:`nu_subdiv.algebra.edge_length`).

The chosen pair is the longest pair at ``j`` in every monomial it divides,
so this order belongs to the longest-pairs-first family.  Passing
``middle_rng`` keeps the longest-pair rule but draws the middle vertex at
random, which gives other members of that family.
"""
from __future__ import annotations

import random
from typing import Optional

from ..algebra import BetaPoly, Triple, longest_pair_at, rho_len_next
from ..errors import ReductionError
from .base import ReductionOrder

LENGTH_VARIANTS = ("span", "complement")


class RhoLenOrder(ReductionOrder):
    def __init__(
        self,
        n: int,
        length_variant: str = "span",
        middle_rng: Optional[random.Random] = None,
    ) -> None:
        if n < 1:
            raise ReductionError("ρ_len needs the number of labels n >= 1")
        if length_variant not in LENGTH_VARIANTS:
            raise ReductionError(
                f"Unknown length variant: {length_variant}. Supported: {list(LENGTH_VARIANTS)}"
            )
        self.n = n
        self.length_variant = length_variant
        self.middle_rng = middle_rng

    @property
    def name(self) -> str:
        return "rho-len"

    def next_triple(self, poly: BetaPoly) -> Triple:
        if self.middle_rng is None:
            return rho_len_next(poly, self.n, self.length_variant)
        middles = sorted({t[1] for t in self._candidates(poly)})
        j = self.middle_rng.choice(middles)
        return longest_pair_at(poly, j, self.n, self.length_variant)
