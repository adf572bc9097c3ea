"""
Reduction orders for the subdivision algebra.
"""
from __future__ import annotations

from typing import Callable, Optional

from .base import ReductionOrder
from .lex import LexOrder
from .rho_len import LENGTH_VARIANTS, RhoLenOrder
from .seeded import SeededRandomOrder


def _rho_len(n: Optional[int], length_variant: str, seed: Optional[int]) -> ReductionOrder:
    if n is None:
        raise ValueError("rho-len needs the number of labels n")
    return RhoLenOrder(n, length_variant)


def _lex(n: Optional[int], length_variant: str, seed: Optional[int]) -> ReductionOrder:
    return LexOrder()


def _random(n: Optional[int], length_variant: str, seed: Optional[int]) -> ReductionOrder:
    if seed is None:
        raise ValueError("the random order needs an explicit seed")
    return SeededRandomOrder(seed)


_ORDERS: dict[str, Callable[..., ReductionOrder]] = {
    "rho-len": _rho_len,
    "lex": _lex,
    "random": _random,
}


def get_order(
    name: str,
    *,
    n: Optional[int] = None,
    length_variant: str = "span",
    seed: Optional[int] = None,
) -> ReductionOrder:
    """Build the reduction order registered under *name*."""
    if name not in _ORDERS:
        raise ValueError(
            f"Unknown reduction order: {name}. Supported: {list(_ORDERS.keys())}"
        )
    return _ORDERS[name](n, length_variant, seed)


def list_orders() -> list[str]:
    """Return list of registered reduction order names."""
    return list(_ORDERS.keys())


__all__ = [
    "LENGTH_VARIANTS",
    "LexOrder",
    "ReductionOrder",
    "RhoLenOrder",
    "SeededRandomOrder",
    "get_order",
    "list_orders",
]
