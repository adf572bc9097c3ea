"""
The β-subdivision algebra.

Generators ``x_ij`` (i ≠ j) commute; monomials are square-free.  The
reduction relation is

    x_ij · x_jk  →  x_ik · x_ij  +  x_jk · x_ik  +  β · x_ik      (i ≠ k)

and a reduction at ``(i, j, k)`` rewrites every term of a polynomial that
contains both ``x_ij`` and ``x_jk``.  With ``simple=True`` the β branch is
dropped, which is the same as working at β = 0.

Polynomials are immutable; every operation returns a new :class:`BetaPoly`.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, Iterable, Iterator, Mapping, Optional

from .errors import ReductionError
from .graph import BIDIRECTIONAL, MixedGraph

if TYPE_CHECKING:
    from .orders import ReductionOrder

_GENERATOR_RE = re.compile(r"^x(?:(\d)(\d)|(\d+)_(\d+))$")
_TERM_RE = re.compile(r"^(?:(\d+)\s*\*\s*)?(?:β(?:\^(\d+))?\s*\*?\s*)?(.*)$")

Triple = tuple[int, int, int]


@dataclass(frozen=True, order=True)
class Generator:
    """The generator ``x_ij``; ``x_ij`` and ``x_ji`` are different generators."""

    i: int
    j: int

    def __post_init__(self) -> None:
        if self.i < 1 or self.j < 1:
            raise ReductionError(f"generator x_{self.i},{self.j} needs inner vertices (labels >= 1)")
        if self.i == self.j:
            raise ReductionError(f"generator x_{self.i}{self.j} needs two distinct vertices")

    @classmethod
    def parse(cls, text: str) -> "Generator":
        match = _GENERATOR_RE.match(text.strip())
        if not match:
            raise ReductionError(f"cannot parse generator '{text}'")
        digits = [g for g in match.groups() if g is not None]
        return cls(int(digits[0]), int(digits[1]))

    def __str__(self) -> str:
        if self.i < 10 and self.j < 10:
            return f"x{self.i}{self.j}"
        return f"x{self.i}_{self.j}"


@dataclass(frozen=True, order=True)
class Monomial:
    """A square-free product of generators, kept sorted."""

    gens: tuple[Generator, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.gens))
        if len(set(ordered)) != len(ordered):
            raise ReductionError(f"monomial {self._text(ordered)} is not square-free")
        object.__setattr__(self, "gens", ordered)

    @classmethod
    def of(cls, *pairs: tuple[int, int] | Generator) -> "Monomial":
        return cls(tuple(g if isinstance(g, Generator) else Generator(*g) for g in pairs))

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        text = text.strip()
        if text in ("", "1"):
            return cls()
        return cls(tuple(Generator.parse(part) for part in text.split("*")))

    @property
    def degree(self) -> int:
        return len(self.gens)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((g.i, g.j) for g in self.gens)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, tuple):
            item = Generator(*item)
        return item in self.gens

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def without(self, *gens: Generator) -> "Monomial":
        return Monomial(tuple(g for g in self.gens if g not in gens))

    def times(self, *gens: Generator) -> "Monomial":
        return Monomial(self.gens + gens)

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(g for g in self.gens if g in other.gens))

    def vertices(self) -> set[int]:
        return {v for g in self.gens for v in (g.i, g.j)}

    @staticmethod
    def _text(gens: Iterable[Generator]) -> str:
        return "*".join(str(g) for g in gens) or "1"

    def __str__(self) -> str:
        return self._text(self.gens)


TermKey = tuple[Monomial, int]


@dataclass(frozen=True)
class BetaPoly:
    """β-graded polynomial: ``(monomial, β-exponent) → integer coefficient``.

    Zero coefficients are never stored.
    """

    _terms: tuple[tuple[Monomial, int, int], ...] = field(default=())

    @classmethod
    def from_terms(cls, terms: Mapping[TermKey, int] | Iterable[tuple[Monomial, int, int]]) -> "BetaPoly":
        totals: Counter = Counter()
        items = terms.items() if isinstance(terms, Mapping) else (((m, b), c) for m, b, c in terms)
        for (monomial, beta), coef in items:
            if beta < 0:
                raise ReductionError("β-exponents must be nonnegative")
            totals[(monomial, beta)] += coef
        return cls(tuple(sorted((m, b, c) for (m, b), c in totals.items() if c != 0)))

    @classmethod
    def monomial(cls, m: Monomial, beta: int = 0) -> "BetaPoly":
        return cls.from_terms({(m, beta): 1})

    @classmethod
    def parse(cls, text: str) -> "BetaPoly":
        """Parse the text form produced by ``str()``, e.g. ``x12*x23 + β*x13``."""
        terms: Counter = Counter()
        for chunk in text.split("+"):
            chunk = chunk.strip()
            if not chunk or chunk == "0":
                continue
            match = _TERM_RE.match(chunk)
            coef = int(match.group(1)) if match.group(1) else 1
            if "β" in chunk:
                beta = int(match.group(2)) if match.group(2) else 1
            else:
                beta = 0
            terms[(Monomial.parse(match.group(3) or "1"), beta)] += coef
        return cls.from_terms(terms)

    @property
    def terms(self) -> dict[TermKey, int]:
        return {(m, b): c for m, b, c in self._terms}

    def items(self) -> Iterator[tuple[Monomial, int, int]]:
        return iter(self._terms)

    def monomials(self) -> list[Monomial]:
        return [m for m, _, _ in self._terms]

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "BetaPoly") -> "BetaPoly":
        merged = Counter(self.terms)
        merged.update(other.terms)
        return BetaPoly.from_terms(merged)

    def at_beta_zero(self) -> "BetaPoly":
        """P(β=0): drop every term carrying a positive β-exponent."""
        return BetaPoly(tuple(t for t in self._terms if t[1] == 0))

    def degree_profile(self) -> dict[int, int]:
        """Number of terms (with multiplicity) per monomial degree."""
        profile: Counter = Counter()
        for m, _, c in self._terms:
            profile[m.degree] += c
        return dict(sorted(profile.items()))

    @property
    def max_degree(self) -> int:
        return max((m.degree for m, _, _ in self._terms), default=0)

    def top_degree_terms(self) -> list[Monomial]:
        """β-free monomials of maximal degree."""
        top = self.max_degree
        return [m for m, b, _ in self._terms if b == 0 and m.degree == top]

    def coefficients(self) -> set[int]:
        return {c for _, _, c in self._terms}

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        ordered = sorted(self._terms, key=lambda t: (t[1], -t[0].degree, t[0]))
        parts = []
        for monomial, beta, coef in ordered:
            factors = []
            if coef != 1:
                factors.append(str(coef))
            if beta == 1:
                factors.append("β")
            elif beta > 1:
                factors.append(f"β^{beta}")
            if monomial.degree or not factors:
                factors.append(str(monomial))
            parts.append("*".join(factors))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Reductions
# ---------------------------------------------------------------------------

def monomial_of_graph(g: MixedGraph) -> Monomial:
    """M(G): one generator per inner edge, following the direction of flow.

    Raises:
        ReductionError: on a bidirectional edge or on parallel edges.
    """
    gens = []
    for edge in g.inner_edges:
        if edge.orientation is BIDIRECTIONAL:
            raise ReductionError(
                f"edge ({edge.tail},{edge.head}) is bidirectional; M(G) needs oriented edges"
            )
        gens.append(Generator(*edge.generator()))
    if len(set(gens)) != len(gens):
        raise ReductionError("graph has parallel edges; M(G) needs a simple graph")
    return Monomial(tuple(gens))


def reducible_triples(m: Monomial) -> list[Triple]:
    """All ``(i, j, k)`` with ``x_ij`` and ``x_jk`` in *m* and ``i != k``."""
    outgoing: dict[int, list[int]] = {}
    for g in m.gens:
        outgoing.setdefault(g.i, []).append(g.j)
    triples = [
        (g.i, g.j, k)
        for g in m.gens
        for k in outgoing.get(g.j, ())
        if k != g.i
    ]
    return sorted(triples)


def poly_reducible_triples(p: BetaPoly) -> list[Triple]:
    """Distinct reducible triples over all stored monomials, sorted."""
    return sorted({t for m in p.monomials() for t in reducible_triples(m)})


def is_reduced(p: BetaPoly) -> bool:
    return not any(reducible_triples(m) for m in p.monomials())


def is_alternating(m: Monomial) -> bool:
    """True if no vertex is both the head of one generator and the tail of another."""
    tails = {g.i for g in m.gens}
    heads = {g.j for g in m.gens}
    return not tails & heads


def _check_triple(triple: Triple) -> tuple[Generator, Generator, Generator]:
    i, j, k = triple
    if len({i, j, k}) != 3:
        raise ReductionError(f"reduction triple {triple} needs three distinct vertices")
    return Generator(i, j), Generator(j, k), Generator(i, k)


def reduce_monomial(m: Monomial, triple: Triple, *, simple: bool = False) -> list[tuple[Monomial, int]]:
    """Successors of *m* at *triple* as ``(monomial, added β-exponent)`` pairs.

    A monomial without the pair ``x_ij, x_jk`` is returned unchanged.
    """
    first, second, joined = _check_triple(triple)
    if first not in m or second not in m:
        return [(m, 0)]
    rest = m.without(first, second)
    if joined in rest:
        raise ReductionError(
            f"reducing {m} at {triple} would square {joined}; the monomial is out of contract"
        )
    successors = [(rest.times(joined, first), 0), (rest.times(second, joined), 0)]
    if not simple:
        successors.append((rest.times(joined), 1))
    return successors


def reduce_at(p: BetaPoly, triple: Triple, *, simple: bool = False) -> BetaPoly:
    """Rewrite every term of *p* containing ``x_ij · x_jk``."""
    result: Counter = Counter()
    for monomial, beta, coef in p.items():
        for successor, extra in reduce_monomial(monomial, triple, simple=simple):
            result[(successor, beta + extra)] += coef
    return BetaPoly.from_terms(result)


@dataclass(frozen=True)
class ReductionStep:
    triple: Triple
    rule: str  # "full" or "simple"


@dataclass(frozen=True)
class Reduction:
    """Outcome of :func:`reduce_to_normal_form`, with the audit log of chosen triples."""

    start: BetaPoly
    normal_form: BetaPoly
    steps: tuple[ReductionStep, ...]

    @property
    def triples(self) -> list[Triple]:
        return [step.triple for step in self.steps]


def reduce_to_normal_form(
    p: BetaPoly,
    order: "ReductionOrder",
    *,
    simple: bool = False,
    max_steps: int = 10_000,
    observer: Optional[Callable[[BetaPoly], None]] = None,
) -> Reduction:
    """Reduce *p* until no monomial has a reducible triple.

    *observer*, when given, is called with every intermediate polynomial.

    Raises:
        ReductionError: if more than *max_steps* reductions are needed.
    """
    rule = "simple" if simple else "full"
    current = p
    steps: list[ReductionStep] = []
    while not is_reduced(current):
        if len(steps) >= max_steps:
            raise ReductionError(f"reduction did not terminate within {max_steps} steps")
        triple = order.next_triple(current)
        current = reduce_at(current, triple, simple=simple)
        steps.append(ReductionStep(triple, rule))
        if observer is not None:
            observer(current)
    return Reduction(p, current, tuple(steps))


def edge_length(i: int, j: int, n: int, variant: str = "span") -> int:
    """Cyclic length of the generator ``x_ij`` among ``n`` labels.

    ``span`` is ``(j - i) mod n``; ``complement`` is ``(i + n - j) mod n``.
    """
    if i == j:
        raise ReductionError("edge length needs two distinct vertices")
    if variant == "span":
        return (j - i) % n
    if variant == "complement":
        return (i + n - j) % n
    raise ReductionError(f"unknown length variant '{variant}'")


def longest_pair_at(p: BetaPoly, j: int, n: int, variant: str = "span") -> Triple:
    """Longest incoming then longest outgoing generator at middle vertex *j*.

    Ties on both lengths (possible only with degenerate lengths) go to the
    smallest ``(i, k)``.
    """
    candidates = [t for t in poly_reducible_triples(p) if t[1] == j]
    if not candidates:
        raise ReductionError(f"no reducible pair has middle vertex {j}")
    return min(
        candidates,
        key=lambda t: (-edge_length(t[0], j, n, variant), -edge_length(j, t[2], n, variant), t[0], t[2]),
    )


def rho_len_next(p: BetaPoly, n: int, variant: str = "span") -> Triple:
    """The ρ_len choice: the longest pair at the smallest middle vertex."""
    triples = poly_reducible_triples(p)
    if not triples:
        raise ReductionError("polynomial is already reduced")
    return longest_pair_at(p, min(t[1] for t in triples), n, variant)


# ---------------------------------------------------------------------------
# Reduction trees
# ---------------------------------------------------------------------------

@dataclass
class ReductionNode:
    monomial: Monomial
    beta: int = 0
    triple: Optional[Triple] = None
    children: list["ReductionNode"] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list["ReductionNode"]:
        if self.is_leaf:
            return [self]
        return [leaf for child in self.children for leaf in child.leaves()]

    def depth(self) -> int:
        return 0 if self.is_leaf else 1 + max(child.depth() for child in self.children)

    def leaf_degree_profile(self) -> dict[int, int]:
        return dict(sorted(Counter(leaf.monomial.degree for leaf in self.leaves()).items()))

    def as_poly(self) -> BetaPoly:
        return BetaPoly.from_terms(
            Counter((leaf.monomial, leaf.beta) for leaf in self.leaves())
        )


def reduction_tree(
    m: Monomial,
    order: "ReductionOrder",
    *,
    simple: bool = False,
    max_steps: int = 10_000,
) -> ReductionNode:
    """Rooted tree of the reduction of *m*, rebuilt by replaying the step log."""
    reduction = reduce_to_normal_form(
        BetaPoly.monomial(m), order, simple=simple, max_steps=max_steps
    )
    root = ReductionNode(m)
    for step in reduction.steps:
        for leaf in root.leaves():
            successors = reduce_monomial(leaf.monomial, step.triple, simple=simple)
            if len(successors) == 1:
                continue
            leaf.triple = step.triple
            leaf.children = [ReductionNode(s, leaf.beta + extra) for s, extra in successors]
    return root
