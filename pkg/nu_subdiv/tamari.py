"""
Arcs, (I, J)-trees and the cyclic ν-Tamari complex.

An arc is a pair ``(i, j)`` with ``i in I`` and ``j in J``; it is increasing
when ``i < j`` and minimal when ``i == j``.  Arcs are drawn from the letter
``E_i`` to the letter ``N_j`` of ν̄.  Letters are placed on a line with
``E_k`` just before ``N_k`` (position keys ``2k`` and ``2k + 1``), so two arcs
meeting at a valley ``k``, one ending at ``N_k`` and one starting at
``E_k``, interleave.

Maximal sets of pairwise non-crossing arcs are (I, J)-trees.  In the cyclic
setting every arc may wrap around the end of ν̄, crossing is cyclic
crossing, and each cyclic (I, J)-tree has exactly one maximal arc, which
marks a cyclic peak of ν̄.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .algebra import Generator, Monomial
from .errors import SizeGuardError, TamariError
from .flow import Route
from .path import IndexedPath


@dataclass(frozen=True, order=True)
class Arc:
    i: int
    j: int

    @property
    def is_increasing(self) -> bool:
        return self.i < self.j

    @property
    def is_minimal(self) -> bool:
        return self.i == self.j

    @property
    def keys(self) -> tuple[int, int]:
        """Line positions of ``E_i`` and ``N_j``."""
        return 2 * self.i, 2 * self.j + 1

    def __str__(self) -> str:
        return f"({self.i},{self.j})"


def _cyclic_configuration(a: int, b: int, c: int, d: int) -> bool:
    """One-sided cyclic crossing test for arcs with keys (a, b) and (c, d)."""
    return (
        a < c < b < d
        or d < a < c < b
        or b < d < a < c
        or c < b < d < a
        or a < d < c < b
        or b < a < d < c
    )


def cyclically_crosses(first: Arc, second: Arc) -> bool:
    """True if the two arcs cross when ν̄ is read cyclically."""
    a, b = first.keys
    c, d = second.keys
    return _cyclic_configuration(a, b, c, d) or _cyclic_configuration(c, d, a, b)


def crosses(first: Arc, second: Arc) -> bool:
    """Crossing of increasing (or minimal) arcs: ``i < i' <= j < j'`` up to swapping."""
    for arc in (first, second):
        if arc.i > arc.j:
            raise TamariError(f"arc {arc} is not increasing")
    a, b = first.keys
    c, d = second.keys
    return a < c < b < d or c < a < d < b


@dataclass(frozen=True)
class IJForest:
    """A set of pairwise non-crossing arcs, sorted by ``(i, j)``."""

    arcs: tuple[Arc, ...]
    cyclic: bool = True

    def __post_init__(self) -> None:
        ordered = tuple(sorted(set(self.arcs)))
        object.__setattr__(self, "arcs", ordered)
        if not self.cyclic and any(arc.i > arc.j for arc in ordered):
            raise TamariError("increasing forests only hold arcs with i <= j")
        cross = cyclically_crosses if self.cyclic else crosses
        for x, first in enumerate(ordered):
            for second in ordered[x + 1:]:
                if cross(first, second):
                    raise TamariError(f"arcs {first} and {second} cross")

    def __iter__(self):
        return iter(self.arcs)

    def __len__(self) -> int:
        return len(self.arcs)

    def __contains__(self, arc: object) -> bool:
        return arc in self.arcs

    def as_pairs(self) -> list[list[int]]:
        return [[arc.i, arc.j] for arc in self.arcs]

    def __str__(self) -> str:
        return "{" + ", ".join(str(arc) for arc in self.arcs) + "}"


def all_arcs(p: IndexedPath, *, cyclic: bool = True) -> list[Arc]:
    arcs = [Arc(i, j) for i in p.I for j in p.J]
    return arcs if cyclic else [arc for arc in arcs if arc.i <= arc.j]


def _maximal_forests(p: IndexedPath, cyclic: bool, max_size: int) -> list[IJForest]:
    if p.a + p.b > max_size:
        raise SizeGuardError(
            f"path of size {p.a + p.b} exceeds the tree enumeration guard ({max_size})"
        )
    cross = cyclically_crosses if cyclic else crosses
    arcs = all_arcs(p, cyclic=cyclic)
    compatible = nx.Graph()
    compatible.add_nodes_from(arcs)
    compatible.add_edges_from(
        (first, second)
        for x, first in enumerate(arcs)
        for second in arcs[x + 1:]
        if not cross(first, second)
    )
    trees = [IJForest(tuple(clique), cyclic=cyclic) for clique in nx.find_cliques(compatible)]
    return sorted(trees, key=lambda t: t.arcs)


def enumerate_cyclic_ij_trees(p: IndexedPath, *, max_size: int = 12) -> list[IJForest]:
    """All maximal sets of pairwise cyclically non-crossing arcs."""
    return _maximal_forests(p, True, max_size)


def enumerate_increasing_ij_trees(p: IndexedPath, *, max_size: int = 12) -> list[IJForest]:
    """All maximal sets of pairwise non-crossing arcs with ``i <= j``."""
    return _maximal_forests(p, False, max_size)


def flip(first: IJForest, second: IJForest) -> tuple[Arc, Arc] | None:
    """``(removed, added)`` if the trees differ in exactly one arc, else None."""
    removed = set(first.arcs) - set(second.arcs)
    added = set(second.arcs) - set(first.arcs)
    if len(removed) != 1 or len(added) != 1:
        return None
    return removed.pop(), added.pop()


def increasing_flip_covers(trees: Sequence[IJForest]) -> list[tuple[IJForest, IJForest]]:
    """Cover pairs ``T < T'``: T' replaces one arc (i, j) of T by (i', j') with i < i'."""
    covers = []
    for x, first in enumerate(trees):
        for second in trees[x + 1:]:
            exchange = flip(first, second)
            if exchange is None:
                continue
            old, new = exchange
            if old.i < new.i:
                covers.append((first, second))
            elif new.i < old.i:
                covers.append((second, first))
    return covers


def nu_tamari_covers(p: IndexedPath, *, max_size: int = 12) -> list[tuple[IJForest, IJForest]]:
    """Cover relations of the ν-Tamari lattice, on increasing (I, J)-trees."""
    return increasing_flip_covers(enumerate_increasing_ij_trees(p, max_size=max_size))


def hasse_graph(trees: Sequence[IJForest], covers: Iterable[tuple[IJForest, IJForest]]) -> nx.DiGraph:
    """Directed Hasse diagram on tree positions; each node carries its tree and rank.

    The rank of a tree is the number of flips separating it from a minimal tree.
    """
    position = {tree: k for k, tree in enumerate(trees)}
    diagram = nx.DiGraph()
    for k, tree in enumerate(trees):
        diagram.add_node(k, tree=tree)
    diagram.add_edges_from((position[low], position[high]) for low, high in covers)
    for rank, generation in enumerate(nx.topological_generations(diagram)):
        for node in generation:
            diagram.nodes[node]["rank"] = rank
    return diagram


def phi_route_to_arc(route: Route) -> Arc:
    """Φ on routes: the route entering at ``E_i`` and leaving at ``N_j`` gives (i, j)."""
    if not route.source_label or not route.sink_label:
        raise TamariError("route has an unlabeled source or sink edge")
    i, j = route.label_pair()
    return Arc(i, j)


def phi_monomial(m: Monomial, p: IndexedPath, *, cyclic: bool = True) -> IJForest:
    """Φ on facet monomials: one arc per generator plus the minimal arcs (k, k), k in V."""
    arcs = [Arc(g.i, g.j) for g in m.gens] + [Arc(k, k) for k in p.V]
    return IJForest(tuple(arcs), cyclic=cyclic)


def tree_to_monomial(tree: IJForest) -> Monomial:
    """Inverse of :func:`phi_monomial`: drop the minimal arcs."""
    return Monomial(tuple(Generator(arc.i, arc.j) for arc in tree.arcs if not arc.is_minimal))


def is_maximal_arc(arc: Arc, p: IndexedPath) -> bool:
    """``(1, n)``, or ``j < i`` with no label strictly between j and i."""
    if arc.i == 1 and arc.j == p.n:
        return True
    return arc.j < arc.i and arc.i - arc.j == 1


def maximal_arc(tree: IJForest, p: IndexedPath) -> Arc:
    """The unique maximal arc of a cyclic (I, J)-tree."""
    found = [arc for arc in tree.arcs if is_maximal_arc(arc, p)]
    if len(found) != 1:
        raise TamariError(f"expected one maximal arc in {tree}, found {len(found)}")
    return found[0]


def peak_of_arc(arc: Arc, p: IndexedPath) -> int:
    """Cyclic peak (1-based) whose ``(E, N)`` index pair is *arc*."""
    for k in range(1, p.w + 1):
        if p.peak_arc(k) == (arc.i, arc.j):
            return k
    raise TamariError(f"arc {arc} is not the arc of a cyclic peak of {p}")
