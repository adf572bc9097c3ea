"""
Routes and unit flows on augmented mixed graphs.

A route is a simple source → sink path that only uses allowed moves (see
:meth:`nu_subdiv.graph.Edge.moves`).  Its signed characteristic vector is a
vertex of the flow polytope of the graph.  For the partial augmentation of
G_B(ν) every route is pinned down by the labels of its first and last edge,
``E_i`` and ``N_j``, and the pair ``(i, j)`` names a vertex ``(e_i, e_j)`` of
Δ_a × Δ_b.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .errors import GraphError
from .graph import BACKWARD, FORWARD, MixedGraph, bidirectional_nu_graph, is_acyclic, partial_augment
from .path import IndexedPath


@dataclass(frozen=True)
class Route:
    """A simple source → sink path.

    ``edge_ids`` are positions in the graph's edge tuple and ``signs`` hold
    +1 where an edge is walked tail → head and -1 where it is walked head → tail.
    """

    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]
    signs: tuple[int, ...]
    edge_count: int
    source_label: Optional[str] = None
    sink_label: Optional[str] = None

    def label_pair(self) -> tuple[int, int]:
        """``(i, j)`` read off the ``E_i`` source edge and the ``N_j`` sink edge."""
        if not self.source_label or not self.sink_label:
            raise GraphError("route has an unlabeled source or sink edge")
        if self.source_label[0] != "E" or self.sink_label[0] != "N":
            raise GraphError(f"unexpected route labels {self.source_label}, {self.sink_label}")
        return int(self.source_label[1:]), int(self.sink_label[1:])

    @property
    def uses_backward_move(self) -> bool:
        return -1 in self.signs


@dataclass(frozen=True)
class SignedFlow:
    """An exact rational edge vector of a graph."""

    values: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, position: int) -> Fraction:
        return self.values[position]


def _moves_by_vertex(g: MixedGraph) -> dict[int, list[tuple[int, int, int]]]:
    """Outgoing moves per vertex as ``(next vertex, edge position, sign)``, sorted."""
    table: dict[int, list[tuple[int, int, int]]] = {v: [] for v in g.vertices}
    for position, edge in enumerate(g.edges):
        for start, end, sign in edge.moves():
            table[start].append((end, position, sign))
    for moves in table.values():
        moves.sort()
    return table


def enumerate_routes(g: MixedGraph) -> list[Route]:
    """All routes of an augmented graph, ordered by vertex sequence.

    Raises:
        GraphError: if *g* is not augmented, or if an inner vertex reachable
            from the source has no allowed move at all.
    """
    if not g.is_augmented:
        raise GraphError("routes need an augmented graph (with source and sink)")
    table = _moves_by_vertex(g)
    routes: list[Route] = []
    vertices = [g.source]
    edge_ids: list[int] = []
    signs: list[int] = []

    def walk(u: int) -> None:
        if u == g.sink:
            first, last = g.edges[edge_ids[0]], g.edges[edge_ids[-1]]
            routes.append(
                Route(
                    tuple(vertices),
                    tuple(edge_ids),
                    tuple(signs),
                    len(g.edges),
                    first.label,
                    last.label,
                )
            )
            return
        if not table[u]:
            raise GraphError(f"vertex {u} has no continuation towards the sink")
        for nxt, position, sign in table[u]:
            if nxt in vertices:
                continue
            vertices.append(nxt)
            edge_ids.append(position)
            signs.append(sign)
            walk(nxt)
            vertices.pop()
            edge_ids.pop()
            signs.pop()

    walk(g.source)
    routes.sort(key=lambda r: (r.vertices, r.edge_ids))
    return routes


def signed_vector(route: Route) -> SignedFlow:
    """Characteristic vector of *route*: ±1 on its edges, 0 elsewhere."""
    values = [Fraction(0)] * route.edge_count
    for position, sign in zip(route.edge_ids, route.signs):
        values[position] = Fraction(sign)
    return SignedFlow(tuple(values))


def convex_combination(flows: Sequence[SignedFlow], weights: Sequence[Fraction]) -> SignedFlow:
    """Weighted sum of flows; the weights are expected to sum to one."""
    if len(flows) != len(weights) or not flows:
        raise GraphError("need one weight per flow")
    length = len(flows[0])
    total = [Fraction(0)] * length
    for flow, weight in zip(flows, weights):
        if len(flow) != length:
            raise GraphError("flows index different edge sets")
        for position, value in enumerate(flow.values):
            total[position] += weight * value
    return SignedFlow(tuple(total))


def check_flow(v: SignedFlow, g: MixedGraph) -> bool:
    """True if *v* is a unit s → t flow on *g* respecting edge orientations."""
    if len(v) != len(g.edges):
        raise GraphError(f"flow has {len(v)} entries but the graph has {len(g.edges)} edges")
    if not g.is_augmented:
        raise GraphError("flow check needs an augmented graph")

    netflow = {vertex: Fraction(0) for vertex in g.vertices}
    for edge, value in zip(g.edges, v.values):
        if edge.orientation is FORWARD and value < 0:
            return False
        if edge.orientation is BACKWARD and value > 0:
            return False
        netflow[edge.tail] += value
        netflow[edge.head] -= value

    for vertex, value in netflow.items():
        expected = 1 if vertex == g.source else -1 if vertex == g.sink else 0
        if value != expected:
            return False
    return True


def route_to_product_vertex(route: Route, p: IndexedPath) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(e_i, e_j)``: unit vectors indexed by I (length a+1) and J (length b+1)."""
    i, j = route.label_pair()
    if i not in p.I or j not in p.J:
        raise GraphError(f"route labels E{i}, N{j} do not belong to {p}")
    e_i = tuple(int(k == i) for k in p.I)
    e_j = tuple(int(k == j) for k in p.J)
    return e_i, e_j


def polytope_vertices(g: MixedGraph) -> frozenset[SignedFlow]:
    """Vertices of the flow polytope of *g*: the signed vectors of its routes.

    Raises:
        GraphError: if *g* has a directed cycle (the unit flows are unbounded).
    """
    if not is_acyclic(g):
        raise GraphError("graph has a directed cycle; its flow polytope is unbounded")
    return frozenset(signed_vector(r) for r in enumerate_routes(g))


def find_collinear_triple(flows: Iterable[SignedFlow]) -> Optional[tuple[SignedFlow, ...]]:
    """First triple of flows lying on one line, if any."""
    for x, y, z in combinations(list(flows), 3):
        dy = [b - a for a, b in zip(x.values, y.values)]
        dz = [c - a for a, c in zip(x.values, z.values)]
        pivot = next((k for k, d in enumerate(dy) if d != 0), None)
        if pivot is None:
            return (x, y, z)
        ratio = dz[pivot] / dy[pivot]
        if all(c == ratio * d for c, d in zip(dz, dy)):
            return (x, y, z)
    return None


# ---------------------------------------------------------------------------
# Cells of the simplex subdivision, read inside G̃_B(ν)
# ---------------------------------------------------------------------------

def ambient_graph(p: IndexedPath) -> MixedGraph:
    """G̃_B(ν), the augmented bidirectional ν-graph."""
    return partial_augment(bidirectional_nu_graph(p), p)


def spine_positions(g: MixedGraph, p: IndexedPath) -> list[int]:
    """Edge positions of (v_k, v_{k+1}), k = 1..w-1, inside ``ambient_graph(p)``."""
    positions = {(e.tail, e.head): k for k, e in enumerate(g.edges) if g.is_inner_edge(e)}
    return [positions[(u, v)] for u, v in zip(p.V, p.V[1:])]


def in_cell(route: Route, spine: Sequence[int], i: int) -> bool:
    """Whether a route of G̃_B(ν) is a vertex of the cell Q_i.

    For i < w the route never walks e_i = (v_i, v_{i+1}) forward, and a
    route walking any edge backward walks e_i backward.  For i = w no edge
    is walked backward.
    """
    if i == len(spine) + 1:
        return not route.uses_backward_move
    walked = dict(zip(route.edge_ids, route.signs))
    e_i = spine[i - 1]
    if walked.get(e_i) == 1:
        return False
    return not route.uses_backward_move or walked.get(e_i) == -1


def ambient_cell_routes(p: IndexedPath, cells: Iterable[int]) -> list[Route]:
    """Routes of G̃_B(ν) that are vertices of every cell Q_i, i in *cells*."""
    cells = sorted(set(cells))
    if not cells or not all(1 <= i <= p.w for i in cells):
        raise GraphError(f"cells must be a nonempty subset of 1..{p.w}")
    g = ambient_graph(p)
    spine = spine_positions(g, p)
    return [r for r in enumerate_routes(g) if all(in_cell(r, spine, i) for i in cells)]


def separating_functional(p: IndexedPath, i: int, j: int) -> Mapping[int, int]:
    """Linear functional (edge position → coefficient) separating Q_i from Q_j.

    For i < j < w it is x_{e_i} - x_{e_j}; for j = w it is x_{e_i}.  It is
    non-positive on Q_i and non-negative on Q_j.
    """
    if not 1 <= i < j <= p.w:
        raise GraphError(f"need 1 <= i < j <= {p.w}, got ({i}, {j})")
    spine = spine_positions(ambient_graph(p), p)
    if j == p.w:
        return {spine[i - 1]: 1}
    return {spine[i - 1]: 1, spine[j - 1]: -1}


def evaluate(functional: Mapping[int, int], flow: SignedFlow) -> Fraction:
    return sum((coef * flow[pos] for pos, coef in functional.items()), Fraction(0))
