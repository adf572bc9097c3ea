"""
Mixed-orientation graphs built from a canonically indexed path.

Vertices are small integers.  Inner vertices are ``1..n``; once a graph is
augmented the source is ``0`` and the sink ``n + 1``.  Each edge carries one
of three orientations:

* ``FORWARD``: flow runs tail → head (coordinate ≥ 0),
* ``BACKWARD``: flow runs head → tail (coordinate ≤ 0),
* ``BIDIRECTIONAL``: either way (coordinate unconstrained).

Constructions provided here:

* :func:`nu_graph` - G(ν), a tree on ``[n]``;
* :func:`bidirectional_nu_graph` - G_B(ν), the spine over the valleys made
  bidirectional;
* :func:`cell_graph` / :func:`intersect_cell_graphs` - G(ν, i) and their
  edge-wise intersections;
* :func:`partial_augment` / :func:`full_augment` - source and sink edges;
* edge operations used to move between integrally equivalent graphs
  (:func:`contract_idle_edges`, :func:`reflect_backward_edge`,
  :func:`relabel`).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Mapping, Optional

import networkx as nx

from .errors import GraphError
from .path import IndexedPath

SOURCE = 0


class Orientation(Enum):
    FORWARD = "F"
    BACKWARD = "B"
    BIDIRECTIONAL = "Bi"


FORWARD = Orientation.FORWARD
BACKWARD = Orientation.BACKWARD
BIDIRECTIONAL = Orientation.BIDIRECTIONAL


@dataclass(frozen=True)
class Edge:
    """A directed edge with an orientation and an optional step label (``E3``, ``N4``)."""

    tail: int
    head: int
    orientation: Orientation = FORWARD
    label: Optional[str] = None

    def __post_init__(self) -> None:
        if self.tail == self.head:
            raise GraphError(f"loop at vertex {self.tail} is not allowed")

    @property
    def key(self) -> tuple[int, int, str]:
        """Identity of the edge ignoring its label."""
        return (self.tail, self.head, self.orientation.value)

    def moves(self) -> list[tuple[int, int, int]]:
        """Allowed traversals as ``(from, to, sign)`` triples."""
        if self.orientation is FORWARD:
            return [(self.tail, self.head, 1)]
        if self.orientation is BACKWARD:
            return [(self.head, self.tail, -1)]
        return [(self.tail, self.head, 1), (self.head, self.tail, -1)]

    def generator(self) -> tuple[int, int]:
        """Direction of flow as an ordered pair, the pair behind generator ``x_ij``."""
        if self.orientation is FORWARD:
            return (self.tail, self.head)
        if self.orientation is BACKWARD:
            return (self.head, self.tail)
        raise GraphError(f"bidirectional edge {self.tail}-{self.head} has no generator")


@dataclass(frozen=True)
class MixedGraph:
    """Directed multigraph with mixed orientations.

    ``sign_flips`` records the positions of edges whose flow coordinate was
    negated by :func:`reflect_backward_edge`.
    """

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    source: Optional[int] = None
    sink: Optional[int] = None
    sign_flips: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        known = set(self.vertices)
        for edge in self.edges:
            if edge.tail not in known or edge.head not in known:
                raise GraphError(f"edge ({edge.tail},{edge.head}) uses an unknown vertex")
            touches_terminal = (
                self.source in (edge.tail, edge.head) or self.sink in (edge.tail, edge.head)
            )
            if touches_terminal and edge.orientation is not FORWARD:
                raise GraphError("source and sink edges must be forward edges")

    @property
    def is_augmented(self) -> bool:
        return self.source is not None and self.sink is not None

    @property
    def inner_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if v not in (self.source, self.sink))

    def is_inner_edge(self, edge: Edge) -> bool:
        terminals = {self.source, self.sink} - {None}
        return edge.tail not in terminals and edge.head not in terminals

    @property
    def inner_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if self.is_inner_edge(e))

    def edges_with(self, orientation: Orientation) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.orientation is orientation)

    def out_degree(self, vertex: int) -> int:
        return sum(1 for e in self.edges if e.tail == vertex)

    def in_degree(self, vertex: int) -> int:
        return sum(1 for e in self.edges if e.head == vertex)

    def edge_keys(self) -> Counter:
        return Counter(e.key for e in self.inner_edges)

    def render_vertex(self, vertex: int) -> str | int:
        if vertex == self.source:
            return "s"
        if vertex == self.sink:
            return "t"
        return vertex


def _edge_order(edge: Edge) -> tuple:
    return (min(edge.tail, edge.head), max(edge.tail, edge.head), edge.orientation.value, edge.tail)


def _inner_graph(n: int, edges: Iterable[Edge]) -> MixedGraph:
    return MixedGraph(tuple(range(1, n + 1)), tuple(sorted(edges, key=_edge_order)))


# ---------------------------------------------------------------------------
# ν-graphs
# ---------------------------------------------------------------------------

def _nu_edge_pairs(p: IndexedPath) -> list[tuple[int, int]]:
    """Pairs (i, j), i < j, such that E_i … N_j is a subword whose valleys sit at i or j."""
    e_pos = {index: pos for pos, (step, index) in enumerate(p.letters) if step == "E"}
    n_pos = {index: pos for pos, (step, index) in enumerate(p.letters) if step == "N"}
    # valley_at[pos] = k when letters[pos], letters[pos+1] is E_k N_k
    valley_at = {
        pos: p.letters[pos][1]
        for pos in range(len(p.letters) - 1)
        if p.letters[pos][0] == "E" and p.letters[pos + 1][0] == "N"
    }
    pairs = []
    for i in p.I:
        for j in p.J:
            if j <= i:
                continue
            start, end = e_pos[i], n_pos[j]
            inside = (valley_at[pos] for pos in range(start, end) if pos in valley_at)
            if all(k in (i, j) for k in inside):
                pairs.append((i, j))
    return pairs


def nu_graph(p: IndexedPath) -> MixedGraph:
    """G(ν): forward edges (i, j) between E_i and N_j separated by no foreign valley."""
    return _inner_graph(p.n, (Edge(i, j) for i, j in _nu_edge_pairs(p)))


def bidirectional_nu_graph(p: IndexedPath) -> MixedGraph:
    """G_B(ν): G(ν) with every edge between two valleys made bidirectional."""
    valleys = set(p.V)
    edges = [
        Edge(i, j, BIDIRECTIONAL if i in valleys and j in valleys else FORWARD)
        for i, j in _nu_edge_pairs(p)
    ]
    return _inner_graph(p.n, edges)


def spine_edges(p: IndexedPath) -> tuple[tuple[int, int], ...]:
    """Consecutive valley pairs (v_k, v_{k+1}); the bidirectional path of G_B(ν)."""
    return tuple(zip(p.V, p.V[1:]))


def cycle_graph_edges(p: IndexedPath, i: Optional[int] = None) -> list[Edge]:
    """Edges of C_ν, or of C_ν(i) when *i* is given.

    C_ν has the forward edges (v_k, v_{k+1}) and a backward chord between
    v_1 and v_w traversed from v_w to v_1.  C_ν(i) drops the edge leaving v_i.
    """
    valleys = p.V
    w = len(valleys)
    if i is not None and not 1 <= i <= w:
        raise GraphError(f"cell index {i} out of range 1..{w}")
    edges = [Edge(valleys[k], valleys[k + 1]) for k in range(w - 1) if k + 1 != i]
    if w > 1 and i != w:
        edges.append(Edge(valleys[0], valleys[-1], BACKWARD))
    return edges


def cell_graph(p: IndexedPath, i: int) -> MixedGraph:
    """G(ν, i): G_B(ν) with its bidirectional path replaced by C_ν(i)."""
    cycle = cycle_graph_edges(p, i)
    kept = [e for e in bidirectional_nu_graph(p).edges if e.orientation is not BIDIRECTIONAL]
    return _inner_graph(p.n, kept + cycle)


def intersect_cell_graphs(p: IndexedPath, cells: Iterable[int]) -> MixedGraph:
    """Edge-wise intersection of the cell graphs G(ν, i) for i in *cells*."""
    cells = sorted(set(cells))
    if not cells:
        raise GraphError("intersection over an empty set of cells")
    common = Counter(e.key for e in cell_graph(p, cells[0]).edges)
    for i in cells[1:]:
        common &= Counter(e.key for e in cell_graph(p, i).edges)
    edges = [
        Edge(tail, head, Orientation(orientation))
        for (tail, head, orientation), count in common.items()
        for _ in range(count)
    ]
    return _inner_graph(p.n, edges)


# ---------------------------------------------------------------------------
# Augmentation
# ---------------------------------------------------------------------------

def _augment(
    g: MixedGraph, sources: Iterable[tuple[int, Optional[str]]], sinks: Iterable[tuple[int, Optional[str]]]
) -> MixedGraph:
    if g.is_augmented:
        raise GraphError("graph is already augmented")
    sink = max(g.vertices, default=0) + 1
    source_edges = [Edge(SOURCE, i, FORWARD, label) for i, label in sources]
    sink_edges = [Edge(j, sink, FORWARD, label) for j, label in sinks]
    return MixedGraph(
        (SOURCE,) + g.vertices + (sink,),
        g.edges + tuple(source_edges) + tuple(sink_edges),
        source=SOURCE,
        sink=sink,
        sign_flips=g.sign_flips,
    )


def partial_augment(g: MixedGraph, p: IndexedPath) -> MixedGraph:
    """G̃: source edges labeled E_i for i in I, sink edges labeled N_j for j in J."""
    return _augment(g, ((i, f"E{i}") for i in p.I), ((j, f"N{j}") for j in p.J))


def full_augment(g: MixedGraph) -> MixedGraph:
    """Ĝ: source and sink edges at every inner vertex (unlabeled)."""
    return _augment(g, ((v, None) for v in g.vertices), ((v, None) for v in g.vertices))


def simplex_product_graph(a: int, b: int) -> MixedGraph:
    """G_{a,b}: s → 1 with a+1 parallel edges, 1 → t with b+1 parallel edges."""
    if a < 0 or b < 0:
        raise GraphError("a and b must be nonnegative")
    edges = [Edge(SOURCE, 1, FORWARD, f"E{k}") for k in range(1, a + 2)]
    edges += [Edge(1, 2, FORWARD, f"N{k}") for k in range(1, b + 2)]
    return MixedGraph((SOURCE, 1, 2), tuple(edges), source=SOURCE, sink=2)


# ---------------------------------------------------------------------------
# Edge operations
# ---------------------------------------------------------------------------

def move_graph(g: MixedGraph) -> nx.DiGraph:
    """Directed graph of allowed moves; each arc stores the edge positions realizing it."""
    moves = nx.DiGraph()
    moves.add_nodes_from(g.vertices)
    for position, edge in enumerate(g.edges):
        for start, end, _ in edge.moves():
            if moves.has_edge(start, end):
                moves[start][end]["edges"].add(position)
            else:
                moves.add_edge(start, end, edges={position})
    return moves


def is_acyclic(g: MixedGraph) -> bool:
    """True if no simple directed cycle uses each edge at most once.

    A two-cycle only counts when two distinct edges realize it; walking a
    single bidirectional edge back and forth is not a cycle.
    """
    moves = move_graph(g)
    for cycle in nx.simple_cycles(moves):
        if len(cycle) > 2:
            return False
        if len(cycle) == 2:
            u, v = cycle
            there, back = moves[u][v]["edges"], moves[v][u]["edges"]
            if len(there | back) > 1:
                return False
    return True


def is_tree(g: MixedGraph) -> bool:
    """True if the inner edges form a spanning tree of the inner vertices."""
    undirected = nx.MultiGraph()
    undirected.add_nodes_from(g.inner_vertices)
    undirected.add_edges_from((e.tail, e.head) for e in g.inner_edges)
    return nx.is_tree(undirected) if undirected.number_of_nodes() else True


def relabel(g: MixedGraph, mapping: Mapping[int, int]) -> MixedGraph:
    """Rename inner vertices through *mapping*; terminals keep their ids."""
    def rename(v: int) -> int:
        return v if v in (g.source, g.sink) else mapping.get(v, v)

    vertices = tuple(sorted({rename(v) for v in g.vertices}))
    edges = tuple(replace(e, tail=rename(e.tail), head=rename(e.head)) for e in g.edges)
    return MixedGraph(vertices, edges, g.source, g.sink, g.sign_flips)


def reflect_backward_edge(g: MixedGraph, edge: Edge | int) -> MixedGraph:
    """Turn a backward edge into a forward edge with swapped endpoints.

    The flow coordinate of that edge changes sign; its position is appended
    to ``sign_flips``.
    """
    position = edge if isinstance(edge, int) else g.edges.index(edge)
    target = g.edges[position]
    if target.orientation is not BACKWARD:
        raise GraphError(f"edge ({target.tail},{target.head}) is not a backward edge")
    edges = list(g.edges)
    edges[position] = Edge(target.head, target.tail, FORWARD, target.label)
    return MixedGraph(g.vertices, tuple(edges), g.source, g.sink, g.sign_flips + (position,))


def reflect_all_backward(g: MixedGraph) -> MixedGraph:
    """Reflect every backward edge; the identity on graphs without one."""
    for position, edge in enumerate(g.edges):
        if edge.orientation is BACKWARD:
            g = reflect_backward_edge(g, position)
    return g


def _is_idle(g: MixedGraph, edge: Edge) -> bool:
    return g.out_degree(edge.tail) == 1 or g.in_degree(edge.head) == 1


def _contract(g: MixedGraph, position: int) -> MixedGraph:
    """Merge the endpoints of one inner edge into the smaller label."""
    edge = g.edges[position]
    keep, gone = sorted((edge.tail, edge.head))
    edges = []
    for k, e in enumerate(g.edges):
        if k == position:
            continue
        tail = keep if e.tail == gone else e.tail
        head = keep if e.head == gone else e.head
        if tail == head:
            raise GraphError(f"contracting ({edge.tail},{edge.head}) would create a loop")
        edges.append(replace(e, tail=tail, head=head))
    vertices = tuple(v for v in g.vertices if v != gone)
    return MixedGraph(vertices, tuple(edges), g.source, g.sink)


def contract_idle_edges(g: MixedGraph, *, contract_bidirectional: bool = True) -> MixedGraph:
    """Repeatedly contract bidirectional and idle inner edges.

    An edge is idle when it is the only edge leaving its tail or the only
    edge entering its head.  Source and sink edges are never contracted.
    Bidirectional edges go first.
    """
    while True:
        candidates = [
            k for k, e in enumerate(g.edges)
            if g.is_inner_edge(e) and contract_bidirectional and e.orientation is BIDIRECTIONAL
        ]
        if not candidates:
            candidates = [
                k for k, e in enumerate(g.edges)
                if g.is_inner_edge(e) and e.orientation is not BIDIRECTIONAL and _is_idle(g, e)
            ]
        if not candidates:
            return g
        g = _contract(g, candidates[0])


def reduce_graph(
    g: MixedGraph, triple: tuple[int, int, int]
) -> tuple[MixedGraph, MixedGraph, MixedGraph]:
    """Graph form of one reduction at ``(i, j, k)``.

    Returns the three graphs obtained by replacing the edge j → k by i → k,
    replacing i → j by i → k, and replacing both by i → k.
    """
    i, j, k = triple
    flows = {e.generator(): pos for pos, e in enumerate(g.edges) if g.is_inner_edge(e)}
    if (i, j) not in flows or (j, k) not in flows:
        raise GraphError(f"graph has no pair of edges {i}->{j}, {j}->{k}")
    first, second = flows[(i, j)], flows[(j, k)]
    new = Edge(i, k)

    def swap(drop: set[int], add: list[Edge]) -> MixedGraph:
        kept = [e for pos, e in enumerate(g.edges) if pos not in drop]
        return MixedGraph(g.vertices, tuple(kept + add), g.source, g.sink)

    return (
        swap({second}, [new]),
        swap({first}, [new]),
        swap({first, second}, [new]),
    )


def is_noncrossing_graph(pairs: Iterable[tuple[int, int]]) -> bool:
    """True if no two edges strictly interleave as intervals on the label line."""
    intervals = [tuple(sorted(pair)) for pair in pairs]
    for x, (a, b) in enumerate(intervals):
        for c, d in intervals[x + 1:]:
            if a < c < b < d or c < a < d < b:
                return False
    return True
