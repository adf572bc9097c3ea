"""
Subdivisions and triangulations of Δ_a × Δ_b built from a lattice path.

The pipeline is:

1. :func:`build_p_nu` sums ``β^{|S|-1} M(∩_{i∈S} G(ν, i))`` over the nonempty
   sets ``S`` of cells;
2. a reduction order rewrites P_ν to a reduced form
   (:func:`nu_subdiv.algebra.reduce_to_normal_form`);
3. :func:`triangulation_from_reduced` turns every β-free top-degree monomial
   into a facet: the vertices ``(e_i, e_j)`` of its generators plus the cone
   points ``(e_k, e_k)``, k in V.  Lower-degree or β-graded terms become inner
   faces.

Verification helpers certify the result exactly: determinants for
unimodularity, barycentric coordinates for coverage and interior
disjointness, ν-Catalan numbers for cell volumes, and the Φ map onto
cyclic (I, J)-trees.
"""
from __future__ import annotations

import random
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Optional

import networkx as nx

from ._geometry import (
    BarycentricSolver,
    Point,
    ProductVertex,
    affinely_independent,
    point_chart,
    product_barycenter,
    random_product_point,
    simplex_determinant,
)
from .algebra import (
    BetaPoly,
    Monomial,
    Reduction,
    is_alternating,
    is_reduced,
    monomial_of_graph,
    reduce_to_normal_form,
)
from .config import Config
from .errors import DegenerateSimplexError, NuSubdivError, ReductionError, SizeGuardError
from .flow import (
    ambient_cell_routes,
    ambient_graph,
    check_flow,
    enumerate_routes,
    evaluate,
    find_collinear_triple,
    route_to_product_vertex,
    separating_functional,
    signed_vector,
)
from .graph import cell_graph, intersect_cell_graphs, nu_graph, partial_augment
from .orders import ReductionOrder, RhoLenOrder, SeededRandomOrder, get_order
from .path import (
    IndexedPath,
    cyclic_shift,
    enumerate_paths_weakly_above,
    index_path,
    nu_catalan,
    paths_up_to,
    shifted_catalan_numbers,
    strip,
)
from .tamari import (
    enumerate_cyclic_ij_trees,
    increasing_flip_covers,
    maximal_arc,
    peak_of_arc,
    phi_monomial,
)


@dataclass(frozen=True)
class Simplex:
    """A simplex of Δ_a × Δ_b named by its vertices ``(i, j)``.

    ``monomial`` and ``beta`` record the term of the reduced polynomial the
    simplex comes from; ``I`` and ``J`` fix the ambient product.
    """

    vertices: tuple[ProductVertex, ...]
    monomial: Monomial
    beta: int
    I: tuple[int, ...]  # noqa: E741
    J: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    def unit_vectors(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        return [
            (tuple(int(k == i) for k in self.I), tuple(int(k == j) for k in self.J))
            for i, j in self.vertices
        ]


@dataclass(frozen=True)
class Triangulation:
    path: IndexedPath
    facets: tuple[Simplex, ...]
    faces: tuple[Simplex, ...] = ()
    cone_points: tuple[ProductVertex, ...] = ()
    dual_edges: tuple[tuple[int, int], ...] = ()

    @property
    def facet_monomials(self) -> list[Monomial]:
        return [facet.monomial for facet in self.facets]


def _simplex(m: Monomial, beta: int, p: IndexedPath) -> Simplex:
    cone = [(k, k) for k in p.V]
    vertices = tuple(sorted(set(m.pairs()) | set(cone)))
    return Simplex(vertices, m, beta, p.I, p.J)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def build_p_nu(p: IndexedPath) -> BetaPoly:
    """P_ν: one term ``β^{|S|-1} M(∩_{i∈S} G(ν, i))`` per nonempty S ⊆ [w]."""
    terms: dict[tuple[Monomial, int], int] = {}
    for size in range(1, p.w + 1):
        for cells in combinations(range(1, p.w + 1), size):
            m = monomial_of_graph(intersect_cell_graphs(p, cells))
            terms[(m, size - 1)] = terms.get((m, size - 1), 0) + 1
    return BetaPoly.from_terms(terms)


def default_order(p: IndexedPath, length_variant: str = "span") -> ReductionOrder:
    return RhoLenOrder(p.n, length_variant)


def reduce_p_nu(
    p: IndexedPath,
    order: Optional[ReductionOrder] = None,
    *,
    simple: bool = True,
    max_steps: int = 10_000,
) -> Reduction:
    """Reduce P_ν (or P_ν at β = 0 when *simple*) under *order* (ρ_len by default)."""
    start = build_p_nu(p)
    if simple:
        start = start.at_beta_zero()
    order = order or default_order(p)
    return reduce_to_normal_form(start, order, simple=simple, max_steps=max_steps)


def triangulation_from_reduced(r: BetaPoly, p: IndexedPath) -> Triangulation:
    """Facets from the β-free top-degree terms; every other term is an inner face.

    Raises:
        ReductionError: if *r* is not reduced.
    """
    if not is_reduced(r):
        raise ReductionError("triangulations are read from reduced polynomials only")
    top = p.n - 1
    facets, faces = [], []
    for monomial, beta, _ in r.items():
        simplex = _simplex(monomial, beta, p)
        if beta == 0 and monomial.degree == top:
            facets.append(simplex)
        else:
            faces.append(simplex)
    triangulation = Triangulation(
        path=p,
        facets=tuple(facets),
        faces=tuple(faces),
        cone_points=tuple((k, k) for k in p.V),
    )
    graph = dual_graph(triangulation)
    return Triangulation(
        path=p,
        facets=triangulation.facets,
        faces=triangulation.faces,
        cone_points=triangulation.cone_points,
        dual_edges=tuple(sorted(graph.edges())),
    )


def triangulate(
    p: IndexedPath,
    order: Optional[ReductionOrder] = None,
    *,
    simple: bool = True,
    max_steps: int = 10_000,
) -> Triangulation:
    """P_ν → reduced form → triangulation."""
    reduction = reduce_p_nu(p, order, simple=simple, max_steps=max_steps)
    return triangulation_from_reduced(reduction.normal_form, p)


def dual_graph(t: Triangulation) -> nx.Graph:
    """Facet adjacency: facets whose monomials differ in a single generator."""
    graph = nx.Graph()
    for k, facet in enumerate(t.facets):
        graph.add_node(k, monomial=str(facet.monomial))
    for x, y in combinations(range(len(t.facets)), 2):
        first, second = set(t.facets[x].monomial.gens), set(t.facets[y].monomial.gens)
        if len(first ^ second) == 2:
            graph.add_edge(x, y)
    return graph


def face_codimension(face: Simplex, t: Triangulation) -> int:
    """Codimension of an inner face: facet degree minus the face's degree."""
    return t.path.n - 1 - face.monomial.degree


# ---------------------------------------------------------------------------
# Simplex subdivision
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplexSubdivision:
    """The cells Q_1..Q_w and their intersections, as sets of product vertices."""

    path: IndexedPath
    cells: dict[int, frozenset[ProductVertex]]
    faces: dict[frozenset[int], frozenset[ProductVertex]]

    def dual_complex(self) -> list[frozenset[int]]:
        """Cell sets with a nonempty common face; all of them for a w-simplex."""
        return [cells for cells, vertices in self.faces.items() if vertices]


def _route_vertices(g) -> frozenset[ProductVertex]:
    return frozenset(r.label_pair() for r in enumerate_routes(g))


def simplex_subdivision(p: IndexedPath) -> SimplexSubdivision:
    """Vertex sets of every cell Q_i and of every intersection ∩_{i∈S} Q_i."""
    cells = {i: _route_vertices(partial_augment(cell_graph(p, i), p)) for i in range(1, p.w + 1)}
    faces = {}
    for size in range(1, p.w + 1):
        for chosen in combinations(range(1, p.w + 1), size):
            graph = partial_augment(intersect_cell_graphs(p, chosen), p)
            faces[frozenset(chosen)] = _route_vertices(graph)
    return SimplexSubdivision(p, cells, faces)


# ---------------------------------------------------------------------------
# Certification
# ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CoverReport:
    samples: int
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class CellVolumeReport:
    counts: dict[int, int]
    expected: dict[int, int]
    total: int
    expected_total: int

    @property
    def passed(self) -> bool:
        return self.counts == self.expected and self.total == self.expected_total

    def mismatches(self) -> list[str]:
        lines = [
            f"cell {i}: {self.counts.get(i)} facets, expected {self.expected[i]}"
            for i in self.expected
            if self.counts.get(i) != self.expected[i]
        ]
        if self.total != self.expected_total:
            lines.append(f"total {self.total}, expected {self.expected_total}")
        return lines


@dataclass
class VerificationReport:
    path: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))


def verify_unimodular(s: Simplex) -> bool:
    """True iff the simplex has normalized volume one.

    Raises:
        DegenerateSimplexError: if the simplex is degenerate.
    """
    return abs(simplex_determinant(s.vertices, s.I, s.J)) == 1


def verify_cover(
    t: Triangulation,
    trials: int = 1000,
    seed: int = 1,
    *,
    points: Iterable[Point] = (),
) -> CoverReport:
    """Probe random rational points: each lies in >= 1 facet and in <= 1 facet interior.

    *points* are probed in addition to the *trials* random ones.
    """
    p = t.path
    solvers = [BarycentricSolver(f.vertices, p.I, p.J) for f in t.facets]
    rng = random.Random(seed)
    probes = list(points) + [random_product_point(rng, p.a, p.b) for _ in range(trials)]
    report = CoverReport(samples=len(probes))
    for point in probes:
        local = point_chart(point, p.I, p.J)
        containing, interior = [], []
        for k, solver in enumerate(solvers):
            inside, strictly = solver.locate(local)
            if inside:
                containing.append(k)
            if strictly:
                interior.append(k)
        if not containing or len(interior) > 1:
            report.violations.append(
                {"point": [str(x) for x in point], "containing": containing, "interior": interior}
            )
    return report


def verify_cell_volumes(
    p: IndexedPath, order_factory: Optional[Callable[[IndexedPath], ReductionOrder]] = None
) -> CellVolumeReport:
    """Triangulate each cell on its own and compare facet counts with ν-Catalan numbers."""
    make_order = order_factory or default_order
    counts, expected = {}, {}
    for i in range(1, p.w + 1):
        start = BetaPoly.monomial(monomial_of_graph(cell_graph(p, i)))
        reduced = reduce_to_normal_form(start, make_order(p), simple=True).normal_form
        counts[i] = len(reduced.top_degree_terms())
        expected[i] = nu_catalan(strip(cyclic_shift(p, i)))
    return CellVolumeReport(counts, expected, sum(counts.values()), comb(p.a + p.b, p.a))


def is_staircase(t: Triangulation) -> bool:
    """True if every facet is a monotone lattice path in the grid I × J.

    Both orientations of the J axis are tried; one has to fit all facets.
    """
    p = t.path
    for j_order in (p.J, tuple(reversed(p.J))):
        def chain(facet: Simplex) -> bool:
            points = sorted((p.I.index(i), j_order.index(j)) for i, j in facet.vertices)
            return points[0] == (0, 0) and all(
                (x2 - x1, y2 - y1) in ((1, 0), (0, 1))
                for (x1, y1), (x2, y2) in zip(points, points[1:])
            )

        if all(chain(facet) for facet in t.facets):
            return True
    return False


def check_subdivision(p: IndexedPath) -> list[str]:
    """Problems found in the simplex subdivision; an empty list means it checks out.

    Each intersection ∩_{i∈S} Q_i, read as the cell filter inside G̃_B(ν),
    must have the routes of ∩_{i∈S} G̃(ν, i) as vertices, and the separating
    functionals must have opposite signs on opposing cells.
    """
    problems = []
    subdivision = simplex_subdivision(p)
    for cells, vertices in subdivision.faces.items():
        ambient = frozenset(r.label_pair() for r in ambient_cell_routes(p, cells))
        if ambient != vertices:
            problems.append(f"cells {sorted(cells)}: vertex sets differ")
        if not vertices:
            problems.append(f"cells {sorted(cells)}: empty intersection")
    union = frozenset().union(*subdivision.cells.values())
    if len(union) != len(p.I) * len(p.J):
        problems.append("cells do not cover every vertex of the product")

    g = ambient_graph(p)
    flows = {r.label_pair(): signed_vector(r) for r in enumerate_routes(g)}
    for i, j in combinations(range(1, p.w + 1), 2):
        functional = separating_functional(p, i, j)
        if any(evaluate(functional, flows[v]) > 0 for v in subdivision.cells[i]):
            problems.append(f"functional ({i},{j}) is positive on Q_{i}")
        if any(evaluate(functional, flows[v]) < 0 for v in subdivision.cells[j]):
            problems.append(f"functional ({i},{j}) is negative on Q_{j}")
    return problems


def check_routes(p: IndexedPath, *, collinearity_limit: int = 6) -> list[str]:
    """Problems with the vertex description of the flow polytope of G̃_B(ν)."""
    problems = []
    g = ambient_graph(p)
    routes = enumerate_routes(g)
    if len(routes) != len(p.I) * len(p.J):
        problems.append(f"{len(routes)} routes, expected {len(p.I) * len(p.J)}")
    flows = [signed_vector(r) for r in routes]
    if not all(check_flow(v, g) for v in flows):
        problems.append("a route vector violates flow conservation")
    if len(set(flows)) != len(flows):
        problems.append("two routes share a signed vector")
    images = {route_to_product_vertex(r, p) for r in routes}
    if len(images) != len(routes):
        problems.append("two routes map to the same vertex of the product")
    if p.a + p.b <= collinearity_limit and find_collinear_triple(flows) is not None:
        problems.append("three route vectors are collinear")
    return problems


def _random_orders(p: IndexedPath, count: int, seed: int) -> list[ReductionOrder]:
    return [SeededRandomOrder(seed + k) for k in range(count)]


def check_size(p: IndexedPath, limit: int, force: bool, what: str) -> None:
    size = p.a + p.b
    if size <= limit:
        return
    if not force:
        raise SizeGuardError(f"path of size {size} exceeds the {what} guard ({limit}); use --force")
    warnings.warn(
        f"path of size {size} exceeds the {what} guard ({limit}); continuing because of force",
        RuntimeWarning,
        stacklevel=3,
    )


def _run_check(report: VerificationReport, name: str, check: Callable[[], tuple[bool, str]]) -> None:
    """Record one check; a domain error inside it becomes a failed check."""
    try:
        passed, detail = check()
    except SizeGuardError:
        raise
    except NuSubdivError as exc:
        report.add(name, False, str(exc))
        return
    report.add(name, passed, detail)


def _problems(problems: list[str]) -> tuple[bool, str]:
    return not problems, "; ".join(problems)


def _random_order_counts(p: IndexedPath, config: Config, volume: int) -> tuple[bool, str]:
    counts = []
    for order in _random_orders(p, config.verify.random_orders, config.verify.seed):
        reduced = reduce_p_nu(p, order, max_steps=config.reduction.max_steps).normal_form
        counts.append(len(reduced.top_degree_terms()))
    return all(count == volume for count in counts), f"facet counts {counts}"


def _catalan_identity(
    p: IndexedPath, shifted: tuple[int, ...], volume: int, enumeration_limit: int
) -> tuple[bool, str]:
    """Σ_k Cat(ν(k)) = C(a+b, a); each Cat is also counted by brute force within the guard."""
    detail = f"{list(shifted)} sum to {sum(shifted)}"
    if p.a + p.b <= enumeration_limit:
        listed = [
            len(enumerate_paths_weakly_above(strip(cyclic_shift(p, k)), max_size=enumeration_limit))
            for k in range(1, p.w + 1)
        ]
        if listed != list(shifted):
            return False, f"{detail}; enumeration gives {listed}"
    return sum(shifted) == volume, detail


def _unimodular(t: Triangulation, workers: int) -> tuple[bool, str]:
    with ThreadPoolExecutor(max_workers=workers) as pool:
        flags = list(pool.map(verify_unimodular, t.facets))
    return all(flags), f"{flags.count(False)} non-unimodular facets"


def _inner_faces(t: Triangulation) -> tuple[bool, str]:
    p = t.path
    ok = all(
        len(face.vertices) == face.monomial.degree + p.w
        and affinely_independent(face.vertices, p.I, p.J)
        for face in t.faces
    )
    return ok, f"{len(t.faces)} inner faces"


def _cover(t: Triangulation, trials: int, seed: int) -> tuple[bool, str]:
    p = t.path
    cover = verify_cover(t, trials, seed, points=[product_barycenter(p.a, p.b)])
    return cover.passed, f"{len(cover.violations)} violations in {cover.samples} probes"


def _cell_volumes(p: IndexedPath, length_variant: str) -> tuple[bool, str]:
    volumes = verify_cell_volumes(p, lambda q: RhoLenOrder(q.n, length_variant))
    return volumes.passed, "; ".join(volumes.mismatches()) or str(volumes.counts)


def _tamari_correspondence(p: IndexedPath, t: Triangulation, trees: list) -> tuple[bool, str]:
    phi = {phi_monomial(m, p) for m in t.facet_monomials}
    return phi == set(trees), f"{len(trees)} cyclic (I,J)-trees"


def _maximal_arcs(p: IndexedPath, trees: list, shifted: tuple[int, ...]) -> tuple[bool, str]:
    peaks = [peak_of_arc(maximal_arc(tree, p), p) for tree in trees]
    sizes = [peaks.count(k) for k in range(1, p.w + 1)]
    return sizes == list(shifted), f"class sizes {sizes}"


def _dual_vs_hasse(t: Triangulation, trees: list) -> tuple[bool, str]:
    hasse = nx.Graph()
    hasse.add_nodes_from(range(len(trees)))
    position = {tree: k for k, tree in enumerate(trees)}
    hasse.add_edges_from((position[x], position[y]) for x, y in increasing_flip_covers(trees))
    return nx.is_isomorphic(dual_graph(t), hasse), "dual graph vs Hasse diagram"


_TAMARI_CHECKS = ("tamari correspondence", "maximal arcs", "dual graph")


def verify_all(p: IndexedPath, config: Optional[Config] = None) -> VerificationReport:
    """Run every certification on one path and collect the outcomes.

    Checks never raise on a bad triangulation: a domain error is recorded as
    a failed check. Only the size guard propagates.
    """
    config = config or Config()
    check_size(p, config.guards.max_verify_size, config.guards.force, "verification")
    verify = config.verify
    variant = config.reduction.length_variant
    report = VerificationReport(path=strip(p).steps)
    volume = comb(p.a + p.b, p.a)

    try:
        order = get_order(config.reduction.order, n=p.n, length_variant=variant, seed=config.reduction.seed)
        reduction = reduce_p_nu(p, order, simple=True, max_steps=config.reduction.max_steps)
        t = triangulation_from_reduced(reduction.normal_form, p)
    except SizeGuardError:
        raise
    except NuSubdivError as exc:
        report.add("facet count", False, str(exc))
        return report
    report.add("facet count", len(t.facets) == volume, f"{len(t.facets)} facets, expected {volume}")
    report.add(
        "coefficients",
        reduction.normal_form.coefficients() <= {1},
        "all coefficients of the reduced form are 1",
    )
    _run_check(report, "random orders", lambda: _random_order_counts(p, config, volume))

    shifted = shifted_catalan_numbers(p)
    _run_check(
        report,
        "catalan identity",
        lambda: _catalan_identity(p, shifted, volume, config.guards.max_enumeration_size),
    )

    _run_check(report, "unimodular", lambda: _unimodular(t, verify.workers))
    _run_check(report, "inner faces", lambda: _inner_faces(t))
    _run_check(report, "cover", lambda: _cover(t, verify.trials, verify.seed))
    _run_check(report, "cell volumes", lambda: _cell_volumes(p, variant))

    try:
        rho_len = triangulate(p, RhoLenOrder(p.n, variant))
        trees = enumerate_cyclic_ij_trees(p, max_size=config.guards.max_construct_size)
    except SizeGuardError:
        raise
    except NuSubdivError as exc:
        for name in _TAMARI_CHECKS:
            report.add(name, False, str(exc))
    else:
        _run_check(report, "tamari correspondence", lambda: _tamari_correspondence(p, rho_len, trees))
        _run_check(report, "maximal arcs", lambda: _maximal_arcs(p, trees, shifted))
        _run_check(report, "dual graph", lambda: _dual_vs_hasse(rho_len, trees))

    _run_check(report, "subdivision", lambda: _problems(check_subdivision(p)))
    _run_check(report, "routes", lambda: _problems(check_routes(p)))
    return report


def verify_triangulation(t: Triangulation, trials: int = 1000, seed: int = 1) -> VerificationReport:
    """Certify a stand-alone triangulation (e.g. loaded from JSON)."""
    p = t.path
    report = VerificationReport(path=strip(p).steps)
    volume = comb(p.a + p.b, p.a)
    report.add("facet count", len(t.facets) == volume, f"{len(t.facets)} facets, expected {volume}")
    try:
        flags = [verify_unimodular(f) for f in t.facets]
        report.add("unimodular", all(flags), f"{flags.count(False)} non-unimodular facets")
    except DegenerateSimplexError as exc:
        report.add("unimodular", False, str(exc))
        return report
    _run_check(report, "cover", lambda: _cover(t, trials, seed))
    return report


def sweep(max_size: int, config: Optional[Config] = None) -> list[VerificationReport]:
    """:func:`verify_all` on every path with ``a + b <= max_size``, in input order."""
    config = config or Config()
    if max_size > config.guards.max_verify_size and not config.guards.force:
        raise SizeGuardError(
            f"sweep size {max_size} exceeds the verification guard "
            f"({config.guards.max_verify_size}); use --force"
        )
    paths = [index_path(nu) for nu in paths_up_to(max_size)]
    with ThreadPoolExecutor(max_workers=config.verify.workers) as pool:
        return list(pool.map(lambda q: verify_all(q, config), paths))


def top_degree_alternating(reduction: Reduction) -> bool:
    """True if every facet monomial of a reduced form is an alternating graph."""
    return all(is_alternating(m) for m in reduction.normal_form.top_degree_terms())


def m_of_nu_graph(p: IndexedPath) -> Monomial:
    """M(G(ν))."""
    return monomial_of_graph(nu_graph(p))
