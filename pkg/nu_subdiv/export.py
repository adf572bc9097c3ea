"""
JSON, DOT and text renderings of every object the CLI emits.

Each JSON writer has a loader that validates the document and raises
:class:`~nu_subdiv.errors.ValidationError` with the location of the first
problem.  DOT output is plain ``digraph``/``graph`` text with stable node
ids, so it is byte-identical across runs.
"""
from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

import networkx as nx

from .algebra import BetaPoly, Generator, Monomial, ReductionStep
from .errors import NuSubdivError, ValidationError
from .flow import Route
from .graph import Edge, MixedGraph, Orientation
from .path import IndexedPath, LatticePath, canonical_index, strip
from .tamari import Arc, IJForest
from .triangulate import Simplex, Triangulation, VerificationReport, dual_graph

_DOT_DIR = {Orientation.FORWARD: "forward", Orientation.BACKWARD: "back", Orientation.BIDIRECTIONAL: "both"}
_ARROW = {Orientation.FORWARD: "→", Orientation.BACKWARD: "←", Orientation.BIDIRECTIONAL: "↔"}


def dumps(data: Any) -> str:
    """Compact but readable JSON with a stable key order."""
    return json.dumps(data, indent=2, ensure_ascii=False)


def _expect(condition: bool, message: str, location: str) -> None:
    if not condition:
        raise ValidationError(message, location)


def _int_pair(value: Any, location: str) -> tuple[int, int]:
    _expect(
        isinstance(value, list) and len(value) == 2 and all(isinstance(x, int) for x in value),
        "expected a pair of integers",
        location,
    )
    return value[0], value[1]


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

def indexed_path_to_json(p: IndexedPath) -> dict:
    return {
        "letters": [[step, index] for step, index in p.letters],
        "I": list(p.I),
        "J": list(p.J),
        "V": list(p.V),
        "cyclic_peaks": [[p.letters[n][1], p.letters[e][1]] for n, e in p.cyclic_peaks],
    }


def indexed_path_from_json(data: Any) -> IndexedPath:
    _expect(isinstance(data, dict), "expected an object", "")
    letters = data.get("letters")
    _expect(isinstance(letters, list) and letters, "expected a nonempty list", "letters")
    parsed = []
    for k, letter in enumerate(letters):
        where = f"letters[{k}]"
        _expect(isinstance(letter, list) and len(letter) == 2, "expected [step, index]", where)
        _expect(letter[0] in ("E", "N") and isinstance(letter[1], int), "bad letter", where)
        parsed.append((letter[0], letter[1]))
    try:
        p = IndexedPath(tuple(parsed))
    except NuSubdivError as exc:
        raise ValidationError(str(exc), "letters") from exc
    for key in ("I", "J", "V"):
        if key in data:
            _expect(list(getattr(p, key)) == data[key], "does not match the letters", key)
    return p


def indexed_path_to_text(p: IndexedPath) -> str:
    def braces(values: Iterable[int]) -> str:
        return "{" + ",".join(str(v) for v in values) + "}"

    peaks = ", ".join(
        f"N{p.letters[n][1]}E{p.letters[e][1]}" for n, e in p.cyclic_peaks
    )
    return "\n".join(
        [
            f"ν̄ = {p.render()}",
            f"I = {braces(p.I)}",
            f"J = {braces(p.J)}",
            f"V = {braces(p.V)}",
            f"w = {p.w}, n = {p.n}",
            f"cyclic peaks: {peaks}",
        ]
    )


# ---------------------------------------------------------------------------
# Graphs and routes
# ---------------------------------------------------------------------------

def graph_to_json(g: MixedGraph) -> dict:
    return {
        "vertices": [g.render_vertex(v) for v in g.vertices],
        "edges": [
            {
                "tail": g.render_vertex(e.tail),
                "head": g.render_vertex(e.head),
                "dir": e.orientation.value,
                "label": e.label,
            }
            for e in g.edges
        ],
    }


def graph_from_json(data: Any) -> MixedGraph:
    _expect(isinstance(data, dict), "expected an object", "")
    vertices = data.get("vertices")
    _expect(isinstance(vertices, list), "expected a list", "vertices")
    inner = [v for v in vertices if v not in ("s", "t")]
    _expect(all(isinstance(v, int) and v > 0 for v in inner), "inner vertices must be positive integers", "vertices")
    sink_id = max(inner, default=0) + 1
    names = {"s": 0, "t": sink_id}

    def vertex(value: Any, where: str) -> int:
        if value in names:
            return names[value]
        _expect(isinstance(value, int), "unknown vertex", where)
        return value

    edges = []
    for k, raw in enumerate(data.get("edges") or []):
        where = f"edges[{k}]"
        _expect(isinstance(raw, dict), "expected an object", where)
        try:
            orientation = Orientation(raw.get("dir"))
        except ValueError as exc:
            raise ValidationError("dir must be F, B or Bi", f"{where}.dir") from exc
        edges.append(
            Edge(vertex(raw.get("tail"), f"{where}.tail"), vertex(raw.get("head"), f"{where}.head"), orientation, raw.get("label"))
        )
    augmented = "s" in vertices and "t" in vertices
    ids = tuple(vertex(v, "vertices") for v in vertices)
    try:
        return MixedGraph(ids, tuple(edges), 0 if augmented else None, sink_id if augmented else None)
    except NuSubdivError as exc:
        raise ValidationError(str(exc), "edges") from exc


def graph_to_dot(g: MixedGraph, name: str = "G") -> str:
    """DOT text; orientation is drawn with ``dir`` and terminal edges are dashed."""
    lines = [f"digraph {name} {{", "\trankdir=LR;"]
    for v in g.vertices:
        shown = g.render_vertex(v)
        shape = "box" if v in (g.source, g.sink) else "circle"
        lines.append(f'\t"{shown}" [label="{shown}", shape={shape}];')
    for e in g.edges:
        attrs = [f"dir={_DOT_DIR[e.orientation]}"]
        if not g.is_inner_edge(e):
            attrs.append("style=dashed")
        if e.label:
            attrs.append(f'label="{e.label}"')
        lines.append(f'\t"{g.render_vertex(e.tail)}" -> "{g.render_vertex(e.head)}" [{", ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_text(g: MixedGraph) -> str:
    lines = []
    for e in g.edges:
        label = f"  {e.label}" if e.label else ""
        lines.append(f"{g.render_vertex(e.tail)} {_ARROW[e.orientation]} {g.render_vertex(e.head)}{label}")
    return "\n".join(lines) if lines else "(no edges)"


def route_to_json(route: Route, g: MixedGraph) -> dict:
    return {
        "route": [g.render_vertex(v) for v in route.vertices],
        "signs": list(route.signs),
    }


def routes_to_json(routes: Sequence[Route], g: MixedGraph) -> list[dict]:
    return [route_to_json(r, g) for r in routes]


def routes_to_text(routes: Sequence[Route], g: MixedGraph) -> str:
    lines = []
    for r in routes:
        walk = " ".join(str(g.render_vertex(v)) for v in r.vertices)
        signs = " ".join("+" if s > 0 else "-" for s in r.signs)
        labels = f"{r.source_label or '?'}..{r.sink_label or '?'}"
        lines.append(f"{labels:<10} {walk:<24} [{signs}]")
    lines.append(f"{len(routes)} routes")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Polynomials and step logs
# ---------------------------------------------------------------------------

def poly_to_json(poly: BetaPoly) -> list[dict]:
    return [
        {"mono": [[g.i, g.j] for g in m.gens], "beta": beta, "coef": coef}
        for m, beta, coef in poly.items()
    ]


def poly_from_json(data: Any) -> BetaPoly:
    _expect(isinstance(data, list), "expected a list of terms", "")
    terms = []
    for k, raw in enumerate(data):
        where = f"[{k}]"
        _expect(isinstance(raw, dict), "expected an object", where)
        mono = raw.get("mono")
        _expect(isinstance(mono, list), "expected a list of pairs", f"{where}.mono")
        beta, coef = raw.get("beta", 0), raw.get("coef", 1)
        _expect(isinstance(beta, int) and beta >= 0, "expected a nonnegative integer", f"{where}.beta")
        _expect(isinstance(coef, int), "expected an integer", f"{where}.coef")
        try:
            monomial = Monomial(
                tuple(Generator(*_int_pair(pair, f"{where}.mono[{x}]")) for x, pair in enumerate(mono))
            )
        except NuSubdivError as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(str(exc), f"{where}.mono") from exc
        terms.append((monomial, beta, coef))
    return BetaPoly.from_terms(terms)


def steps_to_jsonl(steps: Iterable[ReductionStep]) -> str:
    return "".join(
        json.dumps({"triple": list(step.triple), "rule": step.rule}) + "\n" for step in steps
    )


def steps_from_jsonl(text: str) -> list[ReductionStep]:
    steps = []
    for k, line in enumerate(text.splitlines()):
        if not line.strip():
            continue
        where = f"line {k + 1}"
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON ({exc.msg})", where) from exc
        triple = raw.get("triple") if isinstance(raw, dict) else None
        _expect(
            isinstance(triple, list) and len(triple) == 3 and all(isinstance(x, int) for x in triple),
            "expected a triple of integers",
            f"{where}.triple",
        )
        _expect(raw.get("rule") in ("full", "simple"), "rule must be full or simple", f"{where}.rule")
        steps.append(ReductionStep(tuple(triple), raw["rule"]))
    return steps


# ---------------------------------------------------------------------------
# Trees and Hasse diagrams
# ---------------------------------------------------------------------------

def trees_to_json(trees: Sequence[IJForest]) -> list[list[list[int]]]:
    return [tree.as_pairs() for tree in trees]


def trees_from_json(data: Any, *, cyclic: bool = True) -> list[IJForest]:
    _expect(isinstance(data, list), "expected a list of trees", "")
    trees = []
    for k, raw in enumerate(data):
        _expect(isinstance(raw, list), "expected a list of arcs", f"[{k}]")
        arcs = tuple(Arc(*_int_pair(pair, f"[{k}][{x}]")) for x, pair in enumerate(raw))
        try:
            trees.append(IJForest(arcs, cyclic=cyclic))
        except NuSubdivError as exc:
            raise ValidationError(str(exc), f"[{k}]") from exc
    return trees


def trees_to_text(trees: Sequence[IJForest]) -> str:
    return "\n".join(str(tree) for tree in trees) + f"\n{len(trees)} trees"


def hasse_to_dot(diagram: nx.DiGraph, name: str = "hasse") -> str:
    """Hasse diagram with one ``rank = same`` block per rank."""
    lines = [f"digraph {name} {{", "\trankdir=BT;"]
    ranks: dict[int, list[int]] = {}
    for node, attrs in sorted(diagram.nodes(data=True)):
        ranks.setdefault(attrs.get("rank", 0), []).append(node)
    for rank in sorted(ranks):
        lines.append("\t{")
        lines.append("\t\trank = same;")
        for node in ranks[rank]:
            tree = diagram.nodes[node].get("tree")
            label = str(tree) if tree is not None else str(node)
            lines.append(f'\t\t"{node}" [label="{label}", shape=box];')
        lines.append("\t}")
    for low, high in sorted(diagram.edges()):
        lines.append(f'\t"{low}" -> "{high}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Triangulations
# ---------------------------------------------------------------------------

def _simplex_to_json(s: Simplex) -> dict:
    return {
        "mono": [[g.i, g.j] for g in s.monomial.gens],
        "beta": s.beta,
        "vertices": [[i, j] for i, j in s.vertices],
    }


def triangulation_to_json(t: Triangulation) -> dict:
    return {
        "path": strip(t.path).steps,
        "facets": [_simplex_to_json(f) for f in t.facets],
        "faces": [_simplex_to_json(f) for f in t.faces],
        "cone_points": [[i, j] for i, j in t.cone_points],
        "dual_edges": [[x, y] for x, y in t.dual_edges],
    }


def _simplex_from_json(raw: Any, p: IndexedPath, where: str) -> Simplex:
    _expect(isinstance(raw, dict), "expected an object", where)
    mono, vertices = raw.get("mono"), raw.get("vertices")
    _expect(isinstance(mono, list), "expected a list of pairs", f"{where}.mono")
    _expect(isinstance(vertices, list) and vertices, "expected a nonempty list of pairs", f"{where}.vertices")
    beta = raw.get("beta", 0)
    _expect(isinstance(beta, int) and beta >= 0, "expected a nonnegative integer", f"{where}.beta")
    pairs = tuple(_int_pair(v, f"{where}.vertices[{x}]") for x, v in enumerate(vertices))
    for x, (i, j) in enumerate(pairs):
        _expect(i in p.I and j in p.J, f"({i},{j}) is not a vertex of the product", f"{where}.vertices[{x}]")
    try:
        monomial = Monomial(tuple(Generator(*_int_pair(g, f"{where}.mono")) for g in mono))
    except ValidationError:
        raise
    except NuSubdivError as exc:
        raise ValidationError(str(exc), f"{where}.mono") from exc
    expected = set(monomial.pairs()) | {(k, k) for k in p.V}
    _expect(sorted(pairs) == sorted(expected), "do not match mono and the cone points", f"{where}.vertices")
    return Simplex(pairs, monomial, beta, p.I, p.J)


def triangulation_from_json(data: Any) -> Triangulation:
    """Rebuild a triangulation; the dual graph is recomputed and compared."""
    _expect(isinstance(data, dict), "expected an object", "")
    path = data.get("path")
    _expect(isinstance(path, str), "expected a path string over E and N", "path")
    try:
        p = canonical_index(LatticePath("E" + path + "N"))
    except NuSubdivError as exc:
        raise ValidationError(str(exc), "path") from exc
    facets = data.get("facets")
    _expect(isinstance(facets, list), "expected a list", "facets")
    parsed = tuple(_simplex_from_json(raw, p, f"facets[{k}]") for k, raw in enumerate(facets))
    faces = tuple(_simplex_from_json(raw, p, f"faces[{k}]") for k, raw in enumerate(data.get("faces") or []))
    cone = tuple(_int_pair(c, f"cone_points[{k}]") for k, c in enumerate(data.get("cone_points") or []))
    t = Triangulation(p, parsed, faces, cone)
    edges = tuple(sorted(dual_graph(t).edges()))
    if "dual_edges" in data:
        given = tuple(sorted(tuple(_int_pair(e, "dual_edges")) for e in data["dual_edges"]))
        _expect(given == edges, "does not match the facets", "dual_edges")
    return Triangulation(p, parsed, faces, cone, edges)


def dual_graph_to_dot(t: Triangulation, name: str = "dual") -> str:
    lines = [f"graph {name} {{"]
    for k, facet in enumerate(t.facets):
        lines.append(f'\t"{k}" [label="{facet.monomial}", shape=box];')
    for x, y in t.dual_edges:
        lines.append(f'\t"{x}" -- "{y}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def triangulation_to_text(t: Triangulation) -> str:
    lines = [f"ν̄ = {t.path.render()}", f"{len(t.facets)} facets"]
    cone = " ".join(f"({i},{j})" for i, j in t.cone_points)
    for k, facet in enumerate(t.facets):
        lines.append(f"  [{k}] {facet.monomial}")
    lines.append(f"cone points: {cone}")
    if t.faces:
        lines.append(f"{len(t.faces)} inner faces")
        for face in t.faces:
            beta = f"β^{face.beta} " if face.beta else ""
            lines.append(f"  {beta}{face.monomial}")
    lines.append(f"{len(t.dual_edges)} dual edges")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def report_to_json(report: VerificationReport) -> dict:
    return {
        "path": report.path,
        "passed": report.passed,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail} for c in report.checks
        ],
    }


def report_to_text(report: VerificationReport) -> str:
    lines = [f"ν = {report.path or '(empty)'}"]
    for check in report.checks:
        mark = "ok  " if check.passed else "FAIL"
        lines.append(f"  {mark} {check.name}: {check.detail}")
    lines.append("PASS" if report.passed else "FAIL")
    return "\n".join(lines)
