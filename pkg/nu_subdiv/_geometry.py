"""
Exact geometry on Δ_a × Δ_b.

Points of Δ_a × Δ_b are written in the chart that drops the coordinate of
``max I`` in the first factor and of ``max J`` in the second.  The chart is a
lattice isomorphism onto its image, so determinants computed in it are
normalized volumes.  Vertices of the product are named by label pairs
``(i, j)`` with ``i in I`` and ``j in J``.

All arithmetic is exact: determinants and inverses come from ``sympy``,
points are ``Fraction`` vectors.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from typing import Sequence

import sympy

from .errors import DegenerateSimplexError

ProductVertex = tuple[int, int]
Point = tuple[Fraction, ...]


def chart(vertex: ProductVertex, I: Sequence[int], J: Sequence[int]) -> tuple[int, ...]:  # noqa: E741
    """Integer chart coordinates of the vertex ``(e_i, e_j)``."""
    i, j = vertex
    return tuple(int(k == i) for k in I[:-1]) + tuple(int(k == j) for k in J[:-1])


def point_chart(point: Point, I: Sequence[int], J: Sequence[int]) -> Point:  # noqa: E741
    """Drop the ``max I`` and ``max J`` coordinates of a point of ℝ^{a+1} × ℝ^{b+1}."""
    a1 = len(I)
    return tuple(point[: a1 - 1]) + tuple(point[a1 : a1 + len(J) - 1])


def edge_matrix(vertices: Sequence[ProductVertex], I: Sequence[int], J: Sequence[int]) -> sympy.Matrix:  # noqa: E741
    """Rows are ``v_r - v_0`` in chart coordinates."""
    coords = [chart(v, I, J) for v in vertices]
    base = coords[0]
    return sympy.Matrix([[x - y for x, y in zip(row, base)] for row in coords[1:]])


def simplex_determinant(vertices: Sequence[ProductVertex], I: Sequence[int], J: Sequence[int]) -> int:  # noqa: E741
    """Determinant of the edge matrix of a full-dimensional simplex.

    Raises:
        DegenerateSimplexError: if the vertex count is wrong or the
            determinant vanishes.
    """
    dimension = len(I) + len(J) - 2
    if len(vertices) != dimension + 1:
        raise DegenerateSimplexError(
            f"a full-dimensional simplex of Δ_{len(I) - 1}×Δ_{len(J) - 1} needs "
            f"{dimension + 1} vertices, got {len(vertices)}"
        )
    if dimension == 0:
        return 1
    det = int(edge_matrix(vertices, I, J).det(method="bareiss"))
    if det == 0:
        raise DegenerateSimplexError(f"simplex {list(vertices)} is degenerate")
    return det


def affinely_independent(vertices: Sequence[ProductVertex], I: Sequence[int], J: Sequence[int]) -> bool:  # noqa: E741
    if len(set(vertices)) != len(vertices):
        return False
    if len(vertices) <= 1:
        return True
    return edge_matrix(vertices, I, J).rank() == len(vertices) - 1


class BarycentricSolver:
    """Barycentric coordinates with respect to one full-dimensional simplex.

    The inverse of the homogenized vertex matrix is computed once with sympy;
    for unimodular simplices it is an integer matrix, which keeps repeated
    membership tests in plain integer arithmetic.
    """

    def __init__(self, vertices: Sequence[ProductVertex], I: Sequence[int], J: Sequence[int]) -> None:  # noqa: E741
        simplex_determinant(vertices, I, J)
        columns = [list(chart(v, I, J)) + [1] for v in vertices]
        inverse = sympy.Matrix(columns).T.inv()
        self.integral = all(entry.is_integer for entry in inverse)
        convert = int if self.integral else (lambda e: Fraction(int(e.p), int(e.q)))
        self._rows = [[convert(inverse[r, c]) for c in range(inverse.cols)] for r in range(inverse.rows)]

    def coordinates(self, chart_point: Point) -> tuple[Fraction, ...]:
        """Barycentric coordinates of a point given in chart coordinates."""
        denominator = 1
        for value in chart_point:
            denominator = lcm(denominator, Fraction(value).denominator)
        scaled = [int(Fraction(value) * denominator) for value in chart_point] + [denominator]
        return tuple(
            Fraction(sum(c * x for c, x in zip(row, scaled)), denominator) for row in self._rows
        )

    def locate(self, chart_point: Point) -> tuple[bool, bool]:
        """``(contains, interior)`` for a point given in chart coordinates."""
        weights = self.coordinates(chart_point)
        return all(w >= 0 for w in weights), all(w > 0 for w in weights)


def random_product_point(rng: random.Random, a: int, b: int, *, max_weight: int = 97) -> Point:
    """Random rational point of Δ_a × Δ_b with small positive barycentric weights."""
    first = [rng.randint(1, max_weight) for _ in range(a + 1)]
    second = [rng.randint(1, max_weight) for _ in range(b + 1)]
    return tuple(Fraction(x, sum(first)) for x in first) + tuple(
        Fraction(y, sum(second)) for y in second
    )


def product_barycenter(a: int, b: int) -> Point:
    return tuple([Fraction(1, a + 1)] * (a + 1) + [Fraction(1, b + 1)] * (b + 1))


def simplex_barycenter(vertices: Sequence[ProductVertex], I: Sequence[int], J: Sequence[int]) -> Point:  # noqa: E741
    """Barycenter of a simplex, in ℝ^{a+1} × ℝ^{b+1} coordinates."""
    count = len(vertices)
    point = [Fraction(0)] * (len(I) + len(J))
    for i, j in vertices:
        point[I.index(i)] += Fraction(1, count)
        point[len(I) + J.index(j)] += Fraction(1, count)
    return tuple(point)
