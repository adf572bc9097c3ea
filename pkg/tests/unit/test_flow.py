"""
Unit tests for routes, signed flows and the cells of the simplex subdivision.
"""
from fractions import Fraction

import pytest

from nu_subdiv.errors import GraphError
from nu_subdiv.flow import (
    SignedFlow,
    ambient_cell_routes,
    ambient_graph,
    check_flow,
    convex_combination,
    enumerate_routes,
    evaluate,
    find_collinear_triple,
    polytope_vertices,
    route_to_product_vertex,
    separating_functional,
    signed_vector,
)
from nu_subdiv.graph import Edge, MixedGraph, nu_graph, partial_augment, simplex_product_graph


class TestRoutes:
    """Test route enumeration on augmented graphs."""

    def test_ambient_routes_are_product_vertices(self, neene):
        routes = enumerate_routes(ambient_graph(neene))
        assert len(routes) == 12
        pairs = {r.label_pair() for r in routes}
        assert pairs == {(i, j) for i in neene.I for j in neene.J}

    def test_single_inner_vertex(self):
        g = MixedGraph((0, 1, 2), (Edge(0, 1, label="E1"), Edge(1, 2, label="N1")), source=0, sink=2)
        routes = enumerate_routes(g)
        assert len(routes) == 1
        assert routes[0].vertices == (0, 1, 2)
        assert routes[0].label_pair() == (1, 1)

    def test_forward_routes_are_increasing(self, neene):
        routes = enumerate_routes(partial_augment(nu_graph(neene), neene))
        pairs = {r.label_pair() for r in routes}
        assert all(i <= j for i, j in pairs)
        assert (2, 1) not in pairs
        assert (1, 4) in pairs

    def test_needs_augmented_graph(self, neene):
        with pytest.raises(GraphError, match="augmented"):
            enumerate_routes(nu_graph(neene))

    def test_stuck_vertex(self):
        g = MixedGraph((0, 1, 2, 3), (Edge(0, 1), Edge(1, 2), Edge(0, 3)), source=0, sink=3)
        with pytest.raises(GraphError, match="no continuation"):
            enumerate_routes(g)

    def test_backward_move_recorded(self, neene):
        routes = enumerate_routes(ambient_graph(neene))
        route = next(r for r in routes if r.label_pair() == (4, 1))
        assert route.vertices == (0, 4, 3, 1, 5)
        assert route.signs == (1, -1, -1, 1)
        assert route.uses_backward_move

    def test_product_vertex(self, neene):
        routes = enumerate_routes(ambient_graph(neene))
        route = next(r for r in routes if r.label_pair() == (2, 3))
        assert route_to_product_vertex(route, neene) == ((0, 1, 0, 0), (0, 1, 0))

    def test_cone_route(self, neene):
        routes = enumerate_routes(ambient_graph(neene))
        route = next(r for r in routes if r.label_pair() == (3, 3))
        e_i, e_j = route_to_product_vertex(route, neene)
        assert e_i.index(1) == neene.I.index(3)
        assert e_j.index(1) == neene.J.index(3)


class TestSignedFlows:
    def test_routes_are_flows(self, neene):
        g = ambient_graph(neene)
        for route in enumerate_routes(g):
            assert check_flow(signed_vector(route), g)

    def test_forward_route_is_zero_one(self, neene):
        g = partial_augment(nu_graph(neene), neene)
        for route in enumerate_routes(g):
            assert set(signed_vector(route).values) <= {0, 1}

    def test_zero_vector_is_not_a_flow(self, neene):
        g = ambient_graph(neene)
        zero = SignedFlow(tuple(Fraction(0) for _ in g.edges))
        assert not check_flow(zero, g)

    def test_convex_combination_is_a_flow(self, neene):
        g = ambient_graph(neene)
        flows = [signed_vector(r) for r in enumerate_routes(g)][:3]
        mixed = convex_combination(flows, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)])
        assert check_flow(mixed, g)

    def test_convex_combination_needs_matching_weights(self, neene):
        flows = [signed_vector(r) for r in enumerate_routes(ambient_graph(neene))][:2]
        with pytest.raises(GraphError):
            convex_combination(flows, [Fraction(1)])

    def test_wrong_length_rejected(self, neene):
        with pytest.raises(GraphError):
            check_flow(SignedFlow((Fraction(1),)), ambient_graph(neene))

    def test_distinct_vectors(self, neene):
        flows = [signed_vector(r) for r in enumerate_routes(ambient_graph(neene))]
        assert len(set(flows)) == len(flows)
        assert find_collinear_triple(flows) is None


class TestPolytopeVertices:
    def test_ambient_vertex_count(self, neene):
        assert len(polytope_vertices(ambient_graph(neene))) == 12

    def test_product_graph(self):
        assert len(polytope_vertices(simplex_product_graph(3, 2))) == 12

    def test_cycle_rejected(self):
        edges = (Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 1), Edge(3, 4))
        g = MixedGraph((0, 1, 2, 3, 4), edges, source=0, sink=4)
        with pytest.raises(GraphError, match="cycle"):
            polytope_vertices(g)


class TestCells:
    """Test the cells Q_i read inside the ambient graph."""

    def test_cell_sizes_match_cell_graphs(self, neene):
        sizes = [len(ambient_cell_routes(neene, [i])) for i in (1, 2, 3)]
        assert sizes == [9, 7, 8]

    def test_last_cell_has_no_backward_moves(self, neene):
        for route in ambient_cell_routes(neene, [neene.w]):
            assert not route.uses_backward_move

    def test_cells_cover_all_vertices(self, neene):
        union = set()
        for i in range(1, neene.w + 1):
            union |= {r.label_pair() for r in ambient_cell_routes(neene, [i])}
        assert len(union) == 12

    def test_bad_cells(self, neene):
        with pytest.raises(GraphError):
            ambient_cell_routes(neene, [])
        with pytest.raises(GraphError):
            ambient_cell_routes(neene, [4])

    def test_separating_functional_signs(self, neene):
        g = ambient_graph(neene)
        flows = {r.label_pair(): signed_vector(r) for r in enumerate_routes(g)}
        for i, j in ((1, 2), (1, 3), (2, 3)):
            functional = separating_functional(neene, i, j)
            q_i = {r.label_pair() for r in ambient_cell_routes(neene, [i])}
            q_j = {r.label_pair() for r in ambient_cell_routes(neene, [j])}
            assert all(evaluate(functional, flows[v]) <= 0 for v in q_i)
            assert all(evaluate(functional, flows[v]) >= 0 for v in q_j)

    def test_separating_functional_range(self, neene):
        with pytest.raises(GraphError):
            separating_functional(neene, 2, 2)
