"""
Unit tests for mixed graphs, ν-graphs and graph operations.
"""
import pytest

from nu_subdiv.algebra import monomial_of_graph
from nu_subdiv.errors import GraphError
from nu_subdiv.flow import ambient_graph
from nu_subdiv.graph import (
    BACKWARD,
    BIDIRECTIONAL,
    FORWARD,
    Edge,
    MixedGraph,
    bidirectional_nu_graph,
    cell_graph,
    contract_idle_edges,
    cycle_graph_edges,
    full_augment,
    intersect_cell_graphs,
    is_acyclic,
    is_noncrossing_graph,
    is_tree,
    nu_graph,
    partial_augment,
    reduce_graph,
    reflect_all_backward,
    reflect_backward_edge,
    relabel,
    simplex_product_graph,
    spine_edges,
)
from nu_subdiv.path import cyclic_shift, index_path, rotation_relabeling, strip


def _pairs(g, orientation=None):
    return {
        (e.tail, e.head)
        for e in g.inner_edges
        if orientation is None or e.orientation is orientation
    }


class TestEdge:
    def test_loop_rejected(self):
        with pytest.raises(GraphError, match="loop"):
            Edge(2, 2)

    def test_moves(self):
        assert Edge(1, 3).moves() == [(1, 3, 1)]
        assert Edge(1, 4, BACKWARD).moves() == [(4, 1, -1)]
        assert Edge(1, 3, BIDIRECTIONAL).moves() == [(1, 3, 1), (3, 1, -1)]

    def test_generator_follows_flow(self):
        assert Edge(1, 4, BACKWARD).generator() == (4, 1)
        with pytest.raises(GraphError):
            Edge(1, 3, BIDIRECTIONAL).generator()


class TestMixedGraph:
    def test_unknown_vertex(self):
        with pytest.raises(GraphError, match="unknown vertex"):
            MixedGraph((1, 2), (Edge(1, 3),))

    def test_terminal_edges_must_be_forward(self):
        with pytest.raises(GraphError):
            MixedGraph((0, 1, 2), (Edge(0, 1, BACKWARD), Edge(1, 2)), source=0, sink=2)

    def test_render_vertex(self):
        g = MixedGraph((0, 1, 2), (Edge(0, 1), Edge(1, 2)), source=0, sink=2)
        assert [g.render_vertex(v) for v in g.vertices] == ["s", 1, "t"]


class TestNuGraph:
    """Test G(ν) and G_B(ν)."""

    def test_neene_edges(self, neene):
        g = nu_graph(neene)
        assert _pairs(g) == {(1, 3), (2, 3), (3, 4)}
        assert str(monomial_of_graph(g)) == "x13*x23*x34"

    def test_nu_graph_is_a_tree(self, neene, two_bidirectional):
        assert is_tree(nu_graph(neene))
        assert is_tree(nu_graph(two_bidirectional))

    def test_two_bidirectional_edges(self, two_bidirectional):
        assert two_bidirectional.render() == "E1N1E2E3N3N4E5E6N6"
        g = bidirectional_nu_graph(two_bidirectional)
        assert _pairs(g, FORWARD) == {(2, 3), (3, 4), (5, 6)}
        assert _pairs(g, BIDIRECTIONAL) == {(1, 3), (3, 6)}

    def test_empty_path_has_no_edges(self, empty_path):
        g = nu_graph(empty_path)
        assert g.vertices == (1,)
        assert g.edges == ()

    def test_bidirectional_neene(self, neene):
        g = bidirectional_nu_graph(neene)
        assert _pairs(g, BIDIRECTIONAL) == {(1, 3), (3, 4)}
        assert _pairs(g, FORWARD) == {(2, 3)}

    def test_single_valley_has_no_bidirectional_edges(self, staircase):
        assert bidirectional_nu_graph(staircase) == nu_graph(staircase)

    def test_spine(self, neene):
        assert spine_edges(neene) == ((1, 3), (3, 4))


class TestAugmentation:
    def test_partial_augmentation(self, two_bidirectional):
        g = partial_augment(bidirectional_nu_graph(two_bidirectional), two_bidirectional)
        sources = sorted(e.head for e in g.edges if e.tail == g.source)
        sinks = sorted(e.tail for e in g.edges if e.head == g.sink)
        assert sources == [1, 2, 3, 5, 6]
        assert sinks == [1, 3, 4, 6]
        assert g.sink == 7

    def test_partial_augmentation_labels(self, neene):
        g = partial_augment(nu_graph(neene), neene)
        labels = sorted(e.label for e in g.edges if not g.is_inner_edge(e))
        assert labels == ["E1", "E2", "E3", "E4", "N1", "N3", "N4"]

    def test_empty_path_augmentation(self, empty_path):
        g = partial_augment(nu_graph(empty_path), empty_path)
        assert [(e.tail, e.head) for e in g.edges] == [(0, 1), (1, 2)]

    def test_full_augmentation(self, neene):
        g = full_augment(nu_graph(neene))
        assert g.out_degree(g.source) == 4
        assert g.in_degree(g.sink) == 4

    def test_double_augmentation_rejected(self, neene):
        g = partial_augment(nu_graph(neene), neene)
        with pytest.raises(GraphError, match="already augmented"):
            full_augment(g)

    def test_simplex_product_graph(self):
        g = simplex_product_graph(3, 2)
        assert g.out_degree(g.source) == 4
        assert g.in_degree(g.sink) == 3


class TestCellGraphs:
    """Test C_ν(i), G(ν, i) and their intersections."""

    def test_cycle_graph(self, neene):
        edges = cycle_graph_edges(neene)
        assert {(e.tail, e.head, e.orientation) for e in edges} == {
            (1, 3, FORWARD),
            (3, 4, FORWARD),
            (1, 4, BACKWARD),
        }

    def test_last_cycle_graph_is_directed_path(self, neene):
        edges = cycle_graph_edges(neene, neene.w)
        assert all(e.orientation is FORWARD for e in edges)

    def test_cell_out_of_range(self, neene):
        with pytest.raises(GraphError, match="out of range"):
            cell_graph(neene, 4)

    @pytest.mark.parametrize(
        "i,expected",
        [(1, "x23*x34*x41"), (2, "x13*x23*x41"), (3, "x13*x23*x34")],
    )
    def test_cell_monomials(self, neene, i, expected):
        assert str(monomial_of_graph(cell_graph(neene, i))) == expected

    def test_last_cell_is_nu_graph(self, two_bidirectional):
        p = two_bidirectional
        assert cell_graph(p, p.w) == nu_graph(p)

    @pytest.mark.parametrize(
        "cells,expected",
        [((1, 2), "x23*x41"), ((1, 3), "x23*x34"), ((2, 3), "x13*x23"), ((1, 2, 3), "x23")],
    )
    def test_intersections(self, neene, cells, expected):
        assert str(monomial_of_graph(intersect_cell_graphs(neene, cells))) == expected

    def test_singleton_intersection(self, neene):
        assert intersect_cell_graphs(neene, [2]) == cell_graph(neene, 2)

    def test_empty_intersection_rejected(self, neene):
        with pytest.raises(GraphError):
            intersect_cell_graphs(neene, [])

    def test_reflected_cell_matches_shifted_path(self, neene):
        # G(ν, i) with its chord reflected is G(strip(ν̄(i))) up to relabeling
        for i in range(1, neene.w):
            reflected = reflect_all_backward(cell_graph(neene, i))
            renamed = relabel(reflected, rotation_relabeling(neene, i))
            shifted = index_path(strip(cyclic_shift(neene, i)))
            assert _pairs(renamed) == _pairs(nu_graph(shifted))


class TestAcyclicity:
    def test_nu_graphs_are_acyclic(self, neene):
        assert is_acyclic(nu_graph(neene))
        assert is_acyclic(bidirectional_nu_graph(neene))
        assert is_acyclic(ambient_graph(neene))

    def test_directed_triangle(self):
        g = MixedGraph((1, 2, 3), (Edge(1, 2), Edge(2, 3), Edge(3, 1)))
        assert not is_acyclic(g)

    def test_parallel_opposite_edges_form_a_cycle(self):
        g = MixedGraph((1, 2), (Edge(1, 2), Edge(2, 1)))
        assert not is_acyclic(g)


class TestEdgeOperations:
    def test_reflect_backward_edge(self, neene):
        g = cell_graph(neene, 1)
        position = next(k for k, e in enumerate(g.edges) if e.orientation is BACKWARD)
        reflected = reflect_backward_edge(g, position)
        edge = reflected.edges[position]
        assert (edge.tail, edge.head, edge.orientation) == (4, 1, FORWARD)
        assert reflected.sign_flips == (position,)

    def test_reflect_forward_edge_rejected(self, neene):
        with pytest.raises(GraphError, match="not a backward edge"):
            reflect_backward_edge(nu_graph(neene), 0)

    def test_reflect_all_is_identity_without_backward_edges(self, neene):
        g = nu_graph(neene)
        assert reflect_all_backward(g) == g

    def test_contract_ambient_graph(self, neene):
        g = contract_idle_edges(ambient_graph(neene))
        assert g.vertices == (0, 1, 5)
        assert g.out_degree(g.source) == neene.a + 1
        assert g.in_degree(g.sink) == neene.b + 1

    def test_contract_without_inner_edges(self):
        g = MixedGraph((0, 1, 2), (Edge(0, 1), Edge(1, 2)), source=0, sink=2)
        assert contract_idle_edges(g) == g

    def test_contract_keeps_non_idle_edges(self):
        edges = (
            Edge(0, 1), Edge(0, 1), Edge(0, 2), Edge(0, 2),
            Edge(1, 2), Edge(1, 3), Edge(1, 3), Edge(2, 3), Edge(2, 3),
        )
        g = MixedGraph((0, 1, 2, 3), edges, source=0, sink=3)
        assert contract_idle_edges(g) == g

    def test_reduce_graph(self):
        g = MixedGraph((1, 2, 4), (Edge(1, 2), Edge(2, 4)))
        first, second, third = reduce_graph(g, (1, 2, 4))
        assert _pairs(first) == {(1, 2), (1, 4)}
        assert _pairs(second) == {(2, 4), (1, 4)}
        assert _pairs(third) == {(1, 4)}

    def test_reduce_graph_missing_pair(self, neene):
        with pytest.raises(GraphError):
            reduce_graph(nu_graph(neene), (1, 2, 3))

    def test_noncrossing(self):
        assert is_noncrossing_graph([(1, 4), (2, 3)])
        assert not is_noncrossing_graph([(1, 3), (2, 4)])
