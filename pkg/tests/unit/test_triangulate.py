"""
Unit tests for P_ν, triangulations and their certification.
"""
import sys

import pytest

from nu_subdiv._geometry import simplex_barycenter
from nu_subdiv.algebra import BetaPoly, Monomial
from nu_subdiv.config import Config, GuardConfig, ReductionConfig, VerifyConfig
from nu_subdiv.errors import DegenerateSimplexError, GraphError, ReductionError, SizeGuardError
from nu_subdiv.triangulate import (
    Simplex,
    Triangulation,
    build_p_nu,
    check_routes,
    check_size,
    check_subdivision,
    dual_graph,
    face_codimension,
    is_staircase,
    m_of_nu_graph,
    reduce_p_nu,
    simplex_subdivision,
    top_degree_alternating,
    triangulate,
    triangulation_from_reduced,
    verify_all,
    verify_cell_volumes,
    verify_cover,
    verify_triangulation,
    verify_unimodular,
)


class TestBuildPNu:
    def test_neene(self, neene):
        expected = BetaPoly.parse(
            "x23*x34*x41 + x13*x23*x41 + x13*x23*x34"
            " + β*x23*x41 + β*x23*x34 + β*x13*x23 + β^2*x23"
        )
        assert build_p_nu(neene) == expected

    def test_single_valley_is_one_monomial(self, staircase):
        assert build_p_nu(staircase) == BetaPoly.monomial(m_of_nu_graph(staircase))

    def test_m_of_nu_graph(self, neene):
        assert str(m_of_nu_graph(neene)) == "x13*x23*x34"


class TestTriangulate:
    """Test the P_ν → reduced form → triangulation pipeline."""

    def test_neene_facets(self, neene, neene_facets):
        t = triangulate(neene)
        assert {str(m) for m in t.facet_monomials} == neene_facets
        assert all(len(f.vertices) == 6 for f in t.facets)
        assert all(f.dimension == neene.a + neene.b for f in t.facets)

    def test_cone_points(self, neene):
        t = triangulate(neene)
        assert t.cone_points == ((1, 1), (3, 3), (4, 4))
        assert all(set(t.cone_points) <= set(f.vertices) for f in t.facets)

    def test_simple_mode_has_no_inner_faces(self, neene):
        assert triangulate(neene).faces == ()

    def test_full_mode_keeps_facets(self, neene):
        simple = triangulate(neene)
        full = triangulate(neene, simple=False)
        assert set(full.facet_monomials) == set(simple.facet_monomials)
        assert full.faces
        assert all(face_codimension(face, full) >= 1 for face in full.faces)

    def test_full_reduction_beta_zero_part(self, neene):
        full = reduce_p_nu(neene, simple=False).normal_form
        simple = reduce_p_nu(neene).normal_form
        assert full.at_beta_zero() == simple

    def test_coefficients_are_one(self, neene):
        assert reduce_p_nu(neene).normal_form.coefficients() == {1}

    def test_needs_reduced_polynomial(self, neene):
        with pytest.raises(ReductionError, match="reduced"):
            triangulation_from_reduced(build_p_nu(neene), neene)

    def test_staircase(self, staircase):
        t = triangulate(staircase)
        assert [str(m) for m in t.facet_monomials] == [
            "x13*x14*x23",
            "x14*x23*x24",
            "x14*x24*x34",
        ]
        assert is_staircase(t)
        assert t.dual_edges == ((0, 1), (1, 2))

    def test_top_degree_alternating(self, neene):
        assert top_degree_alternating(reduce_p_nu(neene))

    def test_dual_graph(self, neene):
        t = triangulate(neene)
        graph = dual_graph(t)
        assert graph.number_of_nodes() == 10
        assert tuple(sorted(graph.edges())) == t.dual_edges


class TestGeometry:
    def test_unimodular_facets(self, neene):
        assert all(verify_unimodular(f) for f in triangulate(neene).facets)

    def test_wrong_vertex_count(self, staircase):
        s = Simplex(((1, 3), (1, 4)), Monomial.parse("x14"), 0, staircase.I, staircase.J)
        with pytest.raises(DegenerateSimplexError, match="needs"):
            verify_unimodular(s)

    def test_degenerate_simplex(self, staircase):
        vertices = ((1, 3), (1, 4), (2, 3), (2, 4))
        s = Simplex(vertices, Monomial.parse("x14*x23*x24"), 0, staircase.I, staircase.J)
        with pytest.raises(DegenerateSimplexError, match="degenerate"):
            verify_unimodular(s)

    def test_cover(self, neene):
        assert verify_cover(triangulate(neene), trials=50, seed=1).passed

    def test_missing_facet_is_found(self, neene):
        t = triangulate(neene)
        dropped = t.facets[0]
        partial = Triangulation(path=neene, facets=t.facets[1:])
        probe = simplex_barycenter(dropped.vertices, neene.I, neene.J)
        report = verify_cover(partial, trials=0, points=[probe])
        assert not report.passed
        assert report.violations[0]["containing"] == []

    def test_cell_volumes(self, neene):
        report = verify_cell_volumes(neene)
        assert report.passed
        assert report.counts == {1: 5, 2: 2, 3: 3}
        assert report.expected_total == 10


class TestSubdivision:
    def test_cells(self, neene):
        subdivision = simplex_subdivision(neene)
        assert {i: len(v) for i, v in subdivision.cells.items()} == {1: 9, 2: 7, 3: 8}
        assert len(subdivision.dual_complex()) == 7

    def test_common_face(self, neene):
        faces = simplex_subdivision(neene).faces
        assert faces[frozenset({1, 2})] == frozenset({(1, 1), (2, 3), (3, 3), (4, 4), (4, 1)})

    def test_checks_pass(self, neene, two_bidirectional):
        assert check_subdivision(neene) == []
        assert check_routes(neene) == []
        assert check_subdivision(two_bidirectional) == []


class TestGuards:
    def test_size_guard(self, neene):
        with pytest.raises(SizeGuardError, match="--force"):
            check_size(neene, 4, False, "verification")

    def test_force_warns(self, neene):
        with pytest.warns(RuntimeWarning, match="force"):
            check_size(neene, 4, True, "verification")

    def test_within_limit(self, neene):
        check_size(neene, 5, False, "verification")


class TestVerification:
    def test_verify_all_neene(self, neene, fast_config):
        report = verify_all(neene, fast_config)
        assert report.passed, [(c.name, c.detail) for c in report.failures]
        assert [c.name for c in report.checks] == [
            "facet count",
            "coefficients",
            "random orders",
            "catalan identity",
            "unimodular",
            "inner faces",
            "cover",
            "cell volumes",
            "tamari correspondence",
            "maximal arcs",
            "dual graph",
            "subdivision",
            "routes",
        ]

    def test_verify_all_two_bidirectional(self, two_bidirectional, fast_config):
        assert verify_all(two_bidirectional, fast_config).passed

    def test_complement_variant_is_reported_not_raised(self, neene):
        config = Config(
            reduction=ReductionConfig(length_variant="complement"),
            verify=VerifyConfig(trials=50, seed=1, random_orders=2, workers=2),
        )
        report = verify_all(neene, config)
        assert not report.passed
        assert report.checks[0].name == "facet count" and report.checks[0].passed
        assert len(report.checks) == 13
        assert any("cross" in c.detail for c in report.failures)

    def test_domain_error_becomes_failed_check(self, neene, fast_config, monkeypatch):
        def broken(p):
            raise GraphError("no routes")

        monkeypatch.setattr(sys.modules["nu_subdiv.triangulate"], "check_routes", broken)
        report = verify_all(neene, fast_config)
        assert [(c.name, c.detail) for c in report.failures] == [("routes", "no routes")]

    def test_size_guard_still_raises(self, neene):
        with pytest.raises(SizeGuardError):
            verify_all(neene, Config(guards=GuardConfig(max_verify_size=3)))

    def test_catalan_identity_counts_by_enumeration(self, neene, fast_config, monkeypatch):
        monkeypatch.setattr(sys.modules["nu_subdiv.triangulate"], "enumerate_paths_weakly_above", lambda nu, max_size: [])
        report = verify_all(neene, fast_config)
        catalan = next(c for c in report.checks if c.name == "catalan identity")
        assert not catalan.passed
        assert "enumeration gives [0, 0, 0]" in catalan.detail

    def test_catalan_identity_skips_enumeration_over_guard(self, neene, monkeypatch):
        def unreachable(nu, max_size):
            raise AssertionError("enumeration ran over the guard")

        monkeypatch.setattr(sys.modules["nu_subdiv.triangulate"], "enumerate_paths_weakly_above", unreachable)
        config = Config(
            guards=GuardConfig(max_enumeration_size=4),
            verify=VerifyConfig(trials=50, seed=1, random_orders=2, workers=2),
        )
        report = verify_all(neene, config)
        catalan = next(c for c in report.checks if c.name == "catalan identity")
        assert catalan.passed
        assert catalan.detail == "[2, 3, 5] sum to 10"

    def test_verify_triangulation(self, staircase):
        assert verify_triangulation(triangulate(staircase), trials=20).passed

    def test_short_triangulation_fails(self, neene):
        t = triangulate(neene)
        report = verify_triangulation(Triangulation(path=neene, facets=t.facets[:-1]), trials=20)
        assert not report.passed
        assert report.failures[0].name == "facet count"
