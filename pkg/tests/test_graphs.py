import json
import random

import pytest
from hypothesis import given, strategies as st

from beadcalc.errors import BoundExceededError, GraphValidationError, ParseError
from beadcalc.graphs import (LEG, TRIVALENT, BeadGraph, Edge, Vertex, attach_leg, automorphisms, canonicalize,
                             components, disjoint_union, euler_degree, flip_vertex, loop_degree, parse_graph,
                             reference_forest, relabel, reverse_edge, scramble, serialize_graph,
                             spanning_forests, tetrahedron, theta, vassiliev_degree, wheel)
from beadcalc.laurent import LaurentPoly


class TestDegrees:
    def test_theta(self, theta_graph):
        assert vassiliev_degree(theta_graph) == 1
        assert euler_degree(theta_graph) == 2
        assert loop_degree(theta_graph) == 2

    def test_tetrahedron(self, k4_graph):
        assert euler_degree(k4_graph) == 4
        assert loop_degree(k4_graph) == 3

    def test_legs_are_shaved(self, strut_graph, vortex_graph, wheel_graph, tadpole_graph):
        assert euler_degree(strut_graph) == 0
        assert euler_degree(vortex_graph) == 0
        assert euler_degree(wheel_graph) == 0
        assert euler_degree(tadpole_graph) == 0
        assert vassiliev_degree(wheel_graph) == 3

    def test_dumbbell(self, dumbbell_graph):
        assert euler_degree(dumbbell_graph) == 2
        assert loop_degree(dumbbell_graph) == 2

    def test_hair_keeps_euler_degree(self, theta_graph):
        hairy = attach_leg(attach_leg(theta_graph, 0), 1)
        assert euler_degree(hairy) == 2
        assert vassiliev_degree(hairy) == 3
        assert len(hairy.legs) == 2

    def test_empty_graph(self):
        empty = BeadGraph((), ())
        assert euler_degree(empty) == 0
        assert loop_degree(empty) == 0


class TestValidation:
    def test_flag_on_two_edges(self):
        u = Vertex("u", TRIVALENT, ("a", "b", "c"))
        v = Vertex("v", TRIVALENT, ("d", "e", "f"))
        with pytest.raises(GraphValidationError):
            BeadGraph((u, v), (Edge("a", "d"), Edge("a", "e"), Edge("b", "f")))

    def test_dangling_flag(self):
        u = Vertex("u", TRIVALENT, ("a", "b", "c"))
        leg = Vertex("l", LEG, ("x",), "*")
        with pytest.raises(GraphValidationError):
            BeadGraph((u, leg), (Edge("a", "x"),))

    def test_wrong_valence(self):
        with pytest.raises(GraphValidationError):
            BeadGraph((Vertex("u", TRIVALENT, ("a", "b")),), (Edge("a", "b"),))

    def test_leg_needs_color(self):
        legs = (Vertex("x", LEG, ("x.0",), None), Vertex("y", LEG, ("y.0",), "*"))
        with pytest.raises(GraphValidationError):
            BeadGraph(legs, (Edge("x.0", "y.0"),))

    def test_wheel_needs_a_leg(self):
        with pytest.raises(GraphValidationError):
            wheel(0)


class TestMoves:
    def test_reverse_edge_involutes_bead(self):
        g = theta(["t", 1, "t^-2"])
        reversed_graph = reverse_edge(g, 0)
        assert reversed_graph.edges[0].bead == LaurentPoly.monomial(-1)
        assert reversed_graph.edges[0].tail == g.edges[0].head

    def test_flip_vertex_rejects_legs(self, strut_graph):
        with pytest.raises(GraphValidationError):
            flip_vertex(strut_graph, "x")

    def test_relabel_and_union(self, theta_graph, strut_graph):
        renamed = relabel(theta_graph, "p:")
        assert {v.name for v in renamed.vertices} == {"p:u", "p:v"}
        union = disjoint_union(theta_graph, strut_graph)
        assert len(components(union)) == 2
        assert len(union.edges) == 4


class TestForests:
    def test_reference_forest_spans(self, k4_graph):
        forest = reference_forest(k4_graph)
        assert len(forest) == 3

    def test_spanning_forest_count(self, theta_graph, k4_graph):
        assert len(list(spanning_forests(theta_graph))) == 3
        # Cayley: 4^(4-2)
        assert len(list(spanning_forests(k4_graph))) == 16


class TestCanonicalForms:
    def test_flip_changes_sign_only(self, theta_graph):
        form = canonicalize(theta_graph)
        flipped = canonicalize(flip_vertex(theta_graph, "u"))
        assert flipped.graph == form.graph
        assert flipped.sign == -form.sign

    def test_tadpole_is_degenerate(self, tadpole_graph):
        assert canonicalize(tadpole_graph).sign == 0

    def test_vortex_is_degenerate(self, vortex_graph):
        assert canonicalize(vortex_graph).sign == 0

    @given(st.integers(0, 10_000))
    def test_scramble_invariance(self, seed):
        rng = random.Random(seed)
        g = tetrahedron([LaurentPoly.monomial(rng.randint(-2, 2)) for _ in range(6)])
        form = canonicalize(g, holonomy=True)
        other = canonicalize(scramble(g, rng), holonomy=True)
        assert other == form

    @given(st.integers(0, 10_000))
    def test_scramble_invariance_without_beads(self, seed):
        rng = random.Random(seed)
        g = attach_leg(theta(), rng.randrange(3))
        assert canonicalize(scramble(g, rng)) == canonicalize(g)

    def test_vertex_bound(self, k4_graph):
        with pytest.raises(BoundExceededError):
            canonicalize(k4_graph, vertex_bound=3)

    def test_needs_monomial_beads(self):
        with pytest.raises(GraphValidationError):
            canonicalize(theta(["1 + t", 1, 1]))


class TestAutomorphisms:
    def test_theta(self, theta_graph):
        found = automorphisms(theta_graph)
        assert len(found) == 12
        assert all(a.sign == 1 for a in found)

    def test_strut(self, strut_graph):
        found = automorphisms(strut_graph)
        assert len(found) == 2

    def test_beads_break_symmetry(self):
        assert len(automorphisms(theta(["t", "t^2", "t^3"]))) == 1


class TestDocuments:
    def test_round_trip(self):
        g = theta(["t", "2*t^-1 + 1", 1])
        assert parse_graph(serialize_graph(g)) == g

    def test_default_bead_and_color(self):
        document = {
            "vertices": [{"name": "x", "kind": "leg", "flags": ["x0"]},
                         {"name": "y", "kind": "leg", "flags": ["y0"]}],
            "edges": [{"flags": ["x0", "y0"]}],
        }
        g = parse_graph(json.dumps(document))
        assert g == BeadGraph((Vertex("x", LEG, ("x0",), "*"), Vertex("y", LEG, ("y0",), "*")), (Edge("x0", "y0"),))

    def test_bad_bead_reports_path(self):
        document = json.loads(serialize_graph(theta()))
        document["edges"][2]["bead"] = "t^"
        with pytest.raises(ParseError) as info:
            parse_graph(json.dumps(document), source="g.json")
        assert "edges[2].bead" in str(info.value)
        assert "g.json" in str(info.value)

    def test_syntax_error_reports_line(self):
        with pytest.raises(ParseError) as info:
            parse_graph('{"vertices": [\n,]}')
        assert "line 2" in str(info.value)

    def test_unknown_kind(self):
        document = {"vertices": [{"name": "x", "kind": "quadrivalent", "flags": []}], "edges": []}
        with pytest.raises(ParseError):
            parse_graph(json.dumps(document))
