import random

import pytest

from beadcalc.algebra import Space, normalize, structures
from beadcalc.contraction import (ClasperScheme, Vortex, all_pairings, arm_matrix, break_graph, complete_contraction,
                                  contraction_sign_audit, contraction_terms, pairing_from_arms, random_scheme)
from beadcalc.errors import SchemeError
from beadcalc.graphs import reverse_edge, spanning_forests, theta
from beadcalc.laurent import LaurentPoly

T = LaurentPoly.t()


def beaded(g, rng, window):
    forest = next(iter(spanning_forests(g)))
    free = [i for i in range(len(g.edges)) if i not in forest]
    return g.with_beads({i: LaurentPoly.monomial(rng.randint(-window, window)) for i in free})


class TestSymbolIdentity:
    @pytest.mark.parametrize("euler_deg", [2, 4])
    def test_beadless(self, euler_deg):
        for g in structures(euler_deg):
            result = complete_contraction(break_graph(g))
            assert result.element == normalize(g, Space.PHI)
            assert result.euler_degree == euler_deg

    @pytest.mark.parametrize("euler_deg", [2, 4])
    @pytest.mark.parametrize("seed", range(5))
    def test_beaded(self, euler_deg, seed):
        rng = random.Random(seed)
        for g in structures(euler_deg):
            g = beaded(g, rng, 2)
            if g.is_beadless():
                continue
            assert complete_contraction(break_graph(g)).element == normalize(g, Space.LAMBDA)

    def test_theta_has_one_matching(self, theta_graph):
        assert complete_contraction(break_graph(theta_graph)).matchings == 1

    def test_pairs_run_from_lower_to_higher_label(self):
        g = reverse_edge(theta(["t", 1, 1]), 0)
        [(coefficient, glued)] = contraction_terms(break_graph(g))
        assert coefficient == 1
        assert all(edge.tail < edge.head for edge in glued.edges)
        assert glued == theta(["t", 1, 1])
        assert complete_contraction(break_graph(g)).element == normalize(g, Space.LAMBDA)

    def test_transposed_readings(self):
        scheme = random_scheme(random.Random(4), vortex_count=2)
        assert complete_contraction(scheme.transpose_readings()).element == complete_contraction(scheme).element


class TestSigns:
    def test_theta(self, theta_graph):
        audit = contraction_sign_audit(break_graph(theta_graph), trials=10)
        assert audit["valid"], audit["issues"]
        assert audit["stats"]["trials"] == 10

    def test_random_schemes(self):
        rng = random.Random(11)
        for _ in range(3):
            audit = contraction_sign_audit(random_scheme(rng, vortex_count=2), trials=6)
            assert audit["valid"], audit["issues"]

    def test_single_flip(self, k4_graph):
        scheme = break_graph(k4_graph)
        assert complete_contraction(scheme.flip("v0")).element == -complete_contraction(scheme).element


class TestArms:
    def test_pairing_read_back(self):
        scheme = random_scheme(random.Random(2), vortex_count=2, density=0.7)
        labels = scheme.leg_labels
        table = pairing_from_arms(arm_matrix(scheme), labels)
        expected = {(x, y): scheme.entry(x, y) for x in labels for y in labels if scheme.entry(x, y) != 0}
        assert table == expected

    def test_label_count_mismatch(self, theta_graph):
        scheme = break_graph(theta_graph)
        with pytest.raises(SchemeError):
            pairing_from_arms(arm_matrix(scheme), scheme.leg_labels[:2])


class TestSchemes:
    def test_duplicate_vortex(self):
        with pytest.raises(SchemeError):
            ClasperScheme((Vortex("V", ("a", "b", "c")), Vortex("V", ("d", "e", "f"))))

    def test_repeated_leg(self):
        with pytest.raises(SchemeError):
            ClasperScheme((Vortex("V", ("a", "b", "c")), Vortex("W", ("a", "e", "f"))))

    def test_unknown_leg(self):
        with pytest.raises(SchemeError):
            ClasperScheme((Vortex("V", ("a", "b", "c")),), (("a", "z", LaurentPoly.one()),))

    def test_framing_must_be_symmetric(self):
        with pytest.raises(SchemeError):
            ClasperScheme((Vortex("V", ("a", "b", "c")),), (("a", "a", T),))

    def test_conflicting_readings(self):
        with pytest.raises(SchemeError):
            ClasperScheme((Vortex("V", ("a", "b", "c")),), (("a", "b", T), ("b", "a", T)))

    def test_reversed_reading(self):
        scheme = ClasperScheme((Vortex("V", ("a", "b", "c")),), (("a", "b", T),))
        assert scheme.entry("b", "a") == LaurentPoly.monomial(-1)
        assert scheme.entry("a", "c") == 0

    def test_odd_leg_count(self):
        with pytest.raises(SchemeError):
            complete_contraction(ClasperScheme((Vortex("V", ("a", "b", "c")),)))

    def test_break_rejects_legs(self, strut_graph):
        with pytest.raises(SchemeError):
            break_graph(strut_graph)

    def test_unknown_vortex(self, theta_graph):
        with pytest.raises(SchemeError):
            break_graph(theta_graph).flip("w")


@pytest.mark.parametrize("size, expected", [(0, 1), (2, 1), (4, 3), (6, 15)])
def test_all_pairings(size, expected):
    items = [str(i) for i in range(size)]
    assert len(list(all_pairings(items, lambda x, y: True))) == expected
