from fractions import Fraction
from math import factorial

import pytest

from beadcalc.algebra import Space, normalize
from beadcalc.errors import DegreeError, GraphValidationError
from beadcalc.graphs import euler_degree, strut, theta
from beadcalc.laurent import LaurentPoly
from beadcalc.hair import augment_beads, edge_weights, hair_images_agree, hair_map, hair_terms, leg_part


class TestHairMap:
    def test_beadless_graph_grows_no_hair(self, theta_graph):
        assert hair_map(theta_graph, 3) == normalize(theta_graph, Space.STAR)

    def test_strut_hair_vanishes_by_antisymmetry(self):
        # the single extra term is a Y with three * legs
        assert hair_map(strut("t"), 2) == normalize(strut(), Space.STAR)

    def test_euler_degree_is_preserved(self):
        image = hair_map(theta(["t", "t^-1", 1]), 3)
        assert image.euler_degrees() == [2]
        assert all(euler_degree(g) == 2 for g, _ in image.items())

    def test_linearity(self):
        first, second = theta(["t", 1, 1]), theta(["t^2", "t", 1])
        combined = hair_map([(1, first), (2, second)], 3)
        assert combined == hair_map(first, 3) + hair_map(second, 3).scale(2)

    def test_truncation(self):
        image = hair_map(theta(["t^2", 1, 1]), 3)
        assert all(len(g.legs) <= 2 for g, _ in image.items())
        assert leg_part(image, 0) == normalize(theta(), Space.STAR)

    def test_term_weights(self):
        terms = hair_terms(theta(["t^2", 1, 1]), 3)
        weights = sorted(weight for weight, _ in terms)
        # 1 for the bare graph, 2 for one hair, 2 for two hairs
        assert weights == [1, 2, 2]

    def test_four_hairs(self):
        image = hair_map(theta(["t", 1, 1]), 5)
        assert max(len(g.legs) for g, _ in image.items()) == 4
        assert [c for _, c in leg_part(image, 4).items()] == [Fraction(-1, 24)]

    def test_colored_strut_weights(self):
        terms = hair_terms(strut("t^2", ("A", "B")), 5)
        assert [weight for weight, _ in terms] == [Fraction(2 ** n, factorial(n)) for n in range(5)]
        assert [len(g.legs) for _, g in terms] == [2, 3, 4, 5, 6]
        image = hair_map(strut("t^2", ("A", "B")), 5)
        assert image.space == Space.HAIRY
        assert sorted(len(g.legs) for g, _ in image.items()) == [2, 3, 4, 5, 6]

    def test_degree_below_the_graph(self, theta_graph):
        with pytest.raises(DegreeError):
            hair_terms(theta_graph, 0)

    def test_needs_monomial_beads(self):
        with pytest.raises(GraphValidationError):
            hair_terms(theta(["1 + t", 1, 1]), 3)


class TestEdgeWeights:
    def test_single_bead(self):
        assert edge_weights([2], 2) == {0: 1, 1: 2, 2: 2}

    def test_inverse_beads_cancel(self):
        assert edge_weights([1, -1], 3) == {0: 1, 1: 0, 2: 0, 3: 0}

    def test_third_order(self):
        assert edge_weights([1], 3)[3] == Fraction(1, 6)


def test_augmentation(theta_graph):
    assert augment_beads(theta(["t + 2", 1, 1])) == normalize(theta_graph, Space.STAR).scale(3)
    assert augment_beads(theta(["t - 1", 1, 1])).is_zero()


class TestHolonomyInvariance:
    @pytest.mark.parametrize("a, b", [(1, 1), (2, -1), (0, 2)])
    def test_split_bead_matches_joined_bead(self, a, b):
        # a holonomy move at the tail vertex carries t^(a+b) on one edge to t^a, t^-b, t^-b
        joined = theta([LaurentPoly.monomial(a + b), 1, 1])
        split = theta([LaurentPoly.monomial(a), LaurentPoly.monomial(-b), LaurentPoly.monomial(-b)])
        assert hair_images_agree(joined, split, 3, 2)