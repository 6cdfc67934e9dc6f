import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from beadcalc.errors import BlockShapeError, NonIntegralError, ParseError
from beadcalc.laurent import (HairSeries, LaurentMatrix, LaurentPoly, block_negative_inverse, lp_arith,
                              lp_augment, lp_involute)

T = LaurentPoly.t()


@st.composite
def laurent_polys(draw, span=4):
    terms = draw(st.dictionaries(st.integers(-span, span),
                                 st.fractions(min_value=-5, max_value=5, max_denominator=4), max_size=5))
    return LaurentPoly(terms)


def random_poly(rng, span=3, size=3):
    return LaurentPoly({rng.randint(-span, span): rng.randint(-3, 3) for _ in range(size)})


def random_arm_matrix(rng, n):
    block = [[LaurentPoly.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        q = random_poly(rng)
        block[i][i] = q + q.involute()
        for j in range(i + 1, n):
            p = random_poly(rng)
            block[i][j] = p
            block[j][i] = p.involute()
    return LaurentMatrix.from_blocks([
        [LaurentMatrix.zeros(n, n), LaurentMatrix.identity(n)],
        [LaurentMatrix.identity(n), LaurentMatrix(block)],
    ])


class TestExamples:
    def test_involute(self):
        assert lp_involute(T) == LaurentPoly.monomial(-1)
        assert lp_involute(LaurentPoly.one()) == 1
        assert lp_involute(LaurentPoly.parse("2*t + t^-3")) == LaurentPoly.parse("2*t^-1 + t^3")

    def test_augment(self):
        assert lp_augment(T) == 1
        assert lp_augment(LaurentPoly.zero()) == 0
        assert lp_augment(LaurentPoly.parse("3*t^2 - t + 1")) == 3

    def test_arith(self):
        assert lp_arith(1 + T, 1 - T ** -1, "mul") == T - T ** -1
        p = LaurentPoly.parse("2*t^-1 + 1 - 1/2*t^3")
        assert lp_arith(p, LaurentPoly.zero(), "add") == p
        assert lp_arith(T ** 2, T ** -2, "mul") == 1
        assert lp_arith(T, T, "sub").is_zero()

    def test_unknown_operation(self):
        with pytest.raises(ValueError):
            lp_arith(T, T, "div")

    def test_integral_mode_rejects_fractions(self):
        half = LaurentPoly.constant(Fraction(1, 2))
        assert lp_arith(T, T, "add", integral=True) == 2 * T
        with pytest.raises(NonIntegralError):
            lp_arith(half, T, "mul", integral=True)

    def test_negative_power_needs_a_monomial(self):
        assert (2 * T) ** -1 == LaurentPoly.monomial(-1, Fraction(1, 2))
        with pytest.raises(ZeroDivisionError):
            (1 + T) ** -1


class TestParsing:
    @pytest.mark.parametrize("text, expected", [
        ("t", {1: 1}),
        ("-t^-2 + 3", {-2: -1, 0: 3}),
        ("2*t^-1 + 1 - 1/2*t^3", {-1: 2, 0: 1, 3: Fraction(-1, 2)}),
        ("t^(-3)", {-3: 1}),
        ("  4  ", {0: 4}),
        ("t - t", {}),
    ])
    def test_parse(self, text, expected):
        assert LaurentPoly.parse(text) == LaurentPoly(expected)

    @pytest.mark.parametrize("text", ["", "t^", "t t", "1/0", "t^(2", "x", "2*"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            LaurentPoly.parse(text)

    def test_parse_error_reports_column(self):
        with pytest.raises(ParseError) as info:
            LaurentPoly.parse("1 + 2*x", source="bead")
        assert "column" in str(info.value)
        assert info.value.source == "bead"

    @given(laurent_polys())
    def test_str_parses_back(self, p):
        assert LaurentPoly.parse(str(p)) == p


class TestRingProperties:
    @given(laurent_polys(), laurent_polys())
    def test_involution_is_multiplicative(self, a, b):
        assert (a * b).involute() == a.involute() * b.involute()

    @given(laurent_polys())
    def test_involution_is_an_involution(self, p):
        assert p.involute().involute() == p

    @given(laurent_polys(), laurent_polys())
    def test_augmentation_is_a_ring_map(self, a, b):
        assert (a * b).augment() == a.augment() * b.augment()
        assert (a + b).augment() == a.augment() + b.augment()

    @given(laurent_polys(), laurent_polys(), laurent_polys())
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(laurent_polys())
    def test_no_zero_coefficients_stored(self, p):
        assert all(value != 0 for _, value in p.items())


class TestHairSeries:
    def test_exp_coefficients(self):
        series = HairSeries.exp(2, 3)
        assert [series.coefficient(n) for n in range(4)] == [1, 2, 2, Fraction(4, 3)]

    @given(st.integers(-4, 4), st.integers(-4, 4))
    def test_exp_is_multiplicative(self, a, b):
        assert HairSeries.exp(a, 5) * HairSeries.exp(b, 5) == HairSeries.exp(a + b, 5)

    def test_from_laurent_and_involute(self):
        p = LaurentPoly.parse("t + t^-1")
        series = HairSeries.from_laurent(p, 4)
        assert series.augment() == p.augment()
        assert series.involute() == HairSeries.from_laurent(p.involute(), 4)
        assert series.coefficient(1) == 0


class TestBlockInverse:
    def test_one_by_one(self):
        lk = LaurentPoly.parse("t + t^-1")
        matrix = LaurentMatrix([[0, 1], [1, lk]])
        assert block_negative_inverse(matrix) == LaurentMatrix([[lk, -1], [-1, 0]])

    def test_zero_block(self):
        zero = LaurentMatrix.from_blocks([[LaurentMatrix.zeros(2, 2), LaurentMatrix.identity(2)],
                                          [LaurentMatrix.identity(2), LaurentMatrix.zeros(2, 2)]])
        assert block_negative_inverse(zero) == -zero

    def test_seeded_round_trips(self):
        rng = random.Random(20)
        for case in range(100):
            n = rng.randint(1, 6)
            matrix = random_arm_matrix(rng, n)
            inverse = block_negative_inverse(matrix)
            minus_identity = -LaurentMatrix.identity(2 * n)
            assert inverse * matrix == minus_identity, case
            assert matrix * inverse == minus_identity, case

    def test_hairy_entries(self):
        entry = HairSeries.from_laurent(LaurentPoly.parse("t + t^-1"), 3)
        matrix = LaurentMatrix([[0, 1], [1, entry]])
        assert block_negative_inverse(matrix)[0, 0] == entry

    @pytest.mark.parametrize("entries", [
        [[1, 1], [1, 0]],
        [[0, 2], [1, 0]],
        [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
        [[0, 1], [1, "t"]],
    ])
    def test_rejects_other_shapes(self, entries):
        with pytest.raises(BlockShapeError):
            block_negative_inverse(LaurentMatrix(entries))

    def test_conjugate_transpose(self):
        matrix = LaurentMatrix([["t", "2"], ["t^-1", 0]])
        assert matrix.conjugate_transpose() == LaurentMatrix([["t^-1", "t"], ["2", 0]])
        assert not matrix.is_hermitian()
