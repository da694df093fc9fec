import math
import random
from fractions import Fraction as F

import pytest

from critcycles.errors import BudgetExceededError, FieldMixError
from critcycles.numbers import (
    INF,
    ProjPoint,
    QuadElement,
    divisors,
    factorint,
    fraction_squarefree_part,
    height,
    integer_root,
    is_probable_prime,
    parse_quad,
    perfect_square_root,
    quad_cube_root,
    quad_sqrt,
    rational_cube_root,
    rational_square_root,
    squarefree_part,
)


class TestProjPoint:
    def test_canonical_form(self):
        p = ProjPoint(10, -15)
        assert (p.a, p.b) == (-2, 3)
        assert ProjPoint(0, 7) == ProjPoint(0, 1)
        assert ProjPoint(-3, 0) == ProjPoint(1, 0)

    def test_zero_zero_rejected(self):
        with pytest.raises(ValueError):
            ProjPoint(0, 0)

    def test_infinity(self):
        p = ProjPoint(1, 0)
        assert p.is_infinity
        assert p.value() is INF
        assert str(p) == "inf"

    def test_value_and_parse(self):
        assert ProjPoint(7, 2).value() == F(7, 2)
        assert ProjPoint.parse("-7/2") == ProjPoint(-7, 2)
        assert ProjPoint.parse("inf").is_infinity
        assert ProjPoint.from_value(F(4, 6)) == ProjPoint(2, 3)
        assert ProjPoint.from_value(INF) == ProjPoint(1, 0)

    def test_height(self):
        assert height(ProjPoint(-2, 3)) == 3
        assert height(F(22, 7)) == 22
        assert height(INF) == 1
        assert height(0) == 1 or height(0) == 0  # max(|0|, 1)

    def test_height_zero(self):
        assert height(F(0)) == 1


class TestRadicals:
    def test_perfect_square_root(self):
        assert perfect_square_root(144) == 12
        assert perfect_square_root(0) == 0
        assert perfect_square_root(2) is None
        assert perfect_square_root(-4) is None

    def test_integer_root(self):
        assert integer_root(27, 3) == 3
        assert integer_root(-27, 3) == -3
        assert integer_root(-27, 2) is None
        assert integer_root(10**30, 3) == 10**10
        assert integer_root(10**30 + 1, 3) is None

    def test_rational_roots(self):
        assert rational_square_root(F(4, 9)) == F(2, 3)
        assert rational_square_root(F(2)) is None
        assert rational_cube_root(F(-8, 27)) == F(-2, 3)
        assert rational_cube_root(F(9)) is None


class TestFactoring:
    def test_small(self):
        assert factorint(1) == {}
        assert factorint(-12) == {2: 2, 3: 1}
        assert factorint(97) == {97: 1}

    def test_large_semiprime(self):
        p, q = 1000003, 1000033
        assert factorint(p * q) == {p: 1, q: 1}

    def test_probable_prime(self):
        assert is_probable_prime(2)
        assert not is_probable_prime(1)
        assert is_probable_prime(2**31 - 1)
        assert not is_probable_prime(2**32 + 1)
        # strong pseudoprime to several bases
        assert not is_probable_prime(3215031751)

    def test_squarefree_part(self):
        assert squarefree_part(0) == 0
        assert squarefree_part(-12) == -3
        assert squarefree_part(49) == 1
        assert squarefree_part(50) == 2
        assert fraction_squarefree_part(F(-8, 3)) == -6
        assert fraction_squarefree_part(F(0)) == 0

    def test_squarefree_random_roundtrip(self):
        rng = random.Random(5)
        for _ in range(50):
            n = rng.randint(1, 10**6)
            d = squarefree_part(n)
            assert n % d == 0
            assert perfect_square_root(n // d) is not None

    def test_divisors(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert divisors(-12) == [1, 2, 3, 4, 6, 12]
        assert divisors(1) == [1]

    def test_divisor_budget(self):
        with pytest.raises(BudgetExceededError) as e:
            divisors(2**20, budget=10)
        assert e.value.partial["divisor_count"] == 21


class TestQuadField:
    def test_construction_checks(self):
        with pytest.raises(ValueError):
            QuadElement(4, F(1), F(1))
        with pytest.raises(ValueError):
            QuadElement(1, F(1), F(1))

    def test_arithmetic(self):
        a = QuadElement(5, F(1), F(2))
        b = QuadElement(5, F(-3), F(1, 2))
        assert a + b == QuadElement(5, F(-2), F(5, 2))
        assert a * b == QuadElement(5, F(-3) + 5 * F(1), F(1, 2) - 6)
        assert a - a == QuadElement(5, 0, 0)
        assert (a / b) * b == a
        assert a**3 == a * a * a
        assert 2 * a == a + a
        assert 1 / QuadElement(-1, 0, 1) == QuadElement(-1, 0, -1)

    def test_norm_trace_conjugate(self):
        a = QuadElement(-3, F(2), F(5))
        assert a.norm() == 4 + 3 * 25
        assert a.trace() == 4
        assert a * a.conjugate() == QuadElement(-3, a.norm(), 0)

    def test_field_mix_rejected(self):
        a = QuadElement(5, F(1), F(1))
        b = QuadElement(7, F(1), F(1))
        with pytest.raises(FieldMixError):
            a + b

    def test_parse_and_str_roundtrip(self):
        samples = [
            QuadElement(7, F(3, 2), F(-5)),
            QuadElement(7, F(0), F(-1)),
            QuadElement(7, F(12), F(0)),
            QuadElement(-1, F(-1, 3), F(1)),
        ]
        for e in samples:
            assert parse_quad(str(e), e.d) == e

    def test_quad_sqrt(self):
        rng = random.Random(9)
        for d in (-1, -3, 5, 7):
            for _ in range(20):
                u = QuadElement(
                    d,
                    F(rng.randint(-9, 9), rng.randint(1, 4)),
                    F(rng.randint(-9, 9), rng.randint(1, 4)),
                )
                sq = u * u
                r = quad_sqrt(sq)
                assert r is not None and r * r == sq

    def test_quad_sqrt_none(self):
        assert quad_sqrt(QuadElement(5, F(3), F(1))) is None
        assert quad_sqrt(QuadElement(-1, F(-1), F(0))) is not None  # i^2

    def test_quad_sqrt_rational_cases(self):
        assert quad_sqrt(QuadElement(5, F(9), F(0))) == QuadElement(5, 3, 0)
        assert quad_sqrt(QuadElement(5, F(5), F(0))) == QuadElement(5, 0, 1)

    def test_quad_cube_root_pinned(self):
        # cube root of 8 inside Q(sqrt(-3)) is the rational 2, preferred
        # over the two non-rational roots that also live in that field
        assert quad_cube_root(QuadElement(-3, F(8), F(0))) == QuadElement(
            -3, F(2), F(0)
        )
        # cube root of i in Q(i): (-i)^3 = i
        assert quad_cube_root(QuadElement(-1, F(0), F(1))) == QuadElement(
            -1, F(0), F(-1)
        )

    def test_quad_cube_root_roundtrip(self):
        rng = random.Random(3)
        for d in (-3, -1, 2):
            for _ in range(15):
                u = QuadElement(
                    d, F(rng.randint(-5, 5)), F(rng.randint(-5, 5))
                )
                c = quad_cube_root(u * u * u)
                assert c is not None and c * c * c == u * u * u

    def test_quad_cube_root_none(self):
        assert quad_cube_root(QuadElement(5, F(2), F(0))) is None
