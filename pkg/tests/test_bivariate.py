import random
from fractions import Fraction as F

import pytest

from critcycles.polys import QQ, MultiPoly, PolyDomain, FracDomain, UniPoly, resultant
from critcycles.polys.bivar import (
    clear_denominators,
    content_split,
    multipoly_to_nested,
    nested_to_multipoly,
    resultant_interp,
)

QT = PolyDomain(QQ, "t")
FT = FracDomain("t")
T = UniPoly.gen(QQ, "t")


def rand_qt_poly(rng, xdeg, tdeg):
    cs = [
        UniPoly(QQ, [rng.randint(-5, 5) for _ in range(rng.randint(1, tdeg + 1))], "t")
        for _ in range(xdeg)
    ]
    cs.append(UniPoly(QQ, [rng.randint(1, 4)] + [rng.randint(-3, 3) for _ in range(tdeg)], "t"))
    return UniPoly(QT, cs, "x")


class TestClearDenominators:
    def test_basic(self):
        x = UniPoly.gen(FT, "x")
        tc = FT.gen()
        f = x**2 + (1 / tc) * x + tc / (tc + 1)
        cleared, den = clear_denominators(f)
        assert den == T * (T + 1)
        assert cleared.dom == QT
        # d*f == cleared as polynomials over Q(t)
        for i in range(f.degree + 1):
            assert FT.coerce(cleared[i]) == f[i] * FT.coerce(den)

    def test_polynomial_input_untouched(self):
        x = UniPoly.gen(FT, "x")
        f = x**2 - 3
        cleared, den = clear_denominators(f)
        assert den == UniPoly.const(QQ, 1, "t")
        assert cleared.specialize(F(7)) == UniPoly(QQ, [-3, 0, 1])


class TestContentSplit:
    def test_unique_normalization(self):
        xt = UniPoly.gen(QT, "x")
        tp = UniPoly(QT, [T], "x")
        f = (tp * 2 - 2) * (xt * 3 - tp)
        nb = content_split(f)
        assert nb.content.as_poly() == (T - 1) * 2
        assert nb.primitive == xt * 3 - tp
        assert nb.primitive.lc.lc > 0

    def test_frac_content(self):
        x = UniPoly.gen(FT, "x")
        tc = FT.gen()
        f = (x * 2 - 2) * (tc / (tc - 1))
        nb = content_split(f)
        assert nb.primitive == UniPoly.gen(QT, "x") - 1
        assert nb.content == 2 * tc / (tc - 1)
        assert nb.reassemble(FT) == f

    def test_reassemble_random(self):
        rng = random.Random(17)
        x = UniPoly.gen(FT, "x")
        tc = FT.gen()
        for _ in range(10):
            f = sum(
                (
                    (tc ** rng.randint(0, 2) / (tc + rng.randint(2, 5)))
                    * x**i
                    for i in range(rng.randint(1, 3))
                ),
                x ** rng.randint(3, 4),
            )
            nb = content_split(f)
            assert nb.reassemble(FT) == f


class TestNestedConversion:
    def test_roundtrip(self):
        rs = ("r", "s")
        r = MultiPoly.var(rs, "r")
        s = MultiPoly.var(rs, "s")
        p = r**3 * s - 2 * s**2 + r - 7
        for outer in ("r", "s"):
            nested = multipoly_to_nested(p, outer)
            assert nested.var == outer
            back = nested_to_multipoly(nested, rs)
            assert back == p

    def test_eval_consistency(self):
        rs = ("r", "s")
        r = MultiPoly.var(rs, "r")
        s = MultiPoly.var(rs, "s")
        p = r**2 - 4 * s + 12
        nested = multipoly_to_nested(p, "r")
        assert nested.specialize(F(3)).eval(F(2)) == p.eval((F(2), F(3)))


class TestResultantInterp:
    def test_matches_direct(self):
        rng = random.Random(23)
        for _ in range(15):
            f = rand_qt_poly(rng, rng.randint(1, 3), 2)
            g = rand_qt_poly(rng, rng.randint(1, 3), 2)
            assert resultant_interp(f, g) == resultant(f, g)

    def test_larger_case_matches_direct(self):
        rng = random.Random(29)
        f = rand_qt_poly(rng, 5, 3)
        g = rand_qt_poly(rng, 4, 3)
        assert resultant_interp(f, g) == resultant(f, g)

    def test_constant_cases(self):
        xt = UniPoly.gen(QT, "x")
        tp = UniPoly(QT, [T], "x")
        c = UniPoly(QT, [T + 2], "x")
        f = xt**2 - tp
        assert resultant_interp(f, c) == (T + 2) ** 2
