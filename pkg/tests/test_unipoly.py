import random
from fractions import Fraction as F

import pytest

from critcycles.errors import (
    InexactDivisionError,
    NotAPerfectPowerError,
    PoleError,
    ReducibleModulusError,
)
from critcycles.numbers import QuadElement
from critcycles.polys import (
    QQ,
    FracDomain,
    MultiPolyRing,
    PolyDomain,
    QuadDomain,
    QuotientField,
    RatFunc,
    UniPoly,
    discriminant,
    lagrange_interp,
    nth_root_poly,
    poly_gcd,
    resultant,
    squarefree_part,
)

X = UniPoly.gen(QQ)
QT = PolyDomain(QQ, "t")
RS = MultiPolyRing(("r", "s"))


def rand_qq_poly(rng, deg, monic=False):
    cs = [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(deg)]
    cs.append(F(1) if monic else F(rng.randint(1, 5)))
    return UniPoly(QQ, cs)


def sylvester_resultant(a, b):
    """Oracle: determinant of the Sylvester matrix via Gaussian
    elimination over Q."""
    m, n = a.degree, b.degree
    size = m + n
    ac = [a[i] for i in range(m, -1, -1)]
    bc = [b[i] for i in range(n, -1, -1)]
    rows = [
        [F(0)] * i + ac + [F(0)] * (size - m - 1 - i) for i in range(n)
    ] + [
        [F(0)] * i + bc + [F(0)] * (size - n - 1 - i) for i in range(m)
    ]
    det = F(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if rows[r][c]), None)
        if piv is None:
            return F(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for r in range(c + 1, size):
            if rows[r][c]:
                k = rows[r][c] * inv
                rows[r] = [rows[r][j] - k * rows[c][j] for j in range(size)]
    return det


class TestBasics:
    def test_normalization(self):
        p = UniPoly(QQ, [1, 2, 0, 0])
        assert p.degree == 1 and p.coeffs == (F(1), F(2))
        assert not UniPoly(QQ, [0, 0])
        assert UniPoly(QQ, []).degree == -1

    def test_arithmetic(self):
        f = X**2 - 1
        g = X + 1
        assert f == (X - 1) * g
        assert f + 1 == X**2
        assert (g**3)[1] == 3
        assert -f == 1 - X**2
        assert 2 - f == 3 - X**2

    def test_eval(self):
        f = X**3 - 2 * X + 5
        assert f.eval(F(2)) == 9
        assert f.eval(F(-1, 2)) == F(-1, 8) + 1 + 5
        assert UniPoly(QQ, []).eval(F(3)) == 0

    def test_compose(self):
        f = X**2 + 1
        g = X - 3
        assert f.compose(g) == (X - 3) ** 2 + 1

    def test_derivative(self):
        assert (X**3 - 2 * X + 5).derivative() == 3 * X**2 - 2
        assert UniPoly.const(QQ, 7).derivative() == UniPoly(QQ, [])

    def test_from_roots(self):
        f = UniPoly.from_roots(QQ, [F(1), F(-2), F(1, 2)])
        assert f.eval(F(1)) == 0 and f.eval(F(-2)) == 0
        assert f.eval(F(1, 2)) == 0 and f.degree == 3

    def test_str(self):
        assert str(X**3 - 2 * X + 5) == "x^3 - 2*x + 5"
        assert str(UniPoly(QQ, [])) == "0"
        assert str(-X) == "-x"
        assert str(F(1, 2) * X**2 - 1) == "1/2*x^2 - 1"


class TestDivision:
    def test_field_divmod(self):
        f = X**5 - 3 * X + 1
        g = 2 * X**2 + X - 1
        q, r = f.divmod(g)
        assert q * g + r == f and r.degree < g.degree

    def test_pseudo_divmod_identity(self):
        rng = random.Random(1)
        for _ in range(40):
            a = rand_qq_poly(rng, rng.randint(2, 6))
            b = rand_qq_poly(rng, rng.randint(1, 4))
            q, r = a.pseudo_divmod(b)
            k = a.degree - b.degree + 1
            assert a.scale(b.lc**k) == q * b + r
            assert r.degree < b.degree

    def test_exact_div(self):
        f = (X - 1) * (X**2 + 2)
        assert f.exact_div(X - 1) == X**2 + 2
        with pytest.raises(InexactDivisionError):
            (f + 1).exact_div(X - 1)

    def test_exact_div_over_qt(self):
        t = UniPoly(QT, [QT.coerce(UniPoly.gen(QQ, "t"))], "x")
        xt = UniPoly.gen(QT, "x")
        f = (xt - t) * (xt**2 + t * xt + 1)
        assert f.exact_div(xt - t) == xt**2 + t * xt + 1
        with pytest.raises(InexactDivisionError):
            (f + 1).exact_div(xt - t)

    def test_exact_div_multipoly(self):
        r = RS.gen("r")
        xv = UniPoly.gen(RS, "x")
        f = (xv - r) * (r * xv + 1)
        assert f.exact_div(xv - r) == r * xv + 1


class TestResultant:
    def test_pinned_values(self):
        assert resultant(X - 2, X - 5) == -3
        assert resultant(X**3 - 1, X**3) == 1
        assert resultant(X**3 - 1, UniPoly.const(QQ, -2)) == -8
        assert resultant(UniPoly.const(QQ, 3), UniPoly.const(QQ, 4)) == 1
        assert resultant(X, UniPoly(QQ, [])) == 0

    def test_against_sylvester_oracle(self):
        rng = random.Random(7)
        for _ in range(150):
            a = rand_qq_poly(rng, rng.randint(1, 6))
            b = rand_qq_poly(rng, rng.randint(1, 6))
            assert resultant(a, b) == sylvester_resultant(a, b)

    def test_swap_sign(self):
        rng = random.Random(8)
        for _ in range(30):
            a = rand_qq_poly(rng, rng.randint(1, 5))
            b = rand_qq_poly(rng, rng.randint(1, 5))
            sign = -1 if (a.degree * b.degree) % 2 else 1
            assert resultant(a, b) == sign * resultant(b, a)

    def test_multiplicative(self):
        rng = random.Random(9)
        for _ in range(20):
            a = rand_qq_poly(rng, rng.randint(1, 3))
            b = rand_qq_poly(rng, rng.randint(1, 3))
            c = rand_qq_poly(rng, rng.randint(1, 3))
            assert resultant(a * b, c) == resultant(a, c) * resultant(b, c)

    def test_root_product(self):
        f = UniPoly.from_roots(QQ, [F(1), F(-2)]).scale(3)
        g = X**2 + 1
        # lc(f)^deg g * g(1) * g(-2)
        assert resultant(f, g) == 9 * 2 * 5

    def test_over_qt_specializes(self):
        rng = random.Random(10)
        tq = UniPoly.gen(QQ, "t")
        for _ in range(25):
            a = UniPoly(
                QT,
                [
                    UniPoly(QQ, [rng.randint(-4, 4), rng.randint(-2, 2)], "t")
                    for _ in range(rng.randint(2, 4))
                ]
                + [QT.coerce(rng.randint(1, 3))],
                "x",
            )
            b = UniPoly(
                QT,
                [
                    UniPoly(QQ, [rng.randint(-4, 4), rng.randint(-2, 2)], "t")
                    for _ in range(rng.randint(1, 3))
                ]
                + [QT.coerce(rng.randint(1, 3))],
                "x",
            )
            R = resultant(a, b)
            for t0 in (F(0), F(3), F(-1, 2)):
                assert R.eval(t0) == resultant(
                    a.specialize(t0), b.specialize(t0)
                )

    def test_over_multipoly_specializes(self):
        r, s = RS.gen("r"), RS.gen("s")
        xv = UniPoly.gen(RS, "x")
        a = xv**3 - r * xv**2 + s * xv + (r * s - 2)
        b = (r + 1) * xv**2 + s * xv - r
        R = resultant(a, b)
        for pt in ((F(2), F(3)), (F(-1, 2), F(5)), (F(0), F(-4))):
            ra = a.specialize(pt)
            rb = b.specialize(pt)
            if ra.degree == a.degree and rb.degree == b.degree:
                assert R.eval(pt) == resultant(ra, rb)

    def test_quadratic_field(self):
        K = QuadDomain(5)
        a = QuadElement(5, F(1), F(1))
        xk = UniPoly.gen(K)
        assert resultant(xk - a, xk - a.conjugate()) == a - a.conjugate()

    def test_discriminant(self):
        assert discriminant(X**2 + X + 1) == -3
        assert discriminant(X**2 - 2) == 8
        assert discriminant(X**3 - X) == 4
        # scaling f by c multiplies disc by c^(2n-2)
        assert discriminant((X**2 - 2).scale(3)) == 8 * 9


class TestGcd:
    def test_integer_normal_form(self):
        f = (X - 1) ** 2 * (2 * X + 3)
        g = (X - 1) * (4 * X - 5)
        assert poly_gcd(f, g) == X - 1
        assert poly_gcd(f, f) == f.primitive()

    def test_coprime(self):
        assert poly_gcd(X**2 + 1, X - 3) == UniPoly.const(QQ, 1)

    def test_squarefree_part(self):
        f = (X - 1) ** 3 * (2 * X + 3) ** 2 * (X**2 + 1)
        assert squarefree_part(f) == (X - 1) * (2 * X + 3) * (X**2 + 1)

    def test_gcd_random_divides(self):
        rng = random.Random(12)
        for _ in range(30):
            h = rand_qq_poly(rng, rng.randint(1, 3))
            a = h * rand_qq_poly(rng, rng.randint(0, 3))
            b = h * rand_qq_poly(rng, rng.randint(0, 3))
            g = poly_gcd(a, b)
            assert g.divides(a) and g.divides(b)
            assert h.primitive().divides(g)

    def test_gcd_over_qt(self):
        t = QT.coerce(UniPoly.gen(QQ, "t"))
        xt = UniPoly.gen(QT, "x")
        tp = UniPoly(QT, [t], "x")
        a = (xt - tp) ** 2 * (xt + 1)
        b = (xt - tp) * (xt - 3)
        assert poly_gcd(a, b) == xt - tp

    def test_gcd_over_qt_content(self):
        t = QT.coerce(UniPoly.gen(QQ, "t"))
        tp = UniPoly(QT, [t], "x")
        xt = UniPoly.gen(QT, "x")
        # common content t-1 must be picked up
        a = UniPoly(QT, [t - 1], "x") * (xt + 1)
        b = UniPoly(QT, [t - 1], "x") * (xt - tp)
        g = poly_gcd(a, b)
        assert g == UniPoly(QT, [t - 1], "x")


class TestContent:
    def test_rational_content(self):
        f = UniPoly(QQ, [F(4, 3), F(-2), F(8, 3)])
        c, p = f.content_primitive()
        assert c * p == f
        assert c == F(2, 3)
        assert p.coeffs == (F(2), F(-3), F(4))

    def test_sign_convention(self):
        f = UniPoly(QQ, [2, -4])
        c, p = f.content_primitive()
        assert c == -2
        assert p == 2 * X - 1
        assert p.lc > 0 and p.scale(c) == f

    def test_qt_content(self):
        t = QT.coerce(UniPoly.gen(QQ, "t"))
        xt = UniPoly.gen(QT, "x")
        f = UniPoly(QT, [t * 2 - 2], "x") * (xt * 3 - 1)
        c, p = f.content_primitive()
        assert UniPoly(QT, [c], "x") * p == f
        assert c == (t - 1).scale(2) or c == (t - 1) * 2

    def test_multipoly_content_is_scalar_only(self):
        r = RS.gen("r")
        xv = UniPoly.gen(RS, "x")
        f = (xv * 4 - r * 2).scale(F(1, 6))
        c, p = f.content_primitive()
        assert c.is_constant
        assert UniPoly(RS, [c], "x") * p == f


class TestPowersAndInterp:
    def test_nth_root(self):
        h = X**2 - 3 * X + F(1, 2)
        assert nth_root_poly(h**3, 3) == h
        assert nth_root_poly(h**2, 2) == h
        with pytest.raises(NotAPerfectPowerError):
            nth_root_poly(h**2 + 1, 2)
        with pytest.raises(NotAPerfectPowerError):
            nth_root_poly(X**3, 2)

    def test_nth_root_over_qt(self):
        t = QT.coerce(UniPoly.gen(QQ, "t"))
        xt = UniPoly.gen(QT, "x")
        h = xt**2 + UniPoly(QT, [t], "x") * xt - 1
        assert nth_root_poly(h**4, 4) == h

    def test_lagrange(self):
        xs = [F(i) for i in range(6)]
        ys = [F(i) ** 4 - F(i) + 2 for i in range(6)]
        p = lagrange_interp(QQ, xs, ys, "u")
        assert p == UniPoly.gen(QQ, "u") ** 4 - UniPoly.gen(QQ, "u") + 2

    def test_lagrange_roundtrip_random(self):
        rng = random.Random(13)
        for _ in range(15):
            f = rand_qq_poly(rng, rng.randint(0, 5))
            xs = [F(i) for i in range(f.degree + 1)]
            ys = [f.eval(v) for v in xs]
            assert lagrange_interp(QQ, xs, ys) == f


class TestRatFunc:
    def test_reduction(self):
        t = UniPoly.gen(QQ, "t")
        q = RatFunc(t**2 - 1, t + 1)
        assert q.is_poly and q.as_poly() == t - 1
        q2 = RatFunc((t - 2) * 3, (t - 2) * (t + 5) * 2)
        assert q2.num == UniPoly.const(QQ, F(3, 2), "t")
        assert q2.den == t + 5

    def test_arithmetic(self):
        FD = FracDomain("t")
        t = FD.gen()
        assert (t**2 - 1) / (t + 1) == t - 1
        assert t / t == FD.one
        assert (1 / t + 1 / t) == 2 / t
        assert (t + 1) * (1 / (t + 1)) == FD.one

    def test_eval_and_pole(self):
        FD = FracDomain("t")
        t = FD.gen()
        q = 1 / (t - 2)
        assert q.eval(F(3)) == 1
        with pytest.raises(PoleError):
            q.eval(F(2))

    def test_zero_denominator_rejected(self):
        t = UniPoly.gen(QQ, "t")
        with pytest.raises(ZeroDivisionError):
            RatFunc(t, UniPoly(QQ, [], "t"))


class TestQuotientField:
    def test_sqrt2_inverse(self):
        QF = QuotientField(X**2 - 2)
        y = QF.gen()
        assert QF.exact_div(QF.one, y + 1) == y - 1
        assert y * y == QF.coerce(2)

    def test_reducible_modulus_detected(self):
        QF = QuotientField((X - 1) * (X + 1))
        y = QF.gen()
        with pytest.raises(ReducibleModulusError) as e:
            QF.exact_div(QF.one, y - 1)
        assert e.value.factor is not None
        assert e.value.factor == X - 1

    def test_gcd_over_quotient(self):
        QF = QuotientField(X**2 - 2)
        y = QF.gen()
        xq = UniPoly.gen(QF, "z")
        a = (xq - y) * (xq + 1)
        b = (xq - y) * (xq - 1)
        assert poly_gcd(a, b) == xq - y
