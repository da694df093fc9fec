import random
from fractions import Fraction as F

import pytest

from critcycles.errors import BadPrimeError, BudgetExceededError
from critcycles.polys import QQ, UniPoly
from critcycles.polys import modp
from critcycles.polys.factor2 import (
    irreducibility_certificate,
    quadratic_factors,
)
from critcycles.polys.roots import rational_roots, rational_roots_of_coeffs

X = UniPoly.gen(QQ)


class TestRationalRoots:
    def test_simple(self):
        f = (3 * X - 2) ** 2 * (X + 5) * (X**2 + X + 1) * (7 * X + 1)
        expected = [(F(-5), 1), (F(-1, 7), 1), (F(2, 3), 2)]
        for method in ("divisors", "lift", "auto"):
            assert rational_roots(f, method=method) == expected

    def test_zero_root(self):
        f = X**3 * (X - 1)
        assert rational_roots(f) == [(F(0), 3), (F(1), 1)]

    def test_no_roots(self):
        assert rational_roots(X**2 + 1) == []
        assert rational_roots(X**2 - 2) == []

    def test_constant_and_zero(self):
        assert rational_roots(UniPoly.const(QQ, 5)) == []
        with pytest.raises(ValueError):
            rational_roots(UniPoly(QQ, []))

    def test_fractional_coefficients(self):
        f = (X - F(1, 2)) * (X + F(2, 3))
        assert [r for r, _ in rational_roots(f)] == [F(-2, 3), F(1, 2)]

    def test_big_coefficients_lift(self):
        r1 = F(10**17 + 9, 10**13 + 7)
        r2 = F(-3, 10**19 + 51)
        f = (X - r1) * (X - r2) * (X**2 + 12345)
        f = f.scale((10**13 + 7) * (10**19 + 51))
        roots = [r for r, _ in rational_roots(f, method="lift")]
        assert roots == sorted([r1, r2])

    def test_auto_falls_back_on_huge_constants(self):
        # constant term is a 120-bit semiprime; auto must not stall
        p = 2**61 - 1
        f = (X - 1) * X.scale(p) + 0 * X  # placeholder shape
        f = (p * p) * X**2 - (p * p + 1) * X + 1  # roots 1 and 1/p^2
        roots = [r for r, _ in rational_roots(f, method="auto")]
        assert roots == [F(1, p * p), F(1)]

    def test_budget(self):
        f = UniPoly(QQ, [2**30 * 3**10 * 5 * 7 * 11, 0, 0, 1])
        with pytest.raises(BudgetExceededError):
            rational_roots(f, method="divisors", budget=50)

    def test_random_agreement(self):
        rng = random.Random(21)
        for _ in range(25):
            roots = [
                F(rng.randint(-8, 8), rng.randint(1, 6)) for _ in range(3)
            ]
            f = UniPoly.from_roots(QQ, roots) * (X**2 + 3)
            a = rational_roots(f, method="divisors")
            b = rational_roots(f, method="lift")
            assert a == b
            found = sorted(r for r, _ in a)
            assert found == sorted(set(roots))
            assert sum(m for _, m in a) == 3

    def test_of_coeffs(self):
        assert rational_roots_of_coeffs([-1, 0, 1]) == [F(-1), F(1)]


class TestModP:
    def test_roots_mod(self):
        # x^2 - 1 mod 7
        assert modp.roots_mod([6, 0, 1], 7) == [1, 6]
        assert modp.roots_mod([1, 0, 1], 7) == []
        assert modp.roots_mod([0, 1], 7) == [0]

    def test_factor_mod_p(self):
        # (x^2+1)(x-3) mod 11: x^2+1 splits mod 11? -1 is not a QR mod 11
        unit, factors = modp.factor_mod_p([*_mul([1, 0, 1], [-3, 1])], 11)
        assert unit == 1
        assert sorted(len(f) for f in factors) == [2, 3]

    def test_bad_prime(self):
        with pytest.raises(BadPrimeError):
            modp.factor_mod_p([1, 2, 1], 5)  # (x+1)^2 not squarefree
        with pytest.raises(BadPrimeError):
            modp.factor_mod_p([1, 5], 5)  # lc divisible by p

    def test_factor_degrees(self):
        f = _mul(_mul([1, 1], [2, 1]), [1, 0, 0, 1, 1])
        degs = modp.factor_degrees(f, 10007)
        assert sum(degs) == 6

    def test_rational_reconstruct(self):
        M = 2**70
        val = F(-22, 7)
        u = val.numerator * pow(7, -1, M) % M
        assert modp.rational_reconstruct(u, M, 100, 100) == val
        assert modp.rational_reconstruct(u, M, 3, 2) is None

    def test_lift_root(self):
        f = [-2, 0, 1]  # x^2 - 2, root 3 mod 7
        r, m = modp.lift_root(f, 3, 7, 10**12)
        assert (r * r - 2) % m == 0

    def test_nextprime(self):
        assert modp.nextprime(1) == 2
        assert modp.nextprime(13) == 17
        assert modp.nextprime(1 << 25) == 33554467


def _mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


class TestQuadraticFactors:
    def test_basic(self):
        f = (X**2 + X + 1) * (2 * X**2 - 3) * (X - 4)
        qf = quadratic_factors(f)
        assert len(qf) == 2
        assert (X**2 + X + 1) in qf
        assert (2 * X**2 - 3) in qf

    def test_repeated_factor_counted_once(self):
        f = (X**2 + 1) ** 3 * (X - 1)
        assert quadratic_factors(f) == [X**2 + 1]

    def test_reducible_quadratics_excluded(self):
        f = (X - 1) * (X - 2) * (X**2 + 5)
        assert quadratic_factors(f) == [X**2 + 5]

    def test_pure_quadratic(self):
        assert quadratic_factors(3 * X**2 - X + 5) == [3 * X**2 - X + 5]
        assert quadratic_factors(X**2 - 1) == []

    def test_none(self):
        assert quadratic_factors(X**3 - 2) == []
        assert quadratic_factors(X + 1) == []

    def test_random_products(self):
        rng = random.Random(31)
        for _ in range(15):
            a, b, c = (
                rng.randint(1, 4),
                rng.randint(-6, 6),
                rng.randint(1, 9),
            )
            quad = a * X**2 + b * X + c
            from critcycles.numbers import perfect_square_root

            if perfect_square_root(b * b - 4 * a * c) is not None:
                continue
            f = quad * (X - rng.randint(-5, 5)) * (X**2 + rng.randint(1, 9) * X + 23)
            found = quadratic_factors(f)
            assert quad.primitive() in found


class TestIrreducibility:
    def test_linear(self):
        assert irreducibility_certificate(X - 3).is_irreducible

    def test_reducible_with_factor(self):
        cert = irreducibility_certificate((X**2 + 1) * (X**3 - X - 1))
        assert cert.status == "reducible"
        assert cert.factor is not None
        assert cert.factor.divides((X**2 + 1) * (X**3 - X - 1))

    def test_rational_root_factor(self):
        cert = irreducibility_certificate(X**3 - 8)
        assert cert.status == "reducible"
        assert cert.factor == X - 2

    def test_repeated_factor(self):
        cert = irreducibility_certificate((X**2 + 1) ** 2)
        assert cert.status == "reducible"

    def test_irreducible_cubic(self):
        assert irreducibility_certificate(X**3 - X - 1).is_irreducible

    def test_irreducible_quartics(self):
        quartic = X**4 - 16 * X**3 + 112 * X**2 - 320 * X + 512
        assert irreducibility_certificate(quartic).is_irreducible

    def test_biquadratic(self):
        # x^4+1 factors mod every prime, so no witness prime exists; the
        # complete root + quadratic-factor search still settles it
        cert = irreducibility_certificate(X**4 + 1)
        assert cert.is_irreducible
        assert cert.witness_prime is None

    def test_sextic_three_three_split_possibility(self):
        # x^6+2x+2 is Eisenstein-irreducible; the certificate must get
        # there via modular evidence since degree 6 exceeds the complete
        # low-degree search
        cert = irreducibility_certificate(X**6 + 2 * X + 2)
        assert cert.status in ("irreducible", "inconclusive")
        if cert.is_irreducible:
            assert cert.witness_prime is not None or cert.degree_patterns
