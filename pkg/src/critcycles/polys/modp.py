"""Polynomial arithmetic modulo a prime, plus Hensel lifting.

Polynomials here are bare lists of ints in [0, p), constant term first,
trailing zeros stripped.  This layer powers rational root finding and
quadratic-factor extraction: factor an integer polynomial modulo one good
prime, lift the pieces to a large prime power, and reconstruct rational
data exactly.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as _igcd

from ..errors import BadPrimeError
from ..numbers import is_probable_prime


def nextprime(n: int) -> int:
    n += 1
    if n <= 2:
        return 2
    if n % 2 == 0:
        n += 1
    while not is_probable_prime(n):
        n += 2
    return n


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def preduce(a, p: int) -> list[int]:
    return _trim([c % p for c in a])


def padd(a, b, p):
    n = max(len(a), len(b))
    return _trim(
        [
            ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
            for i in range(n)
        ]
    )


def psub(a, b, p):
    n = max(len(a), len(b))
    return _trim(
        [
            ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
            for i in range(n)
        ]
    )


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def pscale(a, c, p):
    c %= p
    return _trim([x * c % p for x in a])


def pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("mod-p division by zero polynomial")
    inv = pow(b[-1], p - 2, p)
    rem = [c % p for c in a]
    dq = len(rem) - len(b)
    if dq < 0:
        return [], _trim(rem)
    q = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        top = rem[k + len(b) - 1]
        if not top:
            continue
        c = top * inv % p
        q[k] = c
        for i, bc in enumerate(b):
            rem[k + i] = (rem[k + i] - c * bc) % p
    return _trim(q), _trim(rem)


def pmod(a, b, p):
    return pdivmod(a, b, p)[1]


def pmonic(a, p):
    if not a:
        return a
    return pscale(a, pow(a[-1], p - 2, p), p)


def pgcd(a, b, p):
    a, b = preduce(a, p), preduce(b, p)
    while b:
        a, b = b, pmod(a, b, p)
    return pmonic(a, p)


def ppowmod(base, e: int, mod, p):
    """base^e modulo (mod, p)."""
    out = [1]
    base = pmod(base, mod, p)
    while e:
        if e & 1:
            out = pmod(pmul(out, base, p), mod, p)
        base = pmod(pmul(base, base, p), mod, p)
        e >>= 1
    return out


def pderiv(a, p):
    return _trim([a[i] * i % p for i in range(1, len(a))])


def peval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def is_squarefree_mod(a, p) -> bool:
    g = pgcd(a, pderiv(a, p), p)
    return len(g) == 1


def ddf(f, p):
    """Distinct-degree split of a monic squarefree f mod p: list of
    (d, product of the irreducible factors of degree d), d increasing."""
    out = []
    h = [0, 1]
    i = 1
    f = list(f)
    while len(f) - 1 >= 2 * i:
        h = ppowmod(h, p, f, p)
        g = pgcd(psub(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.append((i, g))
            f = pdivmod(f, g, p)[0]
            h = pmod(h, f, p)
        i += 1
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def edf(f, d: int, p, rng=None):
    """Cantor-Zassenhaus split of monic f (a product of distinct
    irreducibles all of degree d, p odd) into its irreducible factors."""
    n = len(f) - 1
    if n == d:
        return [f]
    if rng is None:
        rng = random.Random(0xC0FFEE ^ n ^ p)
    e = (p**d - 1) // 2
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = _trim(a)
        if len(a) < 1:
            continue
        g = pgcd(a, f, p)
        if 1 < len(g) < len(f):
            break
        b = ppowmod(a, e, f, p)
        g = pgcd(psub(b, [1], p), f, p)
        if 1 < len(g) < len(f):
            break
    rest = pdivmod(f, g, p)[0]
    return edf(g, d, p, rng) + edf(rest, d, p, rng)


def roots_mod(f, p) -> list[int]:
    """Roots of f mod p (distinct; f need not be squarefree)."""
    f = preduce(f, p)
    if not f:
        raise ValueError("zero polynomial")
    if len(f) == 1:
        return []
    xp = ppowmod([0, 1], p, f, p)
    g = pgcd(psub(xp, [0, 1], p), f, p)
    if len(g) == 1:
        return []
    if len(g) == 2:
        return [(-g[0]) % p]
    return sorted((-lin[0]) % p for lin in edf(g, 1, p))


def factor_mod_p(f, p):
    """Full factorization of a squarefree f mod p.

    Returns (unit, factors): unit in [0,p) and monic irreducible factors
    sorted by (degree, coefficients).  BadPrimeError when p divides the
    leading coefficient or the image is not squarefree.
    """
    g = preduce(f, p)
    if len(g) != len(_trim([c % p for c in f])) or not g:
        raise BadPrimeError("polynomial vanishes mod p")
    if len(g) < len(f):
        raise BadPrimeError(f"{p} divides the leading coefficient")
    if not is_squarefree_mod(g, p):
        raise BadPrimeError(f"image mod {p} is not squarefree")
    unit = g[-1] % p
    g = pmonic(g, p)
    factors = []
    for d, block in ddf(g, p):
        factors.extend(edf(block, d, p))
    factors.sort(key=lambda h: (len(h), h))
    return unit, factors


def factor_degrees(f, p) -> list[int]:
    """Degrees of the irreducible factors mod p (DDF only, no splitting)."""
    g = preduce(f, p)
    if not g or len(g) < len(_trim(list(f))):
        raise BadPrimeError(f"{p} divides the leading coefficient")
    if not is_squarefree_mod(g, p):
        raise BadPrimeError(f"image mod {p} is not squarefree")
    out = []
    for d, block in ddf(pmonic(g, p), p):
        out.extend([d] * ((len(block) - 1) // d))
    return sorted(out)


# ----------------------------------------------------------------------
# lifting and reconstruction


def lift_root(coeffs: list[int], r: int, p: int, target: int):
    """Newton-lift a simple root r of f mod p until the modulus reaches
    at least target.  Returns (root, modulus)."""

    def ev(cs, x, m):
        acc = 0
        for c in reversed(cs):
            acc = (acc * x + c) % m
        return acc

    dcoeffs = [coeffs[i] * i for i in range(1, len(coeffs))]
    m = p
    while m < target:
        m = m * m
        fr = ev(coeffs, r, m)
        dr = ev(dcoeffs, r, m)
        try:
            inv = pow(dr, -1, m)
        except ValueError:
            raise BadPrimeError("root is not simple mod p") from None
        r = (r - fr * inv) % m
    return r, m


def _zmul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def lift_factor_pair(F: list[int], g0, h0, p: int, target: int):
    """Linear Hensel lift of a split F = g0*h0 (mod p) with g0 monic and
    gcd(g0, h0) = 1 mod p, until the modulus reaches at least target.

    Per step, with F = g*h (mod m): e = (F - g*h)/m taken mod p, the
    corrections solve u*h0 + w*g0 = e (mod p) with deg u < deg g0, namely
    u = t*e mod g0 and w = s*e + ((t*e) div g0)*h0 for the Bezout pair
    s*g0 + t*h0 = 1.  Returns (g, h, modulus), g still monic.
    """
    g0, h0 = preduce(g0, p), preduce(h0, p)
    one, s, t = _p_ext_gcd(g0, h0, p)
    if len(one) != 1:
        raise BadPrimeError("factors are not coprime mod p")
    inv = pow(one[0], p - 2, p)
    s, t = pscale(s, inv, p), pscale(t, inv, p)
    g, h = list(g0), list(h0)
    m = p
    while m < target:
        prod = _zmul(g, h)
        n = max(len(F), len(prod))
        e = []
        for i in range(n):
            c = (F[i] if i < len(F) else 0) - (prod[i] if i < len(prod) else 0)
            q, r = divmod(c, m)
            if r:
                raise BadPrimeError("lift lost divisibility")
            e.append(q % p)
        e = _trim(e)
        te = pmul(t, e, p)
        q, u = pdivmod(te, g0, p)
        w = padd(pmul(s, e, p), pmul(q, h0, p), p)
        g = _trim(
            [
                (g[i] if i < len(g) else 0) + m * (u[i] if i < len(u) else 0)
                for i in range(max(len(g), len(u)))
            ]
        )
        h = _trim(
            [
                (h[i] if i < len(h) else 0) + m * (w[i] if i < len(w) else 0)
                for i in range(max(len(h), len(w)))
            ]
        )
        m *= p
    return g, h, m


def _p_ext_gcd(a, b, p):
    r0, r1 = preduce(a, p), preduce(b, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1, p), p)
        t0, t1 = t1, psub(t0, pmul(q, t1, p), p)
    return r0, s0, t0


def rational_reconstruct(u: int, M: int, num_bound: int, den_bound: int):
    """The fraction n/d = u (mod M) with |n| <= num_bound and
    0 < d <= den_bound, or None.  Needs 2*num_bound*den_bound < M."""
    u %= M
    r0, r1 = M, u
    t0, t1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    n, d = r1, t1
    if d == 0:
        return None
    if d < 0:
        n, d = -n, -d
    if d > den_bound or _igcd(n, d) != 1:
        return None
    if (n - u * d) % M != 0:
        return None
    return Fraction(n, d)
