"""Quadratic factors over Q and irreducibility certificates.

Quadratic factor extraction factors the polynomial modulo one good prime,
pairs up the modular pieces that could multiply into a rational quadratic,
Hensel-lifts each candidate split, and reconstructs exact coefficients.
The certificate routine stacks cheap complete checks (rational roots,
quadratic factors, modular degree patterns) into a verdict it can defend:
"irreducible" always carries either a witness prime whose image is
irreducible or a family of degree patterns whose subset sums rule every
proper factor degree out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as _igcd, isqrt

from ..errors import BadPrimeError
from ..numbers import perfect_square_root
from . import modp
from .roots import _hom_eval, _int_exact_div, rational_roots
from .unipoly import UniPoly, _clear_to_int, _int_gcd_prs


def _squarefree_ints(f: UniPoly) -> list[int]:
    ints = _clear_to_int(f.coeffs)[1]
    from .roots import _int_deriv

    g = _int_gcd_prs(ints, _int_deriv(ints))
    return _int_exact_div(ints, g) if len(g) > 1 else ints


def _good_prime(ints: list[int], start: int = 1 << 25, tries: int = 300):
    p = start
    for _ in range(tries):
        p = modp.nextprime(p)
        if ints[-1] % p == 0:
            continue
        if modp.is_squarefree_mod(modp.preduce(ints, p), p):
            return p
    raise BadPrimeError("no usable prime found")


def quadratic_factors(f: UniPoly) -> list[UniPoly]:
    """Distinct irreducible quadratic factors of f over Q, primitive with
    integer coefficients and positive leading coefficient."""
    if f.dom.kind != "rational":
        raise ValueError("quadratic factor search needs coefficients in Q")
    if f.degree < 2:
        return []
    sqf = _squarefree_ints(f)
    while sqf[0] == 0:
        sqf = sqf[1:]
    n = len(sqf) - 1
    if n < 2:
        return []
    if n == 2:
        disc = sqf[1] * sqf[1] - 4 * sqf[2] * sqf[0]
        if perfect_square_root(disc) is None:
            g = list(sqf)
            if g[-1] < 0:
                g = [-c for c in g]
            return [_int_unipoly(f, g)]
        return []
    p = _good_prime(sqf)
    _, factors = modp.factor_mod_p(sqf, p)
    linear = [g for g in factors if len(g) == 2]
    quads = [g for g in factors if len(g) == 3]
    candidates = list(quads)
    for i in range(len(linear)):
        for j in range(i + 1, len(linear)):
            candidates.append(modp.pmul(linear[i], linear[j], p))
    if not candidates:
        return []
    lc = abs(sqf[-1])
    b2 = isqrt(sum(c * c for c in sqf)) + 1
    bound = 4 * (b2 + lc)
    target = 8 * bound * lc + 1
    found = {}
    for g0 in candidates:
        h0, r = modp.pdivmod(sqf, g0, p)
        if r:
            continue
        try:
            g, _, m = modp.lift_factor_pair(sqf, g0, h0, p, target)
        except BadPrimeError:
            continue
        c0 = modp.rational_reconstruct(g[0], m, bound, lc)
        c1 = modp.rational_reconstruct(g[1], m, bound, lc)
        if c0 is None or c1 is None:
            continue
        den = (
            c0.denominator
            * c1.denominator
            // _igcd(c0.denominator, c1.denominator)
        )
        cand = [
            int(c0 * den),
            int(c1 * den),
            den,
        ]
        cg = _igcd(_igcd(cand[0], cand[1]), cand[2])
        cand = [c // cg for c in cand]
        disc = cand[1] * cand[1] - 4 * cand[2] * cand[0]
        if perfect_square_root(disc) is not None:
            continue
        try:
            _int_exact_div(sqf, cand)
        except ValueError:
            continue
        found[tuple(cand)] = _int_unipoly(f, cand)
    return sorted(found.values(), key=lambda g: tuple(c for c in g.coeffs))


def _int_unipoly(like: UniPoly, ints: list[int]) -> UniPoly:
    return UniPoly(like.dom, [Fraction(c) for c in ints], like.var)


@dataclass
class FactorCertificate:
    """Outcome of an irreducibility check over Q.

    status: "irreducible", "reducible", or "inconclusive".
    witness_prime: prime with irreducible image, when that settled it.
    degree_patterns: factor-degree lists mod the sampled primes, when the
    subset-sum argument settled it (or came up short).
    factor: an exhibited proper factor when reducible.
    """

    status: str
    witness_prime: int | None = None
    degree_patterns: list[list[int]] = field(default_factory=list)
    factor: UniPoly | None = None

    @property
    def is_irreducible(self) -> bool:
        return self.status == "irreducible"


def irreducibility_certificate(
    f: UniPoly, max_primes: int = 40, need_patterns: int = 10
) -> FactorCertificate:
    """Decide irreducibility of f over Q with an auditable reason."""
    if f.dom.kind != "rational":
        raise ValueError("irreducibility check needs coefficients in Q")
    n = f.degree
    if n <= 0:
        raise ValueError("units and zero have no factorization question")
    if n == 1:
        return FactorCertificate(status="irreducible")
    ints = _clear_to_int(f.coeffs)[1]
    if ints[0] == 0:
        return FactorCertificate(
            status="reducible", factor=UniPoly.gen(f.dom, f.var)
        )
    sqf = _squarefree_ints(f)
    if len(sqf) - 1 < n:
        g = _int_gcd_prs(ints, [ints[i] * i for i in range(1, len(ints))])
        return FactorCertificate(status="reducible", factor=_int_unipoly(f, g))
    for r, _ in rational_roots(f):
        return FactorCertificate(
            status="reducible",
            factor=_int_unipoly(
                f, [-r.numerator, r.denominator]
            ),
        )
    qs = quadratic_factors(f)
    if qs:
        if n == 2:
            return FactorCertificate(status="irreducible")
        return FactorCertificate(status="reducible", factor=qs[0])
    if n <= 5:
        # any factorization has a factor of degree <= n/2 <= 2, and both
        # linear and quadratic factors were just ruled out completely
        return FactorCertificate(status="irreducible")
    patterns = []
    possible = None
    p = 1 << 25
    for _ in range(max_primes):
        p = modp.nextprime(p)
        try:
            degs = modp.factor_degrees(ints, p)
        except BadPrimeError:
            continue
        if degs == [n]:
            return FactorCertificate(status="irreducible", witness_prime=p)
        patterns.append(degs)
        sums = {0}
        for d in degs:
            sums |= {s + d for s in sums}
        possible = sums if possible is None else possible & sums
        if possible == {0, n} and len(patterns) >= 2:
            return FactorCertificate(
                status="irreducible", degree_patterns=patterns
            )
        if len(patterns) >= need_patterns and possible != {0, n}:
            break
    return FactorCertificate(status="inconclusive", degree_patterns=patterns)
