"""Rational roots of polynomials over Q, with multiplicities.

Two engines share the exact verification step.  The classical one
enumerates candidate p/q from divisors of the outer coefficients, with the
f(1)/f(-1) divisibility filters; it is the right tool when those
coefficients factor easily.  The modular one finds roots mod one good
~25-bit prime, Newton-lifts them past 2*|a0|*|an|, and reconstructs the
rational root; its cost does not depend on how the coefficients factor,
which is what the census needs when constant terms reach dozens of digits.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

from ..errors import BadPrimeError, BudgetExceededError
from ..numbers import divisors
from . import modp
from .unipoly import UniPoly, _clear_to_int, _int_gcd_prs

_AUTO_DIVISOR_LIMIT = 1 << 64
_DEFAULT_BUDGET = 200000


def rational_roots(
    f: UniPoly, method: str = "auto", budget: int = _DEFAULT_BUDGET
) -> list[tuple[Fraction, int]]:
    """All rational roots of f with multiplicities, sorted by value.

    method: "divisors", "lift", or "auto" (divisor search when the outer
    coefficients are small enough to factor comfortably, modular lifting
    otherwise).  The divisor search honors ``budget`` as a cap on candidate
    pairs and raises BudgetExceededError beyond it.
    """
    if f.dom.kind != "rational":
        raise ValueError("rational root search needs coefficients in Q")
    if not f:
        raise ValueError("zero polynomial has every value as a root")
    if f.degree == 0:
        return []
    ints = _clear_to_int(f.coeffs)[1]
    k = 0
    while ints[k] == 0:
        k += 1
    out = []
    if k:
        out.append((Fraction(0), k))
        ints = ints[k:]
    if len(ints) > 1:
        work = _int_gcd_prs(ints, _int_deriv(ints))
        sqf = _int_exact_div(ints, work) if len(work) > 1 else ints
        if method == "auto":
            a0, an = abs(sqf[0]), abs(sqf[-1])
            if a0 <= _AUTO_DIVISOR_LIMIT and an <= _AUTO_DIVISOR_LIMIT:
                try:
                    roots = _divisor_roots(sqf, budget)
                except BudgetExceededError:
                    roots = _lift_roots(sqf)
            else:
                roots = _lift_roots(sqf)
        elif method == "divisors":
            roots = _divisor_roots(sqf, budget)
        elif method == "lift":
            roots = _lift_roots(sqf)
        else:
            raise ValueError(f"unknown root-finding method {method!r}")
        for r in roots:
            out.append((r, _multiplicity(ints, r)))
    out.sort(key=lambda t: t[0])
    return out


def rational_roots_of_coeffs(coeffs) -> list[Fraction]:
    """Just the distinct rational roots of the polynomial with the given
    coefficients (constant term first)."""
    from .domains import QQ

    f = UniPoly(QQ, [Fraction(c) for c in coeffs])
    if not f:
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return []
    return [r for r, _ in rational_roots(f)]


def _int_deriv(a: list[int]) -> list[int]:
    return [a[i] * i for i in range(1, len(a))]


def _int_exact_div(a: list[int], b: list[int]) -> list[int]:
    """Exact quotient of integer polynomials (b | a required)."""
    rem = list(a)
    dq = len(a) - len(b)
    q = [0] * (dq + 1)
    for k in range(dq, -1, -1):
        top = rem[k + len(b) - 1]
        if top:
            c, r = divmod(top, b[-1])
            if r:
                raise ValueError("inexact integer polynomial division")
            q[k] = c
            for i, bc in enumerate(b):
                rem[k + i] -= c * bc
    if any(rem):
        raise ValueError("inexact integer polynomial division")
    return q


def _hom_eval(a: list[int], p: int, q: int) -> int:
    """sum a[i] * p^i * q^(n-i): zero iff p/q is a root (gcd(p, q) = 1)."""
    n = len(a) - 1
    acc = 0
    pp = 1
    for i in range(n + 1):
        acc += a[i] * pp * q ** (n - i)
        pp *= p
    return acc


def _divisor_roots(sqf: list[int], budget: int) -> list[Fraction]:
    a0, an = abs(sqf[0]), abs(sqf[-1])
    nums = divisors(a0, budget=budget)
    dens = divisors(an, budget=budget)
    if 2 * len(nums) * len(dens) > budget:
        raise BudgetExceededError(
            f"{2 * len(nums) * len(dens)} root candidates exceed the "
            f"budget of {budget}",
            partial={"candidates": 2 * len(nums) * len(dens)},
        )
    f1 = sum(sqf)
    fm1 = _hom_eval(sqf, -1, 1)
    roots = []
    for q in dens:
        for p in nums:
            if _igcd(p, q) != 1:
                continue
            for sp in (p, -p):
                if f1 and (q - sp) and f1 % (q - sp):
                    continue
                if fm1 and (q + sp) and fm1 % (q + sp):
                    continue
                if _hom_eval(sqf, sp, q) == 0:
                    roots.append(Fraction(sp, q))
    return sorted(set(roots))


def _lift_roots(sqf: list[int]) -> list[Fraction]:
    a0, an = abs(sqf[0]), abs(sqf[-1])
    p = 1 << 25
    for _ in range(200):
        p = modp.nextprime(p)
        if an % p == 0:
            continue
        if modp.is_squarefree_mod(modp.preduce(sqf, p), p):
            break
    else:
        raise BadPrimeError("no usable prime found for root lifting")
    target = 2 * a0 * an + 1
    roots = []
    for r in modp.roots_mod(sqf, p):
        u, m = modp.lift_root(sqf, r, p, target)
        cand = modp.rational_reconstruct(u, m, a0, an)
        if cand is None:
            continue
        if _hom_eval(sqf, cand.numerator, cand.denominator) == 0:
            roots.append(cand)
    return sorted(set(roots))


def _multiplicity(ints: list[int], root: Fraction) -> int:
    """Multiplicity of a known root, by repeated exact synthetic division
    by (q*x - p)."""
    p, q = root.numerator, root.denominator
    cur = list(ints)
    mult = 0
    while len(cur) > 1 and _hom_eval(cur, p, q) == 0:
        # divide by (q*x - p): working top-down, c_i = (cur_{i+1} + p*c_{i+1})/q
        n = len(cur) - 1
        quot = [0] * n
        carry = 0
        for i in range(n - 1, -1, -1):
            num = cur[i + 1] + p * carry
            c, r = divmod(num, q)
            if r:
                break
            quot[i] = c
            carry = c
        else:
            cur = quot
            mult += 1
            continue
        break
    return mult
