"""Sparse multivariate polynomials with rational coefficients.

Only a couple of variables ever show up (the two coordinates on the moduli
plane), so this stays deliberately small: a dict from exponent tuples to
nonzero Fractions, graded-lex leading terms for division and sign
normalization, and plain-lex printing so equations read the way they are
usually written (first variable outranks the second).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from ..errors import InexactDivisionError


def _grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Polynomial in several variables over Q, stored sparsely."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms):
        vs = tuple(variables)
        clean = {}
        for exps, c in terms.items():
            c = Fraction(c)
            if not c:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(vs):
                raise ValueError("exponent tuple length mismatch")
            clean[exps] = clean.get(exps, Fraction(0)) + c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(
            self, "terms", {e: c for e, c in clean.items() if c}
        )

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors

    @classmethod
    def const(cls, variables, c) -> "MultiPoly":
        z = (0,) * len(tuple(variables))
        return cls(variables, {z: Fraction(c)})

    @classmethod
    def var(cls, variables, name) -> "MultiPoly":
        vs = tuple(variables)
        e = [0] * len(vs)
        e[vs.index(name)] = 1
        return cls(vs, {tuple(e): Fraction(1)})

    # -- structure

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    @property
    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def leading(self):
        """Graded-lex leading (exponents, coefficient); None for zero."""
        if not self.terms:
            return None
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("not a constant polynomial")
        z = (0,) * len(self.vars)
        return self.terms.get(z, Fraction(0))

    # -- arithmetic

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError("variable mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.vars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        return MultiPoly(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def exact_div(self, other) -> "MultiPoly":
        """Exact quotient self/other; InexactDivisionError when not exact."""
        o = self._coerce(other)
        if o is None or not o:
            raise InexactDivisionError("division by zero polynomial")
        le, lc = o.leading()
        rem = self
        q = {}
        while rem:
            re, rc = rem.leading()
            exps = tuple(a - b for a, b in zip(re, le))
            if any(e < 0 for e in exps):
                raise InexactDivisionError(
                    "multivariate division left a remainder"
                )
            coef = rc / lc
            q[exps] = q.get(exps, Fraction(0)) + coef
            rem = rem - o * MultiPoly(self.vars, {exps: coef})
        return MultiPoly(self.vars, q)

    def divides(self, other) -> bool:
        try:
            other.exact_div(self)
            return True
        except InexactDivisionError:
            return False

    # -- evaluation and substitution

    def eval(self, values) -> Fraction:
        """Evaluate at values: a mapping by name or a positional sequence."""
        if isinstance(values, dict):
            vals = [values[v] for v in self.vars]
        else:
            vals = list(values)
        if len(vals) != len(self.vars):
            raise ValueError("wrong number of values")
        total = None
        for e, c in self.terms.items():
            term = c
            for v, k in zip(vals, e):
                if k:
                    term = term * v**k
            total = term if total is None else total + term
        if total is None:
            z = vals[0] * 0 if vals else Fraction(0)
            return z if vals else Fraction(0)
        return total

    # -- normalization

    def content(self) -> Fraction:
        """Signed rational content: self/content has coprime integer
        coefficients and positive graded-lex leading coefficient."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        c = Fraction(num, den)
        if self.leading()[1] < 0:
            c = -c
        return c

    def primitive(self) -> "MultiPoly":
        c = self.content()
        if not c:
            return self
        return MultiPoly(self.vars, {e: v / c for e, v in self.terms.items()})

    # -- printing

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mon = "*".join(factors)
            ac = abs(c)
            if mon:
                body = mon if ac == 1 else f"{ac}*{mon}"
            else:
                body = str(ac)
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"MultiPoly({self})"
