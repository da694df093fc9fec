"""Dense univariate polynomials over pluggable exact domains.

A UniPoly is a coefficient tuple (constant term first, trailing zeros
stripped) plus the domain its coefficients live in.  All dispatch keys off
``dom.kind`` so this module never imports the domain classes:

- "rational"  Fractions; gcd/resultant run on cleared integer lists
- "quad"      elements of Q(sqrt(d)); field algorithms
- "poly"      coefficients are themselves UniPolys (e.g. Q[t][x])
- "frac"      coefficients are rational functions (field algorithms)
- "multipoly" coefficients are MultiPolys (ring algorithms only)
- "quotient"  coefficients in Q[y]/(g); field algorithms

Resultants follow the Sylvester convention Res(f, g) =
lc(f)^deg(g) * prod g(alpha) over the roots alpha of f, so
Res(x - a, x - b) = a - b.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd, lcm as _ilcm

from ..errors import InexactDivisionError, NotAPerfectPowerError


class UniPoly:
    __slots__ = ("dom", "var", "coeffs")

    def __init__(self, dom, coeffs, var="x"):
        cs = [dom.coerce(c) for c in coeffs]
        while cs and dom.is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *_):
        raise AttributeError("UniPoly is immutable")

    # -- constructors

    @classmethod
    def const(cls, dom, c, var="x"):
        return cls(dom, [c], var)

    @classmethod
    def gen(cls, dom, var="x"):
        return cls(dom, [dom.zero, dom.one], var)

    @classmethod
    def from_roots(cls, dom, roots, var="x"):
        p = cls.const(dom, dom.one, var)
        x = cls.gen(dom, var)
        for r in roots:
            p = p * (x - cls.const(dom, r, var))
        return p

    # -- structure

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.dom.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return (
                self.dom == other.dom
                and self.var == other.var
                and self.coeffs == other.coeffs
            )
        c = self.dom.try_coerce(other)
        if c is None:
            return NotImplemented
        if self.degree > 0:
            return False
        return (self.coeffs[0] if self.coeffs else self.dom.zero) == c

    def __hash__(self):
        return hash((self.var, self.coeffs))

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self):
        if not self.is_constant:
            raise ValueError("not a constant polynomial")
        return self[0]

    # -- ring operations

    def _check(self, other) -> "UniPoly | None":
        if isinstance(other, UniPoly):
            if other.dom == self.dom and other.var == self.var:
                return other
            raise ValueError(
                f"polynomial mismatch: {self.dom}[{self.var}] vs "
                f"{other.dom}[{other.var}]"
            )
        c = self.dom.try_coerce(other)
        if c is None:
            return None
        return UniPoly.const(self.dom, c, self.var)

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        z = self.dom.zero
        cs = [
            (self.coeffs[i] if i < len(self.coeffs) else z)
            + (o.coeffs[i] if i < len(o.coeffs) else z)
            for i in range(n)
        ]
        return UniPoly(self.dom, cs, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.dom, [-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return UniPoly(self.dom, [], self.var)
        z = self.dom.zero
        out = [z] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if self.dom.is_zero(a):
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.dom, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = UniPoly.const(self.dom, self.dom.one, self.var)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_xk(self, k: int) -> "UniPoly":
        if not self.coeffs or k == 0:
            return self
        return UniPoly(self.dom, (self.dom.zero,) * k + self.coeffs, self.var)

    def scale(self, c) -> "UniPoly":
        c = self.dom.coerce(c)
        return UniPoly(self.dom, [a * c for a in self.coeffs], self.var)

    # -- division

    def divmod(self, other) -> tuple["UniPoly", "UniPoly"]:
        """Classical division; requires a coefficient field."""
        o = self._check(other)
        if o is None or not o:
            raise ZeroDivisionError("polynomial division by zero")
        if not self.dom.is_field:
            raise ValueError("classical divmod needs field coefficients")
        dom = self.dom
        inv_lc = dom.exact_div(dom.one, o.lc)
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return UniPoly(dom, [], self.var), self
        q = [dom.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            top = rem[k + o.degree]
            if dom.is_zero(top):
                continue
            c = top * inv_lc
            q[k] = c
            for i, b in enumerate(o.coeffs):
                rem[k + i] = rem[k + i] - c * b
        return UniPoly(dom, q, self.var), UniPoly(dom, rem, self.var)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def pseudo_divmod(self, other) -> tuple["UniPoly", "UniPoly"]:
        """(Q, R) with lc(other)^(deg self - deg other + 1) * self =
        Q*other + R and deg R < deg other.  Works over any domain."""
        o = self._check(other)
        if o is None or not o:
            raise ZeroDivisionError("polynomial division by zero")
        dom = self.dom
        dA, dB = self.degree, o.degree
        if dA < dB:
            return UniPoly(dom, [], self.var), self
        lb = o.lc
        rem = list(self.coeffs)
        q = [dom.zero] * (dA - dB + 1)
        for k in range(dA - dB, -1, -1):
            top = rem[k + dB]
            rem = [lb * c for c in rem]
            q = [lb * c for c in q]
            q[k] = q[k] + top
            for i, b in enumerate(o.coeffs):
                rem[k + i] = rem[k + i] - top * b
        return UniPoly(dom, q, self.var), UniPoly(dom, rem, self.var)

    def exact_div(self, other) -> "UniPoly":
        """Exact quotient self/other over the coefficient ring.

        Runs classical long division, dividing each leading coefficient with
        dom.exact_div.  When other truly divides self every step is exact
        (the running remainder is other times the uncomputed quotient tail);
        a failed step or nonzero final remainder raises
        InexactDivisionError.
        """
        o = self._check(other)
        if o is None or not o:
            raise InexactDivisionError("division by zero polynomial")
        dom = self.dom
        if not self.coeffs:
            return self
        dq = self.degree - o.degree
        if dq < 0:
            raise InexactDivisionError("degree of divisor exceeds dividend")
        rem = list(self.coeffs)
        q = [dom.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            top = rem[k + o.degree]
            if dom.is_zero(top):
                continue
            c = dom.exact_div(top, o.lc)
            q[k] = c
            for i, b in enumerate(o.coeffs):
                rem[k + i] = rem[k + i] - c * b
        if any(not dom.is_zero(c) for c in rem):
            raise InexactDivisionError("division left a remainder")
        return UniPoly(dom, q, self.var)

    def exact_div_field(self, other) -> "UniPoly":
        """Field division with the remainder required to vanish."""
        q, r = self.divmod(other)
        if r:
            raise InexactDivisionError("division left a remainder")
        return q

    def divides(self, other) -> bool:
        try:
            other.exact_div(self)
            return True
        except InexactDivisionError:
            return False

    # -- calculus, evaluation, substitution

    def derivative(self) -> "UniPoly":
        cs = [self.coeffs[i] * i for i in range(1, len(self.coeffs))]
        return UniPoly(self.dom, cs, self.var)

    def eval(self, x):
        """Horner evaluation; x may live in the coefficient domain or any
        ring the coefficients multiply into."""
        if not self.coeffs:
            return x * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        o = self._check(other)
        if o is None:
            raise ValueError("compose needs a polynomial argument")
        if not self.coeffs:
            return UniPoly(self.dom, [], o.var)
        acc = UniPoly.const(self.dom, self.coeffs[-1], o.var)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * o + UniPoly.const(self.dom, c, o.var)
        return acc

    def map_coeffs(self, fn, new_dom, var=None) -> "UniPoly":
        return UniPoly(new_dom, [fn(c) for c in self.coeffs], var or self.var)

    def specialize(self, value) -> "UniPoly":
        """Substitute into every coefficient: Q[t][x] or Q(t)[x] at t=value,
        Q[r,s][x] at (r,s)=value.  Returns a polynomial over the base."""
        kind = self.dom.kind
        if kind not in ("poly", "frac", "multipoly"):
            raise ValueError(f"cannot specialize over {self.dom}")
        base = self.dom.base
        return UniPoly(base, [c.eval(value) for c in self.coeffs], self.var)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        if not self.dom.is_field:
            raise ValueError("monic() needs field coefficients")
        inv = self.dom.exact_div(self.dom.one, self.lc)
        return self.scale(inv)

    # -- content and normal forms

    def content_primitive(self):
        """(content, primitive) with self = content * primitive.

        rational: content is a signed Fraction, primitive has coprime
        integer coefficients and positive leading coefficient.
        poly: content lives in the inner polynomial ring (rational scalar
        folded in); primitive is integer-primitive overall with positive
        leading inner coefficient on the leading outer coefficient.
        multipoly: content is a constant (rational content only; polynomial
        content in the plane variables is not extracted).
        fields: content is the leading coefficient, primitive is monic.
        """
        dom = self.dom
        if not self.coeffs:
            return dom.zero, self
        kind = dom.kind
        if kind == "rational":
            c = _rat_content(self.coeffs)
            if self.lc < 0:
                c = -c
            return c, UniPoly(dom, [a / c for a in self.coeffs], self.var)
        if kind == "poly":
            g = None
            for c in self.coeffs:
                if not c:
                    continue
                g = _gcd_normalize(c) if g is None else poly_gcd(g, c)
                if g.degree == 0:
                    break
            if g.degree > 0:
                mid = [
                    c.exact_div_field(g) if c else c for c in self.coeffs
                ]
            else:
                g = UniPoly.const(dom.base, dom.base.one, dom.inner_var)
                mid = list(self.coeffs)
            rat = _rat_content(
                [q for c in mid for q in c.coeffs] or [Fraction(1)]
            )
            if mid[-1].lc < 0:
                rat = -rat
            prim = UniPoly(dom, [c.scale(1 / rat) for c in mid], self.var)
            return g.scale(rat), prim
        if kind == "multipoly":
            rat = _rat_content(
                [q for c in self.coeffs for q in c.terms.values()]
            )
            if self.lc.leading()[1] < 0:
                rat = -rat
            prim = UniPoly(
                dom, [c * (1 / rat) for c in self.coeffs], self.var
            )
            return dom.coerce(rat), prim
        return self.lc, self.monic()

    def primitive(self) -> "UniPoly":
        return self.content_primitive()[1]

    # -- printing

    def __str__(self):
        if not self.coeffs:
            return "0"
        dom = self.dom
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if dom.is_zero(c):
                continue
            mon = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            neg = False
            if dom.kind == "rational":
                if c < 0:
                    neg, c = True, -c
                if mon and c == 1:
                    body = mon
                else:
                    body = f"{c}*{mon}" if mon else str(c)
            else:
                s = str(c)
                if mon and s == "1":
                    body = mon
                else:
                    if s.startswith("-") or any(ch in s[1:] for ch in "+-"):
                        s = f"({s})"
                    body = f"{s}*{mon}" if mon else s
            parts.append((neg, body))
        out = []
        for idx, (neg, body) in enumerate(parts):
            if idx == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(out)

    def __repr__(self):
        return f"UniPoly({self})"


def _rat_content(fracs) -> Fraction:
    num = 0
    den = 1
    for q in fracs:
        num = _igcd(num, q.numerator)
        den = _ilcm(den, q.denominator)
    if num == 0:
        return Fraction(1)
    return Fraction(num, den)


# ----------------------------------------------------------------------
# gcd


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Greatest common divisor, normalized per domain: primitive with
    positive leading coefficient over Q, monic over field coefficients,
    primitive (content gcd included) over inner-polynomial coefficients."""
    if f.dom != g.dom or f.var != g.var:
        raise ValueError("gcd of polynomials over different rings")
    dom = f.dom
    if not f:
        return _gcd_normalize(g) if g else g
    if not g:
        return _gcd_normalize(f)
    kind = dom.kind
    if kind == "rational":
        a = _clear_to_int(f.coeffs)[1]
        b = _clear_to_int(g.coeffs)[1]
        r = _int_gcd_prs(a, b)
        return UniPoly(dom, [Fraction(c) for c in r], f.var)
    if kind == "poly":
        cf, pf = f.content_primitive()
        cg, pg = g.content_primitive()
        cont = poly_gcd(cf, cg)
        a, b = pf, pg
        if a.degree < b.degree:
            a, b = b, a
        while b:
            r = a.pseudo_divmod(b)[1]
            a, b = b, (r.content_primitive()[1] if r else r)
        h = a.content_primitive()[1]
        if cont.degree > 0:
            h = UniPoly(dom, [c * cont for c in h.coeffs], f.var)
        return h
    if dom.is_field:
        a, b = f, g
        while b:
            a, b = b, a % b
        return a.monic()
    raise ValueError(f"gcd not supported over {dom}")


def _gcd_normalize(p: UniPoly) -> UniPoly:
    if not p:
        return p
    if p.dom.kind == "rational" or not p.dom.is_field:
        return p.content_primitive()[1]
    return p.monic()


def _clear_to_int(coeffs) -> tuple[Fraction, list[int]]:
    c = _rat_content(coeffs)
    if coeffs and coeffs[-1] < 0:
        c = -c
    return c, [int(q / c) for q in coeffs]


def _int_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _int_content(a: list[int]) -> int:
    g = 0
    for c in a:
        g = _igcd(g, c)
        if g == 1:
            break
    return g or 1


def _int_pseudo_rem(A: list[int], B: list[int]) -> list[int]:
    """Pseudo-remainder over Z: lc(B)^(degA-degB+1)*A = Q*B + R."""
    dA, dB = len(A) - 1, len(B) - 1
    if dA < dB:
        return list(A)
    lb = B[-1]
    rem = list(A)
    for k in range(dA - dB, -1, -1):
        top = rem[k + dB]
        rem = [lb * c for c in rem]
        if top:
            for i in range(dB + 1):
                rem[k + i] -= top * B[i]
    return _int_trim(rem[:dB] if len(rem) > dB else rem)


def _int_gcd_prs(a: list[int], b: list[int]) -> list[int]:
    """Primitive PRS gcd of integer polynomials, positive-lc primitive."""
    a = _int_trim(list(a))
    b = _int_trim(list(b))
    if not a:
        a, b = b, a
    if not b:
        if not a:
            return []
        g = _int_content(a)
        r = [c // g for c in a]
        return [-c for c in r] if r[-1] < 0 else r
    if len(a) < len(b):
        a, b = b, a
    a = [c // _int_content(a) for c in a]
    b = [c // _int_content(b) for c in b]
    while b:
        r = _int_pseudo_rem(a, b)
        if r:
            g = _int_content(r)
            r = [c // g for c in r]
        a, b = b, r
    if a[-1] < 0:
        a = [-c for c in a]
    return a


# ----------------------------------------------------------------------
# resultants


def resultant(f: UniPoly, g: UniPoly):
    """Res(f, g) as an element of the coefficient domain.

    Sylvester convention: Res(f, g) = lc(f)^deg(g) * prod of g over the
    roots of f; the resultant of two nonzero constants is 1; a zero
    argument gives 0.
    """
    if f.dom != g.dom or f.var != g.var:
        raise ValueError("resultant of polynomials over different rings")
    dom = f.dom
    if not f or not g:
        return dom.zero
    if f.degree == 0:
        return _dom_pow(dom, f.lc, g.degree)
    if g.degree == 0:
        return _dom_pow(dom, g.lc, f.degree)
    kind = dom.kind
    if kind == "rational":
        cf, A = _clear_to_int(f.coeffs)
        cg, B = _clear_to_int(g.coeffs)
        r = _int_resultant(A, B)
        return cf**g.degree * cg**f.degree * Fraction(r)
    if dom.is_field:
        return _field_resultant(f, g)
    return _subres_prs_resultant(f, g)


def _dom_pow(dom, c, k: int):
    out = dom.one
    base = c
    while k:
        if k & 1:
            out = out * base
        base = base * base
        k >>= 1
    return out


def _field_resultant(f: UniPoly, g: UniPoly):
    """Euclidean recursion over a coefficient field.

    Res(A, B) = (-1)^(mn) lc(B)^(m - deg R) Res(B, R) for R = A mod B.
    """
    dom = f.dom
    neg = False
    A, B = f, g
    if A.degree < B.degree:
        if (A.degree * B.degree) % 2:
            neg = not neg
        A, B = B, A
    acc = dom.one
    while True:
        m, n = A.degree, B.degree
        if n == 0:
            out = acc * _dom_pow(dom, B.lc, m)
            return -out if neg else out
        R = A % B
        if not R:
            return dom.zero
        acc = acc * _dom_pow(dom, B.lc, m - R.degree)
        if (m * n) % 2:
            neg = not neg
        A, B = B, R


def _subres_prs_resultant(f: UniPoly, g: UniPoly):
    """Subresultant PRS over a non-field domain with exact division."""
    dom = f.dom
    A, B = f, g
    neg = False
    if A.degree < B.degree:
        if (A.degree * B.degree) % 2:
            neg = not neg
        A, B = B, A
    gg = dom.one
    h = dom.one
    while True:
        d = A.degree - B.degree
        if (A.degree % 2) and (B.degree % 2):
            neg = not neg
        R = A.pseudo_divmod(B)[1]
        A = B
        if not R:
            return dom.zero
        denom = gg * _dom_pow(dom, h, d)
        B = UniPoly(dom, [dom.exact_div(c, denom) for c in R.coeffs], R.var)
        gg = A.lc
        if d == 1:
            h = gg
        elif d > 1:
            h = dom.exact_div(_dom_pow(dom, gg, d), _dom_pow(dom, h, d - 1))
        if B.degree <= 0:
            break
    dA = A.degree
    if dA == 1:
        h = B.lc
    else:
        h = dom.exact_div(_dom_pow(dom, B.lc, dA), _dom_pow(dom, h, dA - 1))
    return -h if neg else h


def _int_resultant(A: list[int], B: list[int]) -> int:
    """Subresultant PRS resultant for integer coefficient lists."""
    A = _int_trim(list(A))
    B = _int_trim(list(B))
    if not A or not B:
        return 0
    if len(A) == 1:
        return A[0] ** (len(B) - 1)
    if len(B) == 1:
        return B[0] ** (len(A) - 1)
    s = 1
    if len(A) < len(B):
        if ((len(A) - 1) * (len(B) - 1)) % 2:
            s = -s
        A, B = B, A
    g = 1
    h = 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        d = dA - dB
        if (dA % 2) and (dB % 2):
            s = -s
        R = _int_pseudo_rem(A, B)
        A = B
        if not R:
            return 0
        denom = g * h**d
        B = [_int_exact(c, denom) for c in R]
        g = A[-1]
        if d == 1:
            h = g
        elif d > 1:
            h = _int_exact(g**d, h ** (d - 1))
        if len(B) - 1 <= 0:
            break
    dA = len(A) - 1
    if dA == 1:
        h = B[0]
    else:
        h = _int_exact(B[0] ** dA, h ** (dA - 1))
    return s * h


def _int_exact(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise InexactDivisionError("inexact integer division in PRS")
    return q


def discriminant(f: UniPoly):
    """disc(f) = (-1)^(n(n-1)/2) * Res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = resultant(f, f.derivative())
    out = f.dom.exact_div(r, f.lc)
    return -out if (n * (n - 1) // 2) % 2 else out


def squarefree_part(f: UniPoly) -> UniPoly:
    """f divided by gcd(f, f'), normalized like poly_gcd output."""
    if f.degree <= 0:
        return _gcd_normalize(f) if f else f
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return _gcd_normalize(f)
    if f.dom.is_field:
        q = f.exact_div_field(g)
    else:
        q = f.exact_div(g)
    return _gcd_normalize(q)


# ----------------------------------------------------------------------
# monic roots of polynomial powers and interpolation


def nth_root_poly(f: UniPoly, n: int) -> UniPoly:
    """Monic g with g^n = f; NotAPerfectPowerError when none exists.

    Coefficients are matched from the top down: with g known above degree
    m-k, the x^(nm-k) coefficient of g^n is (known terms) + n*g[m-k].
    """
    if n <= 0:
        raise ValueError("root order must be positive")
    dom = f.dom
    if n == 1 or not f:
        return f
    if f.degree % n:
        raise NotAPerfectPowerError(
            f"degree {f.degree} is not a multiple of {n}"
        )
    if f.lc != dom.one:
        raise NotAPerfectPowerError("expected a monic polynomial")
    m = f.degree // n
    inv_n = dom.coerce(Fraction(1, n))
    gc = [dom.zero] * m + [dom.one]
    for k in range(1, m + 1):
        h = UniPoly(dom, gc, f.var) ** n
        gc[m - k] = (f[n * m - k] - h[n * m - k]) * inv_n
    g = UniPoly(dom, gc, f.var)
    if g**n != f:
        raise NotAPerfectPowerError(f"polynomial is not an exact {n}th power")
    return g


def lagrange_interp(dom, xs, ys, var="x") -> UniPoly:
    """Interpolating polynomial through (xs[i], ys[i]) via Newton divided
    differences; needs field coefficients and distinct nodes."""
    if len(xs) != len(ys) or not xs:
        raise ValueError("need equally many nodes and values, at least one")
    xs = [dom.coerce(x) for x in xs]
    dd = [dom.coerce(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = dom.exact_div(dd[i] - dd[i - 1], xs[i] - xs[i - j])
    p = UniPoly.const(dom, dd[-1], var)
    x = UniPoly.gen(dom, var)
    for i in range(n - 2, -1, -1):
        p = p * (x - UniPoly.const(dom, xs[i], var)) + UniPoly.const(
            dom, dd[i], var
        )
    return p
