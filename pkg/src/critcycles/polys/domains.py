"""Coefficient domains the polynomial layer can compute over.

Each domain carries the tiny hook set UniPoly needs (zero, one, coerce,
is_zero, exact_div) plus a ``kind`` tag that selects gcd/resultant
strategies.  Concrete domains: QQ (Fractions), Q(sqrt(d)), Q[t], Q(t),
Q[r,s], and quotient rings Q[y]/(g) used for computing with algebraic
numbers of higher degree.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import (
    FieldMixError,
    PoleError,
    ReducibleModulusError,
)
from ..numbers import QuadElement, parse_quad
from .multipoly import MultiPoly
from .unipoly import UniPoly, poly_gcd


class Domain:
    kind = "?"
    is_field = False

    def coerce(self, x):
        c = self.try_coerce(x)
        if c is None:
            raise TypeError(f"cannot coerce {x!r} into {self}")
        return c

    def try_coerce(self, x):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return not a

    def exact_div(self, a, b):
        raise NotImplementedError

    def _key(self):
        return ()

    def __eq__(self, other):
        if not isinstance(other, Domain):
            return NotImplemented
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))


class RationalDomain(Domain):
    kind = "rational"
    is_field = True
    zero = Fraction(0)
    one = Fraction(1)

    def try_coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        return None

    def exact_div(self, a, b):
        return a / b

    def __repr__(self):
        return "QQ"


QQ = RationalDomain()


class QuadDomain(Domain):
    """The quadratic field Q(sqrt(d)), d squarefree and not 0 or 1."""

    kind = "quad"
    is_field = True

    def __init__(self, d: int):
        self.d = d
        self.zero = QuadElement(d, Fraction(0), Fraction(0))
        self.one = QuadElement(d, Fraction(1), Fraction(0))

    def try_coerce(self, x):
        if isinstance(x, QuadElement):
            if x.d != self.d:
                raise FieldMixError(
                    f"element of Q(sqrt({x.d})) used in Q(sqrt({self.d}))"
                )
            return x
        if isinstance(x, (int, Fraction)):
            return QuadElement(self.d, Fraction(x), Fraction(0))
        if isinstance(x, str):
            return parse_quad(x, self.d)
        return None

    def exact_div(self, a, b):
        return a / b

    def _key(self):
        return (self.d,)

    def __repr__(self):
        return f"QQ(sqrt({self.d}))"


class PolyDomain(Domain):
    """Polynomials in one inner variable as a coefficient ring, e.g. Q[t]."""

    kind = "poly"
    is_field = False

    def __init__(self, base: Domain, inner_var: str = "t"):
        self.base = base
        self.inner_var = inner_var
        self.zero = UniPoly(base, [], inner_var)
        self.one = UniPoly(base, [base.one], inner_var)

    def try_coerce(self, x):
        if isinstance(x, UniPoly):
            if x.dom == self.base and x.var == self.inner_var:
                return x
            return None
        c = self.base.try_coerce(x)
        if c is None:
            return None
        return UniPoly(self.base, [c], self.inner_var)

    def exact_div(self, a, b):
        return a.exact_div(b)

    def gen(self) -> UniPoly:
        return UniPoly.gen(self.base, self.inner_var)

    def _key(self):
        return (self.base, self.inner_var)

    def __repr__(self):
        return f"{self.base!r}[{self.inner_var}]"


class RatFunc:
    """Rational function num/den over QQ with den monic and gcd(num,den)=1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var="t"):
        if isinstance(num, UniPoly):
            var = num.var
        if not isinstance(num, UniPoly):
            num = UniPoly(QQ, [num], var)
        if den is None:
            den = UniPoly(QQ, [QQ.one], var)
        elif not isinstance(den, UniPoly):
            den = UniPoly(QQ, [den], var)
        if num.var != den.var:
            raise ValueError("numerator and denominator variable mismatch")
        if not den:
            raise ZeroDivisionError("zero denominator in rational function")
        if not num:
            den = UniPoly(QQ, [QQ.one], var)
        else:
            if den.degree > 0 and num.degree > 0:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div_field(g)
                    den = den.exact_div_field(g)
            lc = den.lc
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("RatFunc is immutable")

    @property
    def var(self):
        return self.num.var

    @property
    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> UniPoly:
        if not self.is_poly:
            raise ValueError("not a polynomial")
        return self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, UniPoly) and other.dom == QQ:
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc(UniPoly(QQ, [other], self.var))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

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
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            if not self:
                raise ZeroDivisionError("zero to a negative power")
            return RatFunc(self.den, self.num) ** (-k)
        return RatFunc(self.num**k, self.den**k)

    def eval(self, t0):
        t0 = Fraction(t0)
        dv = self.den.eval(t0)
        if dv == 0:
            raise PoleError(f"pole at {self.var} = {t0}")
        return self.num.eval(t0) / dv

    def __str__(self):
        if self.is_poly:
            return str(self.num)
        n, d = str(self.num), str(self.den)
        if " " in n or n.startswith("-"):
            n = f"({n})"
        if " " in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc({self})"


class FracDomain(Domain):
    """The rational function field Q(t)."""

    kind = "frac"
    is_field = True

    def __init__(self, var: str = "t", base: Domain = QQ):
        self.base = base
        self.var = var
        self.polydomain = PolyDomain(base, var)
        self.zero = RatFunc(UniPoly(base, [], var))
        self.one = RatFunc(UniPoly(base, [base.one], var))

    def try_coerce(self, x):
        if isinstance(x, RatFunc):
            if x.var != self.var:
                return None
            return x
        if isinstance(x, UniPoly):
            if x.dom == self.base and x.var == self.var:
                return RatFunc(x)
            return None
        if isinstance(x, (int, Fraction)):
            return RatFunc(UniPoly(self.base, [x], self.var))
        return None

    def exact_div(self, a, b):
        return a / b

    def gen(self) -> RatFunc:
        return RatFunc(UniPoly.gen(self.base, self.var))

    def _key(self):
        return (self.base, self.var)

    def __repr__(self):
        return f"{self.base!r}({self.var})"


class MultiPolyRing(Domain):
    """Q[r, s] (or any small tuple of variables) as a coefficient ring."""

    kind = "multipoly"
    is_field = False

    def __init__(self, variables=("r", "s"), base: Domain = QQ):
        self.vars = tuple(variables)
        self.base = base
        self.zero = MultiPoly(self.vars, {})
        self.one = MultiPoly.const(self.vars, 1)

    def try_coerce(self, x):
        if isinstance(x, MultiPoly):
            if x.vars != self.vars:
                return None
            return x
        if isinstance(x, (int, Fraction)):
            return MultiPoly.const(self.vars, x)
        return None

    def exact_div(self, a, b):
        return a.exact_div(b)

    def gen(self, name) -> MultiPoly:
        return MultiPoly.var(self.vars, name)

    def _key(self):
        return (self.base, self.vars)

    def __repr__(self):
        return f"{self.base!r}{list(self.vars)}"


class QuotElement:
    """Residue class in Q[y]/(g); products reduce eagerly."""

    __slots__ = ("field", "rep")

    def __init__(self, field: "QuotientField", rep: UniPoly):
        if rep.degree >= field.modulus.degree:
            rep = rep % field.modulus
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rep", rep)

    def __setattr__(self, *_):
        raise AttributeError("QuotElement is immutable")

    def _coerce(self, other):
        if isinstance(other, QuotElement):
            if other.field == self.field:
                return other
            raise FieldMixError("elements of different quotient rings")
        c = self.field.try_coerce(other)
        return c

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuotElement(self.field, self.rep + o.rep)

    __radd__ = __add__

    def __neg__(self):
        return QuotElement(self.field, -self.rep)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuotElement(self.field, self.rep - o.rep)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuotElement(self.field, self.rep * o.rep)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * self.field.inverse(o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return (self.field.one / self) ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.rep)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.rep == o.rep

    def __hash__(self):
        return hash((id(self.field), self.rep))

    def __str__(self):
        return str(self.rep)

    def __repr__(self):
        return f"QuotElement({self.rep})"


class QuotientField(Domain):
    """Q[y]/(g) for a monic g, treated as a field.

    Irreducibility is not checked up front: inverting a zero divisor raises
    ReducibleModulusError carrying the discovered factor, and triangular
    decompositions catch that, split g, and retry on each piece.
    """

    kind = "quotient"
    is_field = True

    def __init__(self, modulus: UniPoly):
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        if not modulus.dom.is_field:
            raise ValueError("modulus must live over a field")
        self.modulus = modulus.monic()
        self.base = modulus.dom
        self.var = modulus.var
        self.zero = QuotElement(self, UniPoly(self.base, [], self.var))
        self.one = QuotElement(
            self, UniPoly(self.base, [self.base.one], self.var)
        )

    def try_coerce(self, x):
        if isinstance(x, QuotElement):
            if x.field == self:
                return x
            return None
        if isinstance(x, UniPoly):
            if x.dom == self.base and x.var == self.var:
                return QuotElement(self, x)
            return None
        c = self.base.try_coerce(x)
        if c is None:
            return None
        return QuotElement(self, UniPoly(self.base, [c], self.var))

    def inverse(self, a: QuotElement) -> QuotElement:
        if not a:
            raise ZeroDivisionError("inverting zero in quotient ring")
        g, s, _ = _ext_gcd(a.rep, self.modulus)
        if g.degree > 0:
            raise ReducibleModulusError(
                f"modulus shares the factor {g} with {a}", factor=g.monic()
            )
        inv_c = self.base.exact_div(self.base.one, g.constant_value())
        return QuotElement(self, s.scale(inv_c))

    def exact_div(self, a, b):
        return a * self.inverse(b)

    def gen(self) -> QuotElement:
        return QuotElement(self, UniPoly.gen(self.base, self.var))

    def _key(self):
        return (self.base, self.var, self.modulus.coeffs)

    def __repr__(self):
        return f"{self.base!r}[{self.var}]/({self.modulus})"


def _ext_gcd(a: UniPoly, b: UniPoly):
    """(g, s, t) with s*a + t*b = g, over a coefficient field."""
    dom = a.dom
    zero = UniPoly(dom, [], a.var)
    one = UniPoly(dom, [dom.one], a.var)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0
