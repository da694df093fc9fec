"""Rational self-maps of the projective line, iterated exactly.

A map is stored as a coprime numerator/denominator pair over one of the
coefficient domains from :mod:`critcycles.polys`.  Iteration composes the
pair homogeneously, so no gcd is ever needed along the way: the resultant
of an iterate is a product of powers of the original resultant, hence
nonzero, hence the composed pair stays coprime.

The dynatomic polynomial of period n is the Moebius-weighted product
prod_{d | n} (x*q_d - p_d)^{mu(n/d)} where p_d/q_d is the d-th iterate.
The quotient of the two sign classes is always an exact polynomial
division, one coefficient step at a time, so everything here works over
Q, quadratic fields, Q(t), Q[t] and Q[r,s] alike.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateMapError,
    NotPeriodicError,
    PreconditionError,
    UnsupportedDomainError,
)
from .numbers import (
    INF,
    Infinity,
    ProjPoint,
    QuadElement,
    factorint,
    fraction_squarefree_part,
    height,
    quad_height,
    quad_sqrt,
    rational_square_root,
)
from .polys import (
    QQ,
    PolyDomain,
    RatFunc,
    UniPoly,
    discriminant,
    nth_root_poly,
    poly_gcd,
    resultant,
)
from .polys.bivar import ratfunc_sqrt
from .polys.unipoly import _rat_content


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius needs a positive integer")
    if n == 1:
        return 1
    fac = factorint(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def _divisors_ascending(n: int) -> list[int]:
    # periods stay tiny, trial division is plenty
    return [d for d in range(1, n + 1) if n % d == 0]


# ----------------------------------------------------------------------
# homogeneous substitution

def hom_subst(f: UniPoly, P: UniPoly, Q: UniPoly, deg: int | None = None) -> UniPoly:
    """Q^D * f(P/Q) where D = deg f (or the padded degree passed in)."""
    dom = f.dom
    D = f.degree if deg is None else deg
    if D < 0:
        return UniPoly(dom, [], P.var)
    acc = UniPoly.const(dom, f[D], P.var)
    qpow = UniPoly.const(dom, dom.one, P.var)
    for i in range(D - 1, -1, -1):
        acc = acc * P
        qpow = qpow * Q
        c = f[i]
        if not dom.is_zero(c):
            acc = acc + qpow.scale(c)
    return acc


def hom_resultant(p: UniPoly, q: UniPoly, deg: int | None = None):
    """Resultant of the degree-d homogenizations of p and q.

    Both are padded to degree d = max(deg p, deg q) before building the
    2d x 2d Sylvester matrix, so a common degree drop (a shared root at
    infinity) is detected as a zero value.  Fraction-free elimination
    keeps every entry inside the coefficient domain.
    """
    if p.dom != q.dom or p.var != q.var:
        raise ValueError("resultant needs a matching pair")
    dom = p.dom
    d = max(p.degree, q.degree) if deg is None else deg
    if d <= 0:
        return dom.one
    desc_p = [p[i] for i in range(d, -1, -1)]
    desc_q = [q[i] for i in range(d, -1, -1)]
    n = 2 * d
    rows = []
    for i in range(d):
        rows.append([dom.zero] * i + desc_p + [dom.zero] * (d - 1 - i))
    for i in range(d):
        rows.append([dom.zero] * i + desc_q + [dom.zero] * (d - 1 - i))
    return _bareiss_det(dom, rows)


def _bareiss_det(dom, rows):
    n = len(rows)
    if n == 0:
        return dom.one
    m = [list(r) for r in rows]
    sign = 1
    prev = dom.one
    for k in range(n - 1):
        if dom.is_zero(m[k][k]):
            pivot = next(
                (i for i in range(k + 1, n) if not dom.is_zero(m[i][k])), None
            )
            if pivot is None:
                return dom.zero
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = dom.exact_div(
                    m[i][j] * m[k][k] - m[i][k] * m[k][j], prev
                )
            m[i][k] = dom.zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


# ----------------------------------------------------------------------
# pair normalization

def _poly_list_gcd(polys):
    g = None
    for f in polys:
        g = f if g is None else poly_gcd(g, f)
        if g.degree == 0 and g:
            break
    return g


def _normalize_pair(p: UniPoly, q: UniPoly, full: bool):
    dom = p.dom
    kind = dom.kind
    if full and kind in ("rational", "quad", "frac", "quotient"):
        g = poly_gcd(p, q)
        if g.degree > 0:
            p = p.exact_div_field(g)
            q = q.exact_div_field(g)
    if kind == "rational":
        c = _rat_content(list(p.coeffs) + list(q.coeffs))
        if q.lc < 0:
            c = -c
        return p.scale(1 / c), q.scale(1 / c)
    if kind in ("quad", "quotient"):
        s = q.lc
        return p.scale(dom.exact_div(dom.one, s)), q.monic()
    if kind == "frac":
        den = UniPoly(QQ, [Fraction(1)], dom.var)
        for c in list(p.coeffs) + list(q.coeffs):
            if c.den.degree > 0:
                g = poly_gcd(den, c.den)
                den = den * (c.den.exact_div_field(g) if g.degree > 0 else c.den)
        scale = RatFunc(den)
        p = UniPoly(dom, [c * scale for c in p.coeffs], p.var)
        q = UniPoly(dom, [c * scale for c in q.coeffs], q.var)
        nums = [c.num for c in list(p.coeffs) + list(q.coeffs) if c]
        g = _poly_list_gcd(nums)
        cont = _rat_content([a for f in nums for a in f.coeffs])
        if q.lc.num.lc < 0:
            cont = -cont
        div = RatFunc(g.scale(cont)) if g.degree > 0 else RatFunc(
            UniPoly(QQ, [cont], dom.var)
        )
        p = UniPoly(dom, [c / div for c in p.coeffs], p.var)
        q = UniPoly(dom, [c / div for c in q.coeffs], q.var)
        return p, q
    if kind == "multipoly":
        fracs = []
        for c in list(p.coeffs) + list(q.coeffs):
            if c:
                fracs.append(c.content())
        cont = _rat_content(fracs)
        if q.lc.content() < 0:
            cont = -cont
        inv = Fraction(1) / cont
        return p.scale(inv), q.scale(inv)
    if kind == "poly":
        nums = [c for c in list(p.coeffs) + list(q.coeffs) if c]
        g = _poly_list_gcd(nums)
        cont = _rat_content([a for f in nums for a in f.coeffs])
        if q.lc.lc < 0:
            cont = -cont
        if g is not None and g.degree > 0:
            gg = g.scale(cont)
            p = UniPoly(dom, [c.exact_div(gg) for c in p.coeffs], p.var)
            q = UniPoly(dom, [c.exact_div(gg) for c in q.coeffs], q.var)
        else:
            p = p.scale(1 / cont)
            q = q.scale(1 / cont)
        return p, q
    raise UnsupportedDomainError(f"no map normalization for {dom!r}")


# ----------------------------------------------------------------------
# the map itself

class RationalMap:
    """phi = num/den with num, den coprime over the coefficient domain."""

    __slots__ = ("num", "den", "dom", "var", "_iterates", "_deriv", "_hres")

    def __init__(self, num: UniPoly, den: UniPoly, normalize=True, check=True):
        if num.dom != den.dom or num.var != den.var:
            raise ValueError("numerator and denominator must match")
        if not den:
            raise ValueError("denominator is zero")
        if normalize:
            num, den = _normalize_pair(num, den, full=(normalize is True))
        self.num = num
        self.den = den
        self.dom = num.dom
        self.var = num.var
        self._iterates = None
        self._deriv = None
        self._hres = None
        if self.degree < 1:
            raise DegenerateMapError("constant maps are not morphisms here")
        if check and self.dom.is_zero(self.hom_resultant()):
            raise DegenerateMapError("numerator and denominator share a root")

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def hom_resultant(self):
        if self._hres is None:
            self._hres = hom_resultant(self.num, self.den)
        return self._hres

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"({self.num})/({self.den})"

    # -- evaluation

    def eval_value(self, v):
        """Image of a point of P^1, with INF as the point at infinity."""
        dom = self.dom
        if isinstance(v, ProjPoint):
            v = INF if v.is_infinity else Fraction(v.a, v.b)
        if isinstance(v, Infinity):
            dp, dq = self.num.degree, self.den.degree
            if dp > dq:
                return INF
            if dp < dq:
                return dom.zero
            return dom.exact_div(self.num.lc, self.den.lc)
        if not dom.is_field:
            raise UnsupportedDomainError("evaluation needs field coefficients")
        v = dom.coerce(v)
        a = self.num.eval(v)
        b = self.den.eval(v)
        if dom.is_zero(b):
            return INF
        return dom.exact_div(a, b)

    def eval_proj(self, pt: ProjPoint) -> ProjPoint:
        if self.dom.kind != "rational":
            raise UnsupportedDomainError("projective points are rational only")
        d = self.degree
        a, b = pt.a, pt.b
        bn = [b**k for k in range(d + 1)]
        an = [a**k for k in range(d + 1)]
        num = sum(int(self.num[i]) * an[i] * bn[d - i] for i in range(d + 1))
        den = sum(int(self.den[i]) * an[i] * bn[d - i] for i in range(d + 1))
        return ProjPoint(num, den)

    def orbit_value(self, v, steps: int) -> list:
        out = [v]
        for _ in range(steps):
            out.append(self.eval_value(out[-1]))
        return out

    # -- iteration

    def iterate(self, n: int) -> "RationalMap":
        if n < 0:
            raise ValueError("cannot iterate backwards")
        if self._iterates is None:
            x = UniPoly.gen(self.dom, self.var)
            one = UniPoly.const(self.dom, self.dom.one, self.var)
            ident = RationalMap(x, one, normalize=False, check=False)
            self._iterates = [ident, self]
        its = self._iterates
        while len(its) <= n:
            prev = its[-1]
            pn = hom_subst(self.num, prev.num, prev.den, self.degree)
            qn = hom_subst(self.den, prev.num, prev.den, self.degree)
            its.append(RationalMap(pn, qn, normalize="scalars", check=False))
        return its[n]

    # -- calculus

    def derivative_pair(self) -> tuple[UniPoly, UniPoly]:
        """(A, B) with phi' = A/B, reduced over field coefficients.

        Over polynomial rings the quotient-rule pair (p'q - pq', q^2) is
        returned as is; the places it feeds (resultant quotients) are
        insensitive to the common factor.
        """
        if self._deriv is None:
            a = self.num.derivative() * self.den - self.num * self.den.derivative()
            b = self.den * self.den
            if self.dom.is_field:
                g = poly_gcd(a, b)
                if g.degree > 0:
                    a = a.exact_div_field(g)
                    b = b.exact_div_field(g)
            self._deriv = (a, b)
        return self._deriv

    def derivative_value(self, v):
        a, b = self.derivative_pair()
        v = self.dom.coerce(v)
        bv = b.eval(v)
        if self.dom.is_zero(bv):
            raise PreconditionError("derivative evaluated at a pole")
        return self.dom.exact_div(a.eval(v), bv)

    def critical_points(self) -> list:
        """The two critical points of a quadratic map.

        Values land in the coefficient field when the discriminant is a
        square there; over Q a nonsquare discriminant produces a conjugate
        pair of quadratic-field elements instead.
        """
        if self.degree != 2:
            raise UnsupportedDomainError("critical points implemented for degree 2")
        w = self.num.derivative() * self.den - self.num * self.den.derivative()
        pts: list = [INF] * (2 - w.degree)
        if w.degree == 1:
            pts.append(self.dom.exact_div(-w[0], w[1]))
        elif w.degree == 2:
            c2, c1, c0 = w[2], w[1], w[0]
            disc = c1 * c1 - 4 * c0 * c2
            half = self.dom.exact_div(self.dom.one, self.dom.coerce(2) * c2)
            root = self._sqrt_in_field(disc)
            if root is None:
                raise UnsupportedDomainError(
                    "critical points lie in a larger extension"
                )
            if isinstance(root, QuadElement) and self.dom.kind == "rational":
                h = Fraction(1, 2) / c2
                pts.append((root - c1) * h)
                pts.append((-root - c1) * h)
            else:
                pts.append((-c1 + root) * half)
                pts.append((-c1 - root) * half)
        return pts

    def _sqrt_in_field(self, disc):
        kind = self.dom.kind
        if kind == "rational":
            r = rational_square_root(disc)
            if r is not None:
                return r
            d0 = fraction_squarefree_part(disc)
            m = rational_square_root(disc / d0)
            return QuadElement(d0, Fraction(0), m)
        if kind == "quad":
            return quad_sqrt(disc)
        if kind == "frac":
            return ratfunc_sqrt(disc)
        return None

    # -- conjugation

    def conjugate(self, matrix, check=True) -> "RationalMap":
        """The map M^-1 . phi . M for M = (a, b, c, d) acting as a Moebius map."""
        dom = self.dom
        a, b, c, d = (dom.coerce(t) for t in matrix)
        if dom.is_zero(a * d - b * c):
            raise ValueError("conjugating matrix is singular")
        mn = UniPoly(dom, [b, a], self.var)
        md = UniPoly(dom, [d, c], self.var)
        n1 = hom_subst(self.num, mn, md, self.degree)
        d1 = hom_subst(self.den, mn, md, self.degree)
        new_num = n1.scale(d) - d1.scale(b)
        new_den = d1.scale(a) - n1.scale(c)
        return RationalMap(new_num, new_den, normalize=True, check=check)

    # -- multipliers

    def multiplier(self, point, n: int):
        """Multiplier of an n-periodic point (derivative of phi^n there).

        Orbits through infinity are handled by conjugating with
        tau(x) = 1/(x - a) for the first nonnegative integer a missing
        from the orbit; multipliers are conjugation invariants.
        """
        v = point
        if isinstance(v, ProjPoint):
            v = INF if v.is_infinity else Fraction(v.a, v.b)
        if not isinstance(v, Infinity):
            v = self.dom.coerce(v)
        orbit = [v]
        for _ in range(n):
            orbit.append(self.eval_value(orbit[-1]))
        if orbit[n] != orbit[0]:
            raise NotPeriodicError(f"not periodic of period {n}: {point}")
        cycle = orbit[:n]
        if any(isinstance(w, Infinity) for w in cycle):
            a = 0
            while any(
                (not isinstance(w, Infinity)) and w == self.dom.coerce(a)
                for w in cycle
            ):
                a += 1
            aa = self.dom.coerce(a)
            psi = self.conjugate((aa, self.dom.one, self.dom.one, self.dom.zero))
            moved = [
                self.dom.zero
                if isinstance(w, Infinity)
                else self.dom.exact_div(self.dom.one, w - aa)
                for w in cycle
            ]
            lam = self.dom.one
            for w in moved:
                lam = lam * psi.derivative_value(w)
            return lam
        lam = self.dom.one
        for w in cycle:
            lam = lam * self.derivative_value(w)
        return lam


def make_map(num: UniPoly, den: UniPoly, check: bool = True) -> RationalMap:
    return RationalMap(num, den, normalize=True, check=check)


def specialize_map(m: RationalMap, value, dom=None) -> RationalMap:
    """Family member at a parameter value; degenerations raise.

    A specialization that drops degree (leading coefficients vanish) or
    collapses numerator and denominator (shared root) is not a member of
    the family in any useful sense, so both raise DegenerateMapError.
    """
    if m.dom.kind not in ("frac", "poly", "multipoly"):
        raise UnsupportedDomainError("specialize needs parametric coefficients")
    if dom is None:
        dom = m.dom.base if m.dom.kind != "multipoly" else QQ
    if m.dom.kind == "frac":
        for c in list(m.num.coeffs) + list(m.den.coeffs):
            if dom.is_zero(c.den.eval(value)):
                raise DegenerateMapError(f"coefficient pole at {value}")
    p = UniPoly(dom, [c.eval(value) for c in m.num.coeffs], m.var)
    q = UniPoly(dom, [c.eval(value) for c in m.den.coeffs], m.var)
    if not q and not p:
        raise DegenerateMapError(f"map vanishes identically at {value}")
    if not q or max(p.degree, q.degree) < m.degree:
        raise DegenerateMapError(f"degree drops at {value}")
    out = RationalMap(p, q, normalize=True, check=True)
    if out.degree < m.degree:
        raise DegenerateMapError(f"degenerate member at {value}")
    return out


# ----------------------------------------------------------------------
# Moebius maps as matrices

def _as_proj_pair(v, dom):
    if isinstance(v, ProjPoint):
        if v.is_infinity:
            return dom.one, dom.zero
        return dom.coerce(Fraction(v.a, v.b)), dom.one
    if isinstance(v, Infinity):
        return dom.one, dom.zero
    return dom.coerce(v), dom.one


def mobius_to_standard(p1, p2, p3, dom):
    """Matrix (a, b, c, d) of the Moebius map sending p1, p2, p3 to 0, 1, INF.

    Projective coordinates make one formula cover infinity: with
    p_i = (a_i : b_i) the map is lam1*(b1 x - a1) / (lam3*(b3 x - a3))
    where the cross factors lam1, lam3 fix the image of p2.
    """
    (a1, b1), (a2, b2), (a3, b3) = (_as_proj_pair(v, dom) for v in (p1, p2, p3))
    lam1 = b3 * a2 - a3 * b2
    lam3 = b1 * a2 - a1 * b2
    mat = (lam1 * b1, -(lam1 * a1), lam3 * b3, -(lam3 * a3))
    if dom.is_zero(mat[0] * mat[3] - mat[1] * mat[2]):
        raise ValueError("points must be pairwise distinct")
    return mat


def mobius_inverse(mat):
    a, b, c, d = mat
    return (d, -b, -c, a)


def mobius_compose(m2, m1):
    """Matrix of the composite map x -> m2(m1(x))."""
    a2, b2, c2, d2 = m2
    a1, b1, c1, d1 = m1
    return (
        a2 * a1 + b2 * c1,
        a2 * b1 + b2 * d1,
        c2 * a1 + d2 * c1,
        c2 * b1 + d2 * d1,
    )


def mobius_between(src, dst, dom):
    """Matrix sending the source triple to the destination triple."""
    return mobius_compose(
        mobius_inverse(mobius_to_standard(*dst, dom)),
        mobius_to_standard(*src, dom),
    )


def apply_mobius(mat, v, dom):
    a, b, c, d = (dom.coerce(t) for t in mat)
    if isinstance(v, Infinity):
        if dom.is_zero(c):
            return INF
        return dom.exact_div(a, c)
    v = dom.coerce(v)
    den = c * v + d
    if dom.is_zero(den):
        return INF
    return dom.exact_div(a * v + b, den)


# ----------------------------------------------------------------------
# dynatomic polynomials

def dynatomic_pair(m: RationalMap, n: int) -> tuple[UniPoly, UniPoly]:
    """Raw Moebius-product pair (N, M) with Phi_n = N / M, division exact."""
    if n < 1:
        raise ValueError("period must be positive")
    dom = m.dom
    x = UniPoly.gen(dom, m.var)
    num = UniPoly.const(dom, dom.one, m.var)
    den = UniPoly.const(dom, dom.one, m.var)
    for d in _divisors_ascending(n):
        mu = moebius(n // d)
        if mu == 0:
            continue
        it = m.iterate(d)
        g = x * it.den - it.num
        if mu > 0:
            num = num * g
        else:
            den = den * g
    return num, den


def dynatomic(m: RationalMap, n: int) -> UniPoly:
    num, den = dynatomic_pair(m, n)
    if den.degree == 0:
        if den.lc == m.dom.one:
            return num
        return UniPoly(m.dom, [m.dom.exact_div(c, den.lc) for c in num.coeffs], m.var)
    return num.exact_div(den)


def generalized_dynatomic(m: RationalMap, tail: int, n: int) -> UniPoly:
    """Points that land on an n-cycle after exactly `tail` extra steps.

    Built as the quotient of consecutive homogeneous pullbacks of the
    period-n dynatomic polynomial.  Pullbacks are taken at the degree of
    the dynatomic form on the projective line, which exceeds the affine
    degree exactly when infinity is n-periodic; clearing at the affine
    degree would break the divisibility for such maps.
    """
    if tail < 1:
        raise ValueError("tail length must be positive")
    phi = dynatomic(m, n)
    form_deg = sum(
        moebius(n // d) * (m.degree**d + 1) for d in _divisors_ascending(n)
    )

    def pullback(j: int) -> UniPoly:
        if j == 0:
            return phi
        it = m.iterate(j)
        return hom_subst(phi, it.num, it.den, form_deg)

    return pullback(tail).exact_div(pullback(tail - 1))


# ----------------------------------------------------------------------
# multiplier spectra via the resultant trace trick

def char_poly_of_values(h: UniPoly, num: UniPoly, den: UniPoly, var: str = "x") -> UniPoly:
    """Monic polynomial whose roots are g(alpha) = num/den over roots of h.

    Computed as Res_y(h, x*den - num) normalized by Res(h, den) and a
    leading-coefficient power, which keeps everything inside the base
    ring: no splitting field is ever constructed.
    """
    dom = h.dom
    if h.degree < 1:
        raise PreconditionError("need a nonconstant polynomial of roots")
    rb = resultant(h, den)
    if dom.is_zero(rb):
        raise PreconditionError("denominator vanishes at a root")
    pd = PolyDomain(dom, var)

    def lift(f: UniPoly) -> UniPoly:
        return f.map_coeffs(lambda c: UniPoly.const(dom, c, var), pd)

    xgen = UniPoly.gen(dom, var)
    g = lift(den).scale(xgen) - lift(num)
    r = resultant(lift(h), g)
    e = max(num.degree, den.degree)
    scalar = rb * _dom_power(dom, h.lc, e - den.degree)
    out = UniPoly(dom, [dom.exact_div(c, scalar) for c in r.coeffs], var)
    if out.degree != h.degree:
        raise PreconditionError("value polynomial degenerated")
    return out


def _dom_power(dom, base, k: int):
    acc = dom.one
    for _ in range(k):
        acc = acc * base
    return acc


def fixed_multiplier_sigmas(m: RationalMap):
    """Elementary symmetric functions (s1, s2, s3) of the three fixed
    point multipliers of a quadratic map.

    A fixed point at infinity is first moved away by conjugation, which
    leaves the spectrum alone.  Over Q[r, s] the conjugation is never
    needed for the families used here, and the division by the resultant
    stays exact because the spectrum is polynomial in the coefficients.
    """
    if m.degree != 2:
        raise UnsupportedDomainError("multiplier spectrum implemented for degree 2")
    if m.num.degree > m.den.degree:
        if not m.dom.is_field:
            raise UnsupportedDomainError(
                "fixed point at infinity over a non-field domain"
            )
        a = 0
        while True:
            aa = m.dom.coerce(a)
            img = m.eval_value(aa)
            if not (isinstance(img, Infinity) or img == aa):
                break
            a += 1
        m = m.conjugate((aa, m.dom.one, m.dom.one, m.dom.zero))
    x = UniPoly.gen(m.dom, m.var)
    phi1 = x * m.den - m.num
    dnum = m.num.derivative() * m.den - m.num * m.den.derivative()
    dden = m.den * m.den
    c = char_poly_of_values(phi1, dnum, dden)
    return (-c[2], c[1], -c[0])


def trace_polynomial(m: RationalMap, n: int) -> UniPoly:
    """Monic polynomial whose roots are the traces of the n-cycles.

    The trace of a cycle is the sum of its points.  The characteristic
    polynomial of the orbit-sum function over the period-n dynatomic
    roots is a perfect n-th power (each cycle repeats its trace n times);
    the n-th root is returned.  Requires a squarefree dynatomic
    polynomial, cycles of exact period n, and no n-cycle through
    infinity.
    """
    if not m.dom.is_field:
        raise UnsupportedDomainError("trace polynomial needs field coefficients")
    phi = dynatomic(m, n)
    if phi.degree < 1:
        raise PreconditionError("no cycles of this period")
    if m.dom.is_zero(discriminant(phi)):
        raise PreconditionError("dynatomic polynomial has repeated roots")
    num = UniPoly(m.dom, [], m.var)
    den = UniPoly.const(m.dom, m.dom.one, m.var)
    for i in range(n):
        it = m.iterate(i)
        num = num * it.den + it.num * den
        den = den * it.den
    cpoly = char_poly_of_values(phi, num, den)
    return nth_root_poly(cpoly, n)


# ----------------------------------------------------------------------
# the critical resultant invariant

def _u_resultant_quotient(m: RationalMap, n: int):
    it = m.iterate(n)
    if it.num.degree > it.den.degree:
        # infinity is n-periodic: the product over dynatomic roots would
        # silently drop its multiplier
        return None
    phi = dynatomic(m, n)
    a = m.num.derivative() * m.den - m.num * m.den.derivative()
    b = m.den * m.den
    rb = resultant(phi, b)
    dom = m.dom
    if dom.is_zero(rb):
        return None
    ra = resultant(phi, a)
    ell = phi.lc
    k = b.degree - a.degree
    if k >= 0:
        return dom.exact_div(ra * _dom_power(dom, ell, k), rb)
    return dom.exact_div(ra, rb * _dom_power(dom, ell, -k))


def u_invariant(m: RationalMap, n: int):
    """Res(Phi_n, A) / Res(Phi_n, B) * lc(Phi_n)^(deg B - deg A) with
    phi' = A/B.

    Scaling Phi_n by a unit or using the unreduced quotient-rule pair
    changes numerator and denominator by matching factors, so the value
    only depends on the map; over Q[r, s] the quotient is an exact
    polynomial division.  Vanishes exactly when some critical point is
    n-periodic.

    An n-cycle through infinity makes both resultants vanish; since the
    value is a conjugation invariant the map is first moved by a Moebius
    transformation until the cycle is finite.
    """
    val = _u_resultant_quotient(m, n)
    if val is not None:
        return val
    dom = m.dom
    if not dom.is_field:
        raise PreconditionError("cycle through infinity over a ring domain")
    for a in range(64):
        psi = m.conjugate((dom.coerce(a), dom.one, dom.one, dom.zero))
        val = _u_resultant_quotient(psi, n)
        if val is not None:
            return val
    raise PreconditionError("could not move the periodic cycle off infinity")


# ----------------------------------------------------------------------
# orbit classification over number fields

@dataclass
class OrbitInfo:
    kind: str  # "periodic", "preperiodic" or "escaped"
    preperiod: int
    period: int
    orbit: list


def _value_height(v) -> int:
    if isinstance(v, Infinity):
        return 1
    if isinstance(v, QuadElement):
        return quad_height(v)
    return height(v)


def orbit_type(
    m: RationalMap, v, step_cap: int = 64, height_cap: int = 10**40
) -> OrbitInfo:
    """Forward orbit bookkeeping with a height escape hatch.

    Preperiodic orbits close up quickly and stay small; anything whose
    height blows past the cap is reported as escaped rather than looping
    forever.
    """
    seen: dict = {}
    orbit: list = []
    x = v
    if isinstance(x, ProjPoint):
        x = INF if x.is_infinity else Fraction(x.a, x.b)
    for i in range(step_cap + 1):
        if x in seen:
            start = seen[x]
            kind = "periodic" if start == 0 else "preperiodic"
            return OrbitInfo(kind, start, i - start, orbit)
        if _value_height(x) > height_cap:
            return OrbitInfo("escaped", i, 0, orbit)
        seen[x] = i
        orbit.append(x)
        x = m.eval_value(x)
    return OrbitInfo("escaped", step_cap, 0, orbit)
