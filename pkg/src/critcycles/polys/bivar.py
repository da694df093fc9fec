"""Helpers for polynomials in x whose coefficients involve a parameter t.

The parameter-line machinery keeps switching between three pictures of the
same object: a polynomial over Q(t), a primitive polynomial over Q[t] with
an explicit rational-function content, and a two-variable polynomial.  The
conversions live here, together with an evaluation-interpolation resultant
that avoids pseudo-remainder coefficient growth when both inputs have t in
every coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import CritcyclesError
from .domains import QQ, FracDomain, PolyDomain, RatFunc
from .multipoly import MultiPoly
from .unipoly import UniPoly, lagrange_interp, resultant


def clear_denominators(f: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Q(t)[x] -> (Q[t][x], d) with d in Q[t] and d*f the returned poly."""
    if f.dom.kind != "frac":
        raise ValueError("expected rational-function coefficients")
    var_t = f.dom.var
    pd = PolyDomain(f.dom.base, var_t)
    den = UniPoly(QQ, [1], var_t)
    for c in f.coeffs:
        if c.den.degree > 0 or c.den.lc != 1:
            from .unipoly import poly_gcd

            g = poly_gcd(den, c.den)
            den = den * (
                c.den.exact_div_field(g) if g.degree > 0 else c.den
            )
    cleared = []
    for c in f.coeffs:
        q = den.divmod(c.den)[0] if c.den.degree > 0 else den.scale(
            1 / c.den.constant_value()
        )
        cleared.append(c.num * q)
    return UniPoly(pd, cleared, f.var), den


@dataclass(frozen=True)
class NormalizedBivariate:
    """Unique factorization f = content * primitive for f in Q(t)[x].

    primitive lives in Q[t][x]: integer-primitive as a whole, and the
    leading x-coefficient has a positive leading t-coefficient.  content is
    the exact rational-function cofactor.
    """

    content: RatFunc
    primitive: UniPoly

    def reassemble(self, frac_dom: FracDomain) -> UniPoly:
        return UniPoly(
            frac_dom,
            [self.content * c for c in self.primitive.coeffs],
            self.primitive.var,
        )


def content_split(f: UniPoly) -> NormalizedBivariate:
    """Split off the full content of f, given over Q[t] or Q(t)."""
    kind = f.dom.kind
    if kind == "frac":
        cleared, den = clear_denominators(f)
        cont, prim = cleared.content_primitive()
        return NormalizedBivariate(RatFunc(cont, den), prim)
    if kind == "poly":
        cont, prim = f.content_primitive()
        return NormalizedBivariate(RatFunc(cont), prim)
    raise ValueError("expected coefficients in Q[t] or Q(t)")


def multipoly_to_nested(mp: MultiPoly, outer: str) -> UniPoly:
    """Two-variable polynomial as an element of Q[inner][outer]."""
    vs = mp.vars
    if len(vs) != 2 or outer not in vs:
        raise ValueError("need exactly two variables, one of them outer")
    oi = vs.index(outer)
    inner = vs[1 - oi]
    pd = PolyDomain(QQ, inner)
    deg = mp.degree_in(outer)
    if deg < 0:
        return UniPoly(pd, [], outer)
    buckets: list[dict[int, Fraction]] = [{} for _ in range(deg + 1)]
    for exps, c in mp.terms.items():
        buckets[exps[oi]][exps[1 - oi]] = c
    coeffs = []
    for b in buckets:
        if not b:
            coeffs.append(UniPoly(QQ, [], inner))
            continue
        top = max(b)
        coeffs.append(
            UniPoly(QQ, [b.get(i, Fraction(0)) for i in range(top + 1)], inner)
        )
    return UniPoly(pd, coeffs, outer)


def nested_to_multipoly(p: UniPoly, variables) -> MultiPoly:
    """Inverse of multipoly_to_nested; variables fixes the output order."""
    vs = tuple(variables)
    outer = p.var
    inner = p.dom.inner_var
    if set(vs) != {outer, inner}:
        raise ValueError("variable names do not match")
    oi = vs.index(outer)
    terms = {}
    for i, c in enumerate(p.coeffs):
        for j, q in enumerate(c.coeffs):
            if not q:
                continue
            e = [0, 0]
            e[oi] = i
            e[1 - oi] = j
            terms[tuple(e)] = q
    return MultiPoly(vs, terms)


def ratfunc_sqrt(rf: RatFunc) -> RatFunc | None:
    """A square root of rf inside Q(t), or None.

    rf = (num*den)/den^2 with den monic, so rf is a square exactly when
    num*den is a square in Q[t]: leading coefficient a rational square and
    monic part an exact polynomial square.
    """
    from ..errors import NotAPerfectPowerError
    from ..numbers import rational_square_root
    from .unipoly import nth_root_poly

    if not rf:
        return rf
    f = rf.num * rf.den
    if f.degree % 2:
        return None
    lc_root = rational_square_root(f.lc)
    if lc_root is None:
        return None
    try:
        h = nth_root_poly(f.scale(1 / f.lc), 2)
    except NotAPerfectPowerError:
        return None
    return RatFunc(h.scale(lc_root), rf.den)


def resultant_interp(f: UniPoly, g: UniPoly, deg_bound: int | None = None):
    """Res_x(f, g) for f, g in Q[t][x], by specialization + interpolation.

    The t-degree of the resultant is at most (deg_x g) * tdeg(f) +
    (deg_x f) * tdeg(g) (row sums of the Sylvester matrix), so that many
    good nodes pin it down; nodes where either leading coefficient
    vanishes are skipped since degree drop breaks the specialization
    identity.  The result is checked at one extra fresh node.
    """
    if f.dom.kind != "poly" or g.dom != f.dom:
        raise ValueError("expected two polynomials over Q[t]")
    if not f or not g:
        return UniPoly(QQ, [], f.dom.inner_var)
    if f.degree == 0 or g.degree == 0:
        return resultant(f, g)
    var_t = f.dom.inner_var
    tf = max(c.degree for c in f.coeffs)
    tg = max(c.degree for c in g.coeffs)
    if deg_bound is None:
        deg_bound = g.degree * tf + f.degree * tg
    lf, lg = f.lc, g.lc
    xs, ys = [], []
    t0 = 0
    need = deg_bound + 1
    while len(xs) < need + 1:
        v = Fraction(t0)
        t0 = -t0 if t0 > 0 else -t0 + 1
        if not lf.eval(v) or not lg.eval(v):
            continue
        xs.append(v)
        ys.append(resultant(f.specialize(v), g.specialize(v)))
    check_x, check_y = xs.pop(), ys.pop()
    out = lagrange_interp(QQ, xs, ys, var_t)
    if out.eval(check_x) != check_y:
        raise CritcyclesError("interpolated resultant failed its spot check")
    return out
