"""Dynamical modular curves attached to a one-parameter family of maps.

A rational function f(t, x) over Q(t) factors uniquely, up to sign, as
content(t) * A(t, x) / B(t, x) with A, B coprime primitive polynomials in
Q[t][x].  Away from a finite exceptional set of parameters the equation
f = 0 cuts out the same points as the plane curve A = 0, so questions
about the whole family reduce to rational points on plane models.  The
constructions here build those models for the standard dynamical choices
of f: dynatomic polynomials (periodic points), their generalized
preperiodic versions, trace polynomials of cycles, and preimages of a
marked point.  Models can be multiplied into fiber products and split by
removing a known component.

Genus computations, Jacobians, and rational-point determination on
positive-genus models are outside the scope of this module; models only
carry a free-text note where such facts are quoted from elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .dynamics import (
    RationalMap,
    dynatomic,
    generalized_dynatomic,
    specialize_map,
)
from .errors import (
    ConstantCurveError,
    CritcyclesError,
    PreconditionError,
    VanishingEliminantError,
)
from .numbers import Infinity
from .polys import (
    QQ,
    FracDomain,
    PolyDomain,
    RatFunc,
    UniPoly,
    multipoly_from_json,
    multipoly_to_json,
    poly_gcd,
    resultant,
    squarefree_part,
    unipoly_from_json,
    unipoly_to_json,
)
from .polys import lagrange_interp
from .polys.bivar import (
    clear_denominators,
    content_split,
    multipoly_to_nested,
    nested_to_multipoly,
    resultant_interp,
)
from .polys.roots import rational_roots

PARAM_VAR = "t"


# ----------------------------------------------------------------------
# exceptional parameter sets

@dataclass(frozen=True)
class ExceptionalSet:
    """Finite set of bad parameters, given by a squarefree polynomial in
    the parameter; only the rational members are listed explicitly."""

    polynomial: UniPoly
    rationals: tuple

    def excludes(self, c) -> bool:
        """Whether the parameter is excluded (rational or not)."""
        return self.polynomial.eval(Fraction(c)) == 0

    def to_json(self) -> dict:
        return {
            "polynomial": unipoly_to_json(self.polynomial),
            "rationals": [str(c) for c in self.rationals],
        }


def _exceptional(parts) -> ExceptionalSet:
    prod = UniPoly(QQ, [Fraction(1)], PARAM_VAR)
    for part in parts:
        if not part:
            raise VanishingEliminantError(
                "an exceptional-set ingredient vanished identically"
            )
        if part.degree > 0:
            prod = prod * part
    sf = squarefree_part(prod)
    if sf.degree == 0:
        return ExceptionalSet(UniPoly(QQ, [Fraction(1)], PARAM_VAR), ())
    roots = tuple(sorted(r for r, _ in rational_roots(sf)))
    return ExceptionalSet(sf, roots)


# ----------------------------------------------------------------------
# plane models

@dataclass(frozen=True)
class PlaneCurveModel:
    """Reduced plane model A(t, x) = 0 of one modular curve.

    The polynomial is squarefree and primitive in Q[t][x] with a positive
    leading coefficient; tag and params identify the construction, and
    discriminant carries the cycle-polynomial discriminant when the
    construction checked one.
    """

    tag: str
    params: tuple
    polynomial: UniPoly
    exceptional: ExceptionalSet
    source: RationalMap | None = None
    discriminant: RatFunc | None = None
    note: str | None = None

    @property
    def degree_x(self) -> int:
        return self.polynomial.degree

    def specialize(self, c) -> UniPoly:
        """Fiber polynomial A(c, x) over Q; the degree can drop at bad
        parameters, which callers must treat as meaningless fibers."""
        return self.polynomial.specialize(Fraction(c))

    def has_rational_fiber_point(self, c) -> bool:
        """Whether the fiber at a good rational parameter contains a
        rational point."""
        fiber = self.specialize(c)
        if fiber.degree < 1:
            raise PreconditionError(f"fiber degenerates at {c}")
        return bool(rational_roots(fiber))

    def to_json(self) -> dict:
        mp = nested_to_multipoly(self.polynomial, (PARAM_VAR, "x"))
        return {
            "tag": self.tag,
            "params": [str(p) for p in self.params],
            "polynomial": multipoly_to_json(mp),
            "exceptional": self.exceptional.to_json(),
        }


def _over_param_field(f: UniPoly) -> UniPoly:
    frac = FracDomain(PARAM_VAR)
    if f.dom.kind == "frac":
        if f.dom.var != PARAM_VAR:
            raise ValueError(f"expected the parameter {PARAM_VAR!r}")
        return f
    if f.dom.kind == "poly" and f.dom.inner_var == PARAM_VAR:
        return UniPoly(frac, [RatFunc(c) for c in f.coeffs], f.var)
    raise ValueError("expected coefficients in Q[t] or Q(t)")


def z_curve(
    num: UniPoly,
    den: UniPoly | None = None,
    tag: str = "Zf",
    params: tuple = (),
    source: RationalMap | None = None,
    disc: RatFunc | None = None,
    note: str | None = None,
) -> tuple[PlaneCurveModel, ExceptionalSet]:
    """Plane model and exceptional set of f = num/den over Q(t).

    Splits off the content p(t), leaving coprime primitive A, B in
    Q[t][x]; the model is the reduced curve A = 0 and the exceptional
    polynomial collects the zeros and poles of p together with the
    resultant of A and B (the parameters over which the two can share a
    root).  A function with constant numerator part defines no curve.
    """
    num = _over_param_field(num)
    if not num:
        raise ConstantCurveError("the zero function defines no curve")
    if den is None:
        den = UniPoly(num.dom, [num.dom.one], num.var)
    else:
        den = _over_param_field(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
    ns, ds = content_split(num), content_split(den)
    A, B = ns.primitive, ds.primitive
    res = resultant_interp(A, B)
    if not res:
        # shared component; cancel it and redo the split
        g = poly_gcd(A, B)
        A = A.exact_div(g).content_primitive()[1]
        B = B.exact_div(g).content_primitive()[1]
        res = resultant_interp(A, B)
    if A.degree < 1:
        raise ConstantCurveError(
            "the numerator part is constant in x, so there is no curve"
        )
    content = ns.content / ds.content
    exceptional = _exceptional([content.num, content.den, res])
    # a nonzero discriminant certifies A is already reduced, skipping the
    # pseudo-remainder gcd
    if A.degree == 1 or resultant_interp(A, A.derivative()):
        reduced = A
    else:
        reduced = squarefree_part(A)
    model = PlaneCurveModel(
        tag=tag, params=params, polynomial=reduced,
        exceptional=exceptional, source=source, discriminant=disc, note=note,
    )
    return model, exceptional


def bad_set(m: RationalMap) -> ExceptionalSet:
    """Parameters where specializing the family can change the degree:
    zeros and poles of the content, roots of the leading coefficients,
    and roots of the resultant of the primitive parts."""
    if m.dom.kind != "frac" or m.dom.var != PARAM_VAR:
        raise ValueError(f"expected a map over Q({PARAM_VAR})")
    ns, ds = content_split(m.num), content_split(m.den)
    A, B = ns.primitive, ds.primitive
    content = ns.content / ds.content
    return _exceptional(
        [content.num, content.den, A.lc, B.lc, resultant_interp(A, B)]
    )


# ----------------------------------------------------------------------
# the standard constructions

def _integral_model_disc(prim: UniPoly) -> RatFunc:
    """Discriminant of an integral model in Q[t][x], as an element of
    Q(t); zero exactly when the model has a repeated root over Q(t)-bar.

    Going through the integral model keeps the resultant inside the
    interpolation fast path instead of a remainder sequence over Q(t).
    """
    d = prim.degree
    res = resultant_interp(prim, prim.derivative())
    if not res:
        return RatFunc(UniPoly(QQ, [], PARAM_VAR))
    sign = Fraction(-1 if (d * (d - 1) // 2) % 2 else 1)
    return RatFunc(res.scale(sign)) / RatFunc(prim.lc)


def build_dynatomic_curve(
    m: RationalMap, n: int
) -> tuple[PlaneCurveModel, ExceptionalSet]:
    """Model of the points of period n across the family.

    Requires the period-n cycle polynomial to have nonzero discriminant;
    the discriminant of its integral model is kept on the result, since
    the parameters where it vanishes are exactly where cycles collapse
    and the point-to-period correspondence can break.
    """
    phi = dynatomic(m, n)
    if phi.degree < 1:
        raise PreconditionError("no points of this period in the family")
    delta = _integral_model_disc(content_split(phi).primitive)
    if not delta:
        raise PreconditionError(
            f"the period-{n} cycle polynomial has vanishing discriminant"
        )
    return z_curve(phi, tag="Y1", params=(n,), source=m, disc=delta)


def build_gen_dynatomic_curve(
    m: RationalMap, tail: int, n: int
) -> tuple[PlaneCurveModel, ExceptionalSet, list[RatFunc]]:
    """Model of the points of preperiodic type (tail, n), together with
    the resultants against the shorter-tail polynomials.

    Those resultants must be nonzero for the model to separate tail
    lengths, so they are returned alongside the model: their roots are
    the parameters where a shorter tail merges into this one.  They are
    computed between the integral models, which fixes the Q(t)-unit
    ambiguity and makes them polynomials in the parameter.
    """
    phi_n = dynatomic(m, n)
    if phi_n.degree < 1:
        raise PreconditionError("no points of this period in the family")
    if not _integral_model_disc(content_split(phi_n).primitive):
        raise PreconditionError(
            f"the period-{n} cycle polynomial has vanishing discriminant"
        )
    gen = generalized_dynatomic(m, tail, n)
    gen_prim = content_split(gen).primitive
    lambdas: list[RatFunc] = []
    for i in range(1, tail):
        other = content_split(generalized_dynatomic(m, i, n)).primitive
        lam = resultant_interp(gen_prim, other)
        if not lam:
            raise VanishingEliminantError(
                f"type ({tail},{n}) and ({i},{n}) polynomials share a root "
                "across the whole family"
            )
        lambdas.append(RatFunc(lam))
    model, exc = z_curve(gen, tag="Y1mn", params=(tail, n), source=m)
    return model, exc, lambdas


def _orbit_sum_pair(m: RationalMap, n: int) -> tuple[UniPoly, UniPoly]:
    """Numerator and denominator in Q[t][x] of x + f(x) + ... up to the
    (n-1)-st iterate, cleared by one common factor so the ratio is kept."""
    num = UniPoly(m.dom, [], m.var)
    den = UniPoly.const(m.dom, m.dom.one, m.var)
    for i in range(n):
        it = m.iterate(i)
        num = num * it.den + it.num * den
        den = den * it.den
    # one clearing factor for the pair: stacking the coefficient lists
    # keeps positions aligned (the top entry is den's leading coefficient,
    # so nothing is stripped)
    stacked = UniPoly(m.dom, list(num.coeffs) + list(den.coeffs), m.var)
    cleared, _ = clear_denominators(stacked)
    split = len(num.coeffs)
    pd = cleared.dom
    return (
        UniPoly(pd, list(cleared.coeffs[:split]), m.var),
        UniPoly(pd, list(cleared.coeffs[split:]), m.var),
    )


def _char_resultant_interp(h: UniPoly, num: UniPoly, den: UniPoly) -> UniPoly:
    """Res_y(h, x*den - num) in Q[t][x], taken over the roots variable y
    of three polynomials in Q[t][y], by interpolation in the parameter.

    Each slice is a resultant over Q[x]; slices where a leading
    y-coefficient collapses are skipped and the interpolated answer is
    checked at a spare node.
    """
    var_t = h.dom.inner_var
    dg = max(num.degree, den.degree)
    tdeg_h = max(c.degree for c in h.coeffs)
    tdeg_g = max(c.degree for f in (num, den) for c in f.coeffs)
    bound = dg * tdeg_h + h.degree * tdeg_g
    pdx = PolyDomain(QQ, "x")
    xs: list[Fraction] = []
    slices: list[UniPoly] = []
    t0 = 0
    while len(xs) < bound + 2:
        v = Fraction(t0)
        t0 = -t0 if t0 > 0 else -t0 + 1
        if not h.lc.eval(v):
            continue
        c1, c0 = den[dg].eval(v), num[dg].eval(v)
        if not c1 and not c0:
            continue
        hs = h.specialize(v)
        ns, ds = num.specialize(v), den.specialize(v)
        h_lift = UniPoly(
            pdx, [UniPoly(QQ, [c], "x") for c in hs.coeffs], h.var
        )
        g_slice = UniPoly(
            pdx,
            [UniPoly(QQ, [-ns[j], ds[j]], "x") for j in range(dg + 1)],
            h.var,
        )
        xs.append(v)
        slices.append(resultant(h_lift, g_slice))
    check_x, check_r = xs.pop(), slices.pop()
    top = max(r.degree for r in slices)
    coeffs = [
        lagrange_interp(QQ, xs, [r[k] for r in slices], var_t)
        for k in range(top + 1)
    ]
    out = UniPoly(PolyDomain(QQ, var_t), coeffs, "x")
    if out.specialize(check_x) != check_r:
        raise CritcyclesError("interpolated resultant failed its spot check")
    return out


def build_trace_curve(
    m: RationalMap, n: int
) -> tuple[PlaneCurveModel, ExceptionalSet]:
    """Model of the traces (orbit sums) of the n-cycles.

    The trace polynomial is the n-th root of the characteristic
    polynomial of the orbit sum over the cycle polynomial's roots; since
    the model only keeps the reduced curve, the n-th power is removed by
    the squarefree reduction and the characteristic resultant is used
    directly.  Preconditions from the resultant trick are enforced: the
    cycle polynomial must be squarefree over Q(t) and must not share a
    root with the orbit-sum denominator.
    """
    if m.dom.kind != "frac" or m.dom.var != PARAM_VAR:
        raise ValueError(f"expected a map over Q({PARAM_VAR})")
    phi = dynatomic(m, n)
    if phi.degree < 1:
        raise PreconditionError("no cycles of this period")
    hprim = content_split(phi).primitive
    if not resultant_interp(hprim, hprim.derivative()):
        raise PreconditionError("dynatomic polynomial has repeated roots")
    onum, oden = _orbit_sum_pair(m, n)
    if not resultant_interp(hprim, oden):
        raise PreconditionError("denominator vanishes at a root")
    char = _char_resultant_interp(hprim, onum, oden)
    if char.degree != hprim.degree:
        raise PreconditionError("value polynomial degenerated")
    prim = char.content_primitive()[1]
    exceptional = _exceptional([prim.lc])
    model = PlaneCurveModel(
        tag="Ytau", params=(n,), polynomial=squarefree_part(prim),
        exceptional=exceptional, source=m,
    )
    return model, exceptional


def build_preimage_curve(
    m: RationalMap, steps: int, target
) -> tuple[PlaneCurveModel, ExceptionalSet]:
    """Model of the m-step preimages of a marked point of the projective
    line over Q(t).

    For a finite target P the defining function is phi^m - P; for the
    point at infinity it is 1/phi^m, which only defines a curve when the
    iterate is not a polynomial.
    """
    if steps < 1:
        raise ValueError("need at least one preimage step")
    it = m.iterate(steps)
    if isinstance(target, Infinity):
        if it.den.degree < 1:
            raise ConstantCurveError(
                "a polynomial iterate has no finite preimages of infinity"
            )
        return z_curve(
            it.den, it.num, tag="Ypre", params=(steps, "inf"), source=m,
        )
    value = m.dom.coerce(target)
    num = it.num - it.den.scale(value)
    return z_curve(
        num, it.den, tag="Ypre", params=(steps, str(value)), source=m,
    )


# ----------------------------------------------------------------------
# fiber products and component surgery

@dataclass(frozen=True)
class FiberProductModel:
    """Model in Q[t, x, z] of two plane curves glued over the parameter
    line: the pair of equations first(t, x) = 0, second(t, z) = 0."""

    first: PlaneCurveModel
    second: PlaneCurveModel
    second_polynomial: UniPoly

    def specialize(self, c) -> tuple[UniPoly, UniPoly]:
        return (self.first.specialize(c), self.second.specialize(c))

    def has_common_fiber_point(self, c) -> bool:
        """Whether both factors have a rational point over the parameter."""
        return (
            self.first.has_rational_fiber_point(c)
            and self.second.has_rational_fiber_point(c)
        )

    def to_json(self) -> dict:
        return {
            "tag": "fiber-product",
            "first": self.first.to_json(),
            "second": self.second.to_json(),
        }


def fiber_product(
    c1: PlaneCurveModel, c2: PlaneCurveModel
) -> FiberProductModel:
    """Glue two models over the parameter line, renaming the second fiber
    variable to keep the equations in distinct unknowns."""
    if c1.source is not None and c2.source is not None:
        same = (
            c1.source.num == c2.source.num
            and c1.source.den == c2.source.den
        )
        if not same:
            raise PreconditionError(
                "fiber products need models over the same family"
            )
    renamed = UniPoly(c2.polynomial.dom, c2.polynomial.coeffs, "z")
    return FiberProductModel(first=c1, second=c2, second_polynomial=renamed)


def divide_known_factor(
    model: PlaneCurveModel, factor: UniPoly
) -> PlaneCurveModel:
    """Residual model after removing a known component.

    The factor must divide the model polynomial exactly; the quotient is
    renormalized to a primitive polynomial.  The exceptional set is kept:
    it belongs to the defining function, not to the component.
    """
    cofactor = model.polynomial.exact_div(factor)
    trimmed = cofactor.content_primitive()[1]
    if trimmed.degree < 1:
        raise ConstantCurveError("nothing remains after removing the factor")
    label = f"residual after removing {factor}"
    note = label if model.note is None else f"{model.note}; {label}"
    return replace(model, polynomial=trimmed, note=note)


def natural_image(model: PlaneCurveModel, c, x0, steps: int = 1):
    """Image of a fiber point under the family map, iterated.

    The constructions come with forgetful maps that act as (t, x) |->
    (t, f^k(t, x)): cycles rotate within the same curve, and longer-tail
    or deeper-preimage points move to the shallower curve.  This applies
    the fiber component of such a map to a point of the fiber at c.
    """
    if model.source is None:
        raise PreconditionError("model does not carry its family")
    if steps < 0:
        raise ValueError("cannot apply the map a negative number of times")
    spec = specialize_map(model.source, Fraction(c))
    value = x0
    for _ in range(steps):
        value = spec.eval_value(value)
    return value


def linear_factor_of_value(value, var: str = "x") -> UniPoly:
    """The component x = w(t) as a primitive polynomial in Q[t][x], for a
    value w in Q(t); used to split known sections off a model."""
    value = FracDomain(PARAM_VAR).coerce(value)
    pd = PolyDomain(QQ, PARAM_VAR)
    return UniPoly(pd, [-value.num, value.den], var).content_primitive()[1]


def section_factors(values, var: str = "x") -> list[UniPoly]:
    """Linear components for a list of Q(t) values."""
    return [linear_factor_of_value(w, var) for w in values]


def trace_section_factor(values, var: str = "x") -> UniPoly:
    """Linear component for the sum of a list of Q(t) values (the trace
    of a known cycle)."""
    frac = FracDomain(PARAM_VAR)
    total = frac.zero
    for w in values:
        total = total + frac.coerce(w)
    return linear_factor_of_value(total, var)


def model_from_json(data: dict) -> PlaneCurveModel:
    """Rebuild a serialized plane model; source maps do not round-trip."""
    mp = multipoly_from_json(data["polynomial"])
    poly = multipoly_to_nested(mp, "x")
    exceptional = ExceptionalSet(
        unipoly_from_json(data["exceptional"]["polynomial"]),
        tuple(Fraction(c) for c in data["exceptional"]["rationals"]),
    )
    return PlaneCurveModel(
        tag=data["tag"],
        params=tuple(data["params"]),
        polynomial=poly,
        exceptional=exceptional,
    )
