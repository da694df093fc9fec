"""Moduli-plane arithmetic for quadratic maps with a small critical cycle.

A degree-2 dynamical system is pinned down, up to conjugacy over the
algebraic closure, by the pair (sigma1, sigma2) of elementary symmetric
functions of its three fixed-point multipliers.  In those coordinates the
classes carrying an n-periodic critical point form a plane curve: the
multiplier product over all n-cycles is a resultant quotient of a generic
normal-form map, and clearing denominators gives an integer equation.

This module computes those equations, evaluates the rational
parametrizations of the n = 2, 3, 4 curves, intersects each curve with the
locus of maps having extra symmetry, and carries the parameter arithmetic
for the four one-parameter families realizing every rational conjugacy
class: two for a critical 2-cycle (split by whether the automorphism group
is trivial), one each for critical 3- and 4-cycles.
"""

from __future__ import annotations

import json
import os
import random
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .dynamics import (
    RationalMap,
    fixed_multiplier_sigmas,
    make_map,
    orbit_type,
    u_invariant,
)
from .errors import (
    CritcyclesError,
    ExcludedParameterError,
    PreconditionError,
    ReducibleModulusError,
    SymmetryLocusError,
    VanishingEliminantError,
    VerificationFailedError,
)
from .numbers import (
    INF,
    QuadElement,
    fraction_squarefree_part,
    quad_cube_root,
    rational_cube_root,
    rational_square_root,
)
from .polys import (
    QQ,
    FracDomain,
    MultiPoly,
    MultiPolyRing,
    QuadDomain,
    QuotientField,
    UniPoly,
    lagrange_interp,
    multipoly_from_json,
    multipoly_to_json,
    poly_gcd,
    resultant,
    squarefree_part,
)
from .polys.bivar import multipoly_to_nested
from .polys.factor2 import (
    FactorCertificate,
    irreducibility_certificate,
    quadratic_factors,
)
from .polys.roots import rational_roots

COORDINATE_VARS = ("r", "s")

FAMILY_TAGS = (
    "period2-trivial",
    "period2-symmetric",
    "period3",
    "period4",
)

_EXCLUDED_PARAMS = {
    "period2-trivial": (Fraction(0),),
    "period2-symmetric": (Fraction(0), Fraction(4)),
    "period3": (Fraction(0),),
    "period4": (Fraction(0), Fraction(1), Fraction(-1)),
}

_CYCLE_LENGTH = {
    "period2-trivial": 2,
    "period2-symmetric": 2,
    "period3": 3,
    "period4": 4,
}


# ----------------------------------------------------------------------
# the symmetry locus and the normal form

def symmetry_polynomial() -> MultiPoly:
    """Equation of the cuspidal cubic where the automorphism group of the
    class with coordinates (r, s) is nontrivial."""
    ring = MultiPolyRing(COORDINATE_VARS)
    r, s = ring.gen("r"), ring.gen("s")
    return (
        -2 * r**3 - r**2 * s + r**2 + 8 * r * s + 4 * s**2
        - 12 * r - 12 * s + 36
    )


def symmetry_value(r, s) -> Fraction:
    """Value of the symmetry-locus equation at rational (r, s)."""
    r, s = Fraction(r), Fraction(s)
    return (
        -2 * r**3 - r**2 * s + r**2 + 8 * r * s + 4 * s**2
        - 12 * r - 12 * s + 36
    )


def phi_rs(r=None, s=None) -> RationalMap:
    """Normal form whose class has coordinates (r, s).

    With no arguments this is the generic family over Q[r, s], the input to
    the curve-equation computation.  With rational arguments it is a map
    over Q; the result has degree two exactly when (r, s) avoids the
    symmetry locus, and points on the locus are rejected up front since no
    map with trivial automorphisms exists there.
    """
    if (r is None) != (s is None):
        raise ValueError("pass both coordinates or neither")
    if r is None:
        ring = MultiPolyRing(COORDINATE_VARS)
        rr, ss = ring.gen("r"), ring.gen("s")
        two = ring.coerce(2)
        num = UniPoly(ring, [two - rr, two - rr, two], "x")
        den = UniPoly(ring, [two - rr - ss, two + rr, -ring.one], "x")
        return RationalMap(num, den, normalize=False, check=False)
    r, s = Fraction(r), Fraction(s)
    if symmetry_value(r, s) == 0:
        raise SymmetryLocusError(
            f"({r}, {s}) lies on the symmetry locus; the normal form "
            "degenerates there"
        )
    num = UniPoly(QQ, [2 - r, 2 - r, 2], "x")
    den = UniPoly(QQ, [2 - r - s, 2 + r, -1], "x")
    return make_map(num, den)


@dataclass(frozen=True)
class ModuliCoordinates:
    """Point of the moduli plane: elementary symmetric functions of the
    fixed-point multipliers."""

    sigma1: Fraction
    sigma2: Fraction

    def as_pair(self):
        return (self.sigma1, self.sigma2)


def coordinates(m: RationalMap) -> ModuliCoordinates:
    """Moduli coordinates of the conjugacy class of a degree-2 map.

    Computed from the characteristic polynomial of the multiplier at the
    fixed points, so no root extraction happens and the answer is exact.
    """
    s1, s2, _ = fixed_multiplier_sigmas(m)
    return ModuliCoordinates(s1, s2)


# ----------------------------------------------------------------------
# curve equations

@dataclass(frozen=True)
class CurveEquation:
    """Primitive integer equation of the period-n critical-cycle curve."""

    n: int
    polynomial: MultiPoly

    def value(self, r, s) -> Fraction:
        return self.polynomial.eval({"r": Fraction(r), "s": Fraction(s)})

    def to_json(self) -> dict:
        data = multipoly_to_json(self.polynomial)
        data["n"] = self.n
        return data

    @classmethod
    def from_json(cls, data: dict) -> "CurveEquation":
        return cls(int(data["n"]), multipoly_from_json(data))


_CURVES: dict[int, CurveEquation] = {}


def _multiplier_product_at(r0: Fraction, s0: Fraction, n: int) -> Fraction:
    return u_invariant(phi_rs(r0, s0), n)


def _interpolated_curve(n: int, deg_r: int, deg_s: int) -> MultiPoly:
    """Reconstruct the multiplier-product polynomial from rational
    specializations on a grid, one row per r value.

    The degree bounds include one row and column of slack; saturating them
    means the bounds were wrong and the caller must widen.
    """
    slices: list[UniPoly] = []
    rpoints: list[Fraction] = []
    r0 = Fraction(2)
    while len(slices) < deg_r + 1:
        r0 += 1
        spoints: list[Fraction] = []
        values: list[Fraction] = []
        s0 = Fraction(19)
        while len(spoints) < deg_s + 1:
            s0 += 1
            try:
                values.append(_multiplier_product_at(r0, s0, n))
            except CritcyclesError:
                continue
            spoints.append(s0)
        slices.append(lagrange_interp(QQ, spoints, values, "s"))
        rpoints.append(r0)
    out = MultiPoly(COORDINATE_VARS, {})
    for j in range(deg_s + 1):
        cj = lagrange_interp(QQ, rpoints, [sl[j] for sl in slices], "r")
        for i in range(cj.degree + 1):
            if cj[i]:
                out = out + MultiPoly(COORDINATE_VARS, {(i, j): cj[i]})
    return out


def _verify_curve(F: MultiPoly, n: int, samples: int = 10) -> None:
    rng = random.Random(20240 + n)
    done = 0
    while done < samples:
        r0 = Fraction(rng.randint(-99, 99), rng.randint(1, 16))
        s0 = Fraction(rng.randint(-99, 99), rng.randint(1, 16))
        try:
            expected = _multiplier_product_at(r0, s0, n)
        except CritcyclesError:
            continue
        if F.eval({"r": r0, "s": s0}) != expected:
            raise VerificationFailedError(
                f"interpolated curve disagrees with the multiplier product "
                f"at ({r0}, {s0})"
            )
        done += 1


def _cache_dir(cache_dir) -> Path | None:
    if cache_dir is not None:
        return Path(cache_dir)
    env = os.environ.get("CRITCYCLES_CACHE")
    return Path(env) if env else None


def curve_equation(n: int, cache_dir=None) -> CurveEquation:
    """Integer equation F_n(r, s) = 0 of the classes with an n-periodic
    critical point, for n up to 4.

    Small n come straight from the symbolic resultant quotient over
    Q[r, s].  For n = 4 that quotient is expensive, so the polynomial is
    reconstructed by Lagrange interpolation from rational specializations
    of the same invariant and then spot-verified at fresh parameters.  The
    result is primitive with positive leading (graded-lex) coefficient.
    Results are memoized in memory and, when a cache directory is given or
    set via CRITCYCLES_CACHE, on disk.
    """
    if n not in (1, 2, 3, 4):
        raise PreconditionError("curve equations are computed for n <= 4")
    directory = _cache_dir(cache_dir)
    path = directory / f"curve_f{n}.json" if directory else None
    if n in _CURVES:
        eq = _CURVES[n]
    elif path is not None and path.exists():
        eq = CurveEquation.from_json(json.loads(path.read_text()))
        # spot checks guard against a stale or hand-edited cache
        _verify_curve(eq.polynomial, n, samples=3)
        _CURVES[n] = eq
    else:
        if n <= 3:
            F = u_invariant(phi_rs(), n).primitive()
        else:
            deg_r, deg_s = 6, 7
            while True:
                F = _interpolated_curve(n, deg_r, deg_s)
                if F.degree_in("r") < deg_r and F.degree_in("s") < deg_s:
                    break
                if deg_r > 24:
                    raise PreconditionError(
                        "interpolation bounds for the curve equation saturated"
                    )
                deg_r, deg_s = 2 * deg_r, 2 * deg_s
            _verify_curve(F, n)
            F = F.primitive()
        eq = CurveEquation(n, F)
        _CURVES[n] = eq
    if path is not None and not path.exists():
        directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(eq.to_json(), fh)
        os.replace(tmp, path)
    return eq


# ----------------------------------------------------------------------
# rational parametrizations of the curves

def cn_parametrize(n: int, v) -> tuple[Fraction, Fraction]:
    """The rational point of the period-n curve with parameter v.

    The n = 2 curve is the line s = -2r; the other two come from explicit
    degree 3 and degree 6 maps of the parameter line, undefined at the
    excluded parameters {0} and {0, 1, -1} respectively.
    """
    v = Fraction(v)
    if n == 2:
        return (v, -2 * v)
    if n == 3:
        if v == 0:
            raise ExcludedParameterError(
                "the period-3 parametrization excludes v = 0"
            )
        r = -(v**3 - v**2 + 5 * v + 1) / v
        s = (v**3 - 2 * v**2 + 7 * v + 2) / v
        return (r, s)
    if n == 4:
        if v in (0, 1, -1):
            raise ExcludedParameterError(
                "the period-4 parametrization excludes v in {0, 1, -1}"
            )
        r = -(v**6 + v**5 + 2 * v**4 + 3 * v**3 - 2 * v**2 - 5 * v - 1) / (
            v * (v - 1) * (v + 1) ** 2
        )
        s = (v**5 + 2 * v**4 + 3 * v**3 - 5 * v - 2) / (v * (v**2 - 1))
        return (r, s)
    raise PreconditionError("parametrizations cover n in {2, 3, 4}")


# ----------------------------------------------------------------------
# the four families

def _family_parameter(tag: str, c) -> Fraction:
    if tag not in _EXCLUDED_PARAMS:
        raise ValueError(f"unknown family {tag!r}")
    c = Fraction(c)
    if c in _EXCLUDED_PARAMS[tag]:
        raise ExcludedParameterError(
            f"family {tag} excludes the parameter c = {c}"
        )
    return c


def family_map(tag: str, c=None) -> RationalMap:
    """Representative map of the family, over Q for a rational parameter.

    With c = None the map is built over the rational function field Q(t)
    with the parameter as the generator; the modular-curve constructions
    consume that generic form.
    """
    if c is None:
        if tag not in _EXCLUDED_PARAMS:
            raise ValueError(f"unknown family {tag!r}")
        dom = FracDomain("t")
        cc = dom.gen()
    else:
        dom = QQ
        cc = _family_parameter(tag, c)
    if tag == "period2-trivial":
        num, den = [-cc, cc], [0, 0, 1]
    elif tag == "period2-symmetric":
        num, den = [-1, 2], [-1, 0, cc]
    elif tag == "period3":
        num, den = [cc, -(cc + 1), 1], [0, 0, 1]
    else:
        num = [-(cc**2), cc + cc**2 - cc**3]
        den = [-(cc**2), -(cc**3 - cc**2 - cc), cc**3 - cc**2 - cc + 1]
    return make_map(UniPoly(dom, num, "x"), UniPoly(dom, den, "x"))


@dataclass(frozen=True)
class FamilyOrbit:
    """Preperiodic structure every period-4 family member has over Q: the
    critical 4-cycle starting at 0, plus the lone extra rational preimage
    of each cycle point that has one."""

    cycle: tuple
    extra_preimages: dict


def period4_standard_orbit(c=None) -> FamilyOrbit:
    """Critical cycle 0 -> 1 -> c -> -c/(c^2-c-1) and the tail points
    feeding it: infinity lands on 0, c/(1-c^2) lands on c, and 1/(1-c)
    lands on the fourth cycle point."""
    if c is None:
        cc = FracDomain("t").gen()
    else:
        cc = _family_parameter("period4", c)
    fourth = -cc / (cc**2 - cc - 1)
    into_fourth = 1 / (1 - cc)
    into_third = cc / (1 - cc**2)
    cycle = (0 * cc, 0 * cc + 1, cc, fourth)
    return FamilyOrbit(
        cycle=cycle,
        extra_preimages={cycle[0]: INF, cycle[2]: into_third,
                         cycle[3]: into_fourth},
    )


@dataclass
class CycleReport:
    """Outcome of recomputing a family's defining critical cycle."""

    family: str
    c: Fraction
    period: int
    critical_points: list
    cycle: list
    companion: object | None
    companion_status: str | None


def _lift_map(m: RationalMap, dom) -> RationalMap:
    num = UniPoly(dom, [dom.coerce(c) for c in m.num.coeffs], m.var)
    den = UniPoly(dom, [dom.coerce(c) for c in m.den.coeffs], m.var)
    return RationalMap(num, den, normalize=False, check=False)


def _exact_period(m: RationalMap, p, n: int):
    """Orbit of p through n steps; (orbit, k) with k the exact period when
    the orbit closes up in at most n steps, else (orbit, None)."""
    orbit = [p]
    for _ in range(n):
        orbit.append(m.eval_value(orbit[-1]))
    if orbit[n] != orbit[0]:
        return orbit, None
    for k in range(1, n + 1):
        if n % k == 0 and orbit[k] == orbit[0]:
            return orbit, k
    return orbit, None


def verify_critical_cycle(tag: str, c) -> CycleReport:
    """Recompute the critical points of a family member and confirm the
    advertised critical cycle, reporting what the companion critical point
    does.

    A failure of the defining property raises VerificationFailedError;
    everything else (a fixed companion, a companion on the cycle) is data
    in the report, not an error.
    """
    c = _family_parameter(tag, c)
    m = family_map(tag, c)
    n = _CYCLE_LENGTH[tag]
    crits = m.critical_points()

    if tag == "period2-symmetric":
        alpha, beta = psi_alpha(c)
        if set(crits) != {alpha, beta}:
            raise VerificationFailedError(
                f"critical points of the symmetric family at c = {c} "
                "disagree with the closed form"
            )
        dom = QQ if isinstance(alpha, Fraction) else QuadDomain(alpha.d)
        mk = _lift_map(m, dom)
        if not (mk.eval_value(alpha) == beta and mk.eval_value(beta) == alpha
                and alpha != beta):
            raise VerificationFailedError(
                f"critical points at c = {c} do not form a 2-cycle"
            )
        return CycleReport(
            family=tag, c=c, period=2, critical_points=list(crits),
            cycle=[alpha, beta], companion=None, companion_status=None,
        )

    if Fraction(0) not in crits:
        raise VerificationFailedError(
            f"0 is not a critical point of {tag} at c = {c}"
        )
    orbit, period = _exact_period(m, Fraction(0), n)
    if period != n:
        raise VerificationFailedError(
            f"critical point 0 of {tag} at c = {c} does not have exact "
            f"period {n}"
        )
    cycle = orbit[:n]
    companion = next(p for p in crits if p != 0)
    if companion in cycle:
        status = "on the critical cycle"
    else:
        _, k = _exact_period(m, companion, n)
        if k == n:
            if tag != "period3":
                raise VerificationFailedError(
                    f"companion critical point of {tag} at c = {c} is "
                    f"{n}-periodic"
                )
            status = f"periodic with period {n}"
        elif k is not None:
            status = "fixed" if k == 1 else f"periodic with period {k}"
        else:
            info = orbit_type(m, companion)
            if info.kind == "preperiodic":
                status = (
                    f"preperiodic of type ({info.preperiod}, {info.period})"
                )
            elif info.kind == "periodic":
                status = f"periodic with period {info.period}"
            else:
                status = "wandering"
    return CycleReport(
        family=tag, c=c, period=n, critical_points=list(crits),
        cycle=cycle, companion=companion, companion_status=status,
    )


# ----------------------------------------------------------------------
# intersection with the symmetry locus

@dataclass
class ResidueBranch:
    """One irreducible factor of the s-eliminant together with the solved
    r-coordinate over its residue field."""

    modulus: UniPoly
    certificate: FactorCertificate | None
    point_count: int
    residue_degree: int
    r_over_residue: UniPoly | None
    quad_disc: int | None


@dataclass
class IntersectionReport:
    """Exact description of the 0-dimensional intersection of a
    critical-cycle curve with the symmetry locus."""

    n: int
    eliminant_r: UniPoly
    eliminant_s: UniPoly
    branches: list[ResidueBranch]
    point_count: int
    residue_degrees: list[int]
    rational_points: list[tuple[Fraction, Fraction]]
    inconclusive: bool
    warnings: list[str]


def _eliminant(F: MultiPoly, G: MultiPoly, keep: str) -> UniPoly:
    drop = "r" if keep == "s" else "s"
    res = resultant(multipoly_to_nested(F, drop), multipoly_to_nested(G, drop))
    if not res:
        raise VanishingEliminantError(
            "the two curves share a component; no eliminant exists"
        )
    return squarefree_part(res)


def _linear_factor(root: Fraction, var: str) -> UniPoly:
    return UniPoly(QQ, [-root.numerator, root.denominator], var)


def _irreducible_factors(
    f: UniPoly,
) -> list[tuple[UniPoly, FactorCertificate | None]]:
    """Irreducible factors of a squarefree rational polynomial, each with a
    certificate when one was needed to settle it."""
    out: list[tuple[UniPoly, FactorCertificate | None]] = []
    rem = f
    for root, _ in rational_roots(f):
        lin = _linear_factor(root, f.var)
        rem = rem.exact_div(lin)
        out.append((lin, None))
    for quad in quadratic_factors(rem):
        rem = rem.exact_div(quad)
        out.append((quad, None))
    stack = [rem] if rem.degree > 0 else []
    while stack:
        g = stack.pop()
        cert = irreducibility_certificate(g)
        if cert.status == "reducible" and cert.factor is not None:
            cof = g.exact_div(cert.factor)
            stack.extend([cert.factor, cof])
        else:
            out.append((g.primitive(), cert))
    return out


def _coordinate_poly_over(F: MultiPoly, K: QuotientField) -> UniPoly:
    nested = multipoly_to_nested(F, "r")
    return UniPoly(K, [K.coerce(c) for c in nested.coeffs], "r")


def intersect_symmetry(n: int) -> IntersectionReport:
    """Solve F_n = 0 on the symmetry locus.

    Both eliminants are reported squarefree.  The s-eliminant is factored
    into irreducibles; over each residue field Q[s]/(g) the two equations
    share, in the supported range, a single common root linear in the class
    of s, so the branch contributes deg(g) conjugate points, each of
    residue degree deg(g), verified by substituting back into both
    equations.  Branches whose common root is not linear are counted with
    the remaining gcd degree and flagged inconclusive instead of guessing
    field degrees.
    """
    F = curve_equation(n).polynomial
    S = symmetry_polynomial()
    eliminant_r = _eliminant(F, S, keep="r")
    eliminant_s = _eliminant(F, S, keep="s")
    branches: list[ResidueBranch] = []
    warnings: list[str] = []
    inconclusive = False
    work = _irreducible_factors(eliminant_s)
    while work:
        g, cert = work.pop(0)
        if cert is not None and cert.status == "inconclusive":
            inconclusive = True
            warnings.append(
                f"irreducibility of a degree-{g.degree} eliminant factor "
                "was not certified"
            )
        K = QuotientField(g.monic())
        try:
            h = poly_gcd(
                _coordinate_poly_over(F, K), _coordinate_poly_over(S, K)
            )
        except ReducibleModulusError as err:
            split = err.factor
            work.append((split.primitive(), None))
            work.append((g.monic().exact_div(split).primitive(), None))
            continue
        if h.degree <= 0:
            continue  # extraneous eliminant factor
        quad_disc = None
        if g.degree == 2:
            quad_disc = fraction_squarefree_part(
                Fraction(g[1] * g[1] - 4 * g[2] * g[0])
            )
        if h.degree == 1:
            rbar = -h[0] / h[1]
            sbar = K.coerce(UniPoly(QQ, [0, 1], g.var))
            if (F.eval({"r": rbar, "s": sbar})
                    or S.eval({"r": rbar, "s": sbar})):
                raise VerificationFailedError(
                    "solved intersection point fails to satisfy the curves"
                )
            branches.append(ResidueBranch(
                modulus=g, certificate=cert, point_count=g.degree,
                residue_degree=g.degree, r_over_residue=rbar.rep,
                quad_disc=quad_disc,
            ))
        else:
            inconclusive = True
            warnings.append(
                f"common root over a degree-{g.degree} factor has degree "
                f"{h.degree}; residue degrees reported as a bound"
            )
            branches.append(ResidueBranch(
                modulus=g, certificate=cert,
                point_count=g.degree * h.degree,
                residue_degree=g.degree * h.degree, r_over_residue=None,
                quad_disc=quad_disc,
            ))
    rational_points = []
    degrees: list[int] = []
    for br in branches:
        degrees.extend([br.residue_degree] * br.point_count)
        if br.modulus.degree == 1 and br.r_over_residue is not None:
            s0 = -Fraction(br.modulus[0]) / Fraction(br.modulus[1])
            r0 = Fraction(br.r_over_residue[0])
            rational_points.append((r0, s0))
    return IntersectionReport(
        n=n, eliminant_r=eliminant_r, eliminant_s=eliminant_s,
        branches=branches, point_count=sum(b.point_count for b in branches),
        residue_degrees=sorted(degrees), rational_points=rational_points,
        inconclusive=inconclusive, warnings=warnings,
    )


# ----------------------------------------------------------------------
# critical-field arithmetic for the symmetric period-2 family

def psi_alpha(c):
    """Critical points (alpha, 1 - alpha) of the symmetric family,
    rational when c(c-4) is a square and conjugate quadratic otherwise."""
    c = _family_parameter("period2-symmetric", c)
    disc = c * (c - 4)
    root = rational_square_root(disc)
    if root is not None:
        alpha = (c + root) / (2 * c)
        return alpha, 1 - alpha
    d = fraction_squarefree_part(disc)
    scale = rational_square_root(disc / d)
    alpha = QuadElement(d, Fraction(1, 2), scale / (2 * c))
    return alpha, 1 - alpha


@dataclass(frozen=True)
class RealizedParameter:
    """Parameter of the symmetric family with prescribed critical-field
    arithmetic, plus whether the sufficient condition is two-sided."""

    c: Fraction
    kind: str
    value: Fraction
    converse_holds: bool
    note: str


def period2_parameter(kind: str, value) -> RealizedParameter:
    """Parameters c making the straightened multiplier c*alpha - 1 a cube.

    kind "from-q" gives the complete list of c with alpha rational and
    c*alpha - 1 a rational cube.  kind "from-p" gives parameters with alpha
    irrational and a cube root in Q(alpha); that direction is only
    guaranteed when (p+1)(1-3p) is not a rational square, and the report
    records whether the check passed.
    """
    v = Fraction(value)
    if kind == "from-q":
        if v in (0, 1, -1):
            raise ExcludedParameterError(
                "from-q excludes the values {0, 1, -1}"
            )
        c = (v**3 + 1) ** 2 / v**3
        return RealizedParameter(
            c=c, kind=kind, value=v, converse_holds=True,
            note="alpha is rational and c*alpha - 1 is a rational cube",
        )
    if kind == "from-p":
        # -1, 1/2, 1/3 force the family parameter into its excluded set
        if v in (0, -1, Fraction(1, 2), Fraction(1, 3)):
            raise ExcludedParameterError(
                "from-p excludes the values {0, -1, 1/2, 1/3}"
            )
        c = (4 * v**3 - 3 * v + 1) / v**3
        square = rational_square_root((v + 1) * (1 - 3 * v))
        if square is None:
            note = ("(p+1)(1-3p) is not a rational square, so alpha is "
                    "irrational and c*alpha - 1 has a cube root in Q(alpha)")
        else:
            note = ("(p+1)(1-3p) is a rational square, so the irrational "
                    "case is not guaranteed at this parameter")
        return RealizedParameter(
            c=c, kind=kind, value=v, converse_holds=square is None, note=note,
        )
    raise ValueError("kind must be 'from-q' or 'from-p'")


@dataclass
class PsiClassification:
    """Portrait of a symmetric-family map over its critical field."""

    label: str
    c: Fraction
    alpha: object
    field_disc: int | None
    cube_root: object | None
    vertices: int
    cycle_lengths: tuple
    preperiodic_points: list


def _roots_of_unity(d: int | None) -> list:
    """Roots of unity in Q (d = None) or Q(sqrt(d)): the generic torsion
    {1, -1}, enlarged only for the two cyclotomic quadratic fields."""
    if d == -1:
        i = QuadElement(-1, 0, 1)
        return [QuadElement(-1, 1, 0), QuadElement(-1, -1, 0), i, -i]
    if d == -3:
        zeta = QuadElement(-3, Fraction(-1, 2), Fraction(1, 2))
        units = [QuadElement(-3, 1, 0), zeta, zeta * zeta]
        return units + [-u for u in units]
    return [Fraction(1), Fraction(-1)]


def classify_psi_portrait(c) -> PsiClassification:
    """Portrait of the symmetric family over the field of its critical
    points, decided by cube arithmetic.

    Straightening the critical 2-cycle to 0 <-> infinity turns the map
    into e/x^2 with e = c*alpha - 1.  Preperiodic points other than the
    cycle are the roots of unity scaled by a cube root of e, so the
    portrait is read off from whether e is a cube in Q(alpha) and which
    roots of unity the field carries; every claimed vertex and edge is
    then re-verified by exact evaluation.
    """
    c = _family_parameter("period2-symmetric", c)
    alpha, _ = psi_alpha(c)
    rational_field = isinstance(alpha, Fraction)
    e = c * alpha - 1
    d = None if rational_field else alpha.d
    omega = rational_cube_root(e) if rational_field else quad_cube_root(e)
    dom = QQ if rational_field else QuadDomain(d)
    straightened = RationalMap(
        UniPoly(dom, [dom.coerce(e)], "x"),
        UniPoly(dom, [dom.zero, dom.zero, dom.one], "x"),
        normalize=False,
    )
    if straightened.eval_value(dom.coerce(0)) is not INF or \
            straightened.eval_value(INF) != dom.coerce(0):
        raise VerificationFailedError("straightened map lost its 2-cycle")
    if omega is None:
        return PsiClassification(
            label="P1", c=c, alpha=alpha, field_disc=d, cube_root=None,
            vertices=2, cycle_lengths=(2,),
            preperiodic_points=[Fraction(0), INF],
        )
    if omega**3 != e:
        raise VerificationFailedError("cube-root witness fails to cube back")
    units = _roots_of_unity(d)
    scaled = [omega * u for u in units]
    pts = [dom.coerce(0), INF] + scaled
    fixed = 0
    for p in scaled:
        image = straightened.eval_value(p)
        if image not in scaled:
            raise VerificationFailedError(
                "scaled root of unity escaped the claimed vertex set"
            )
        if image == p:
            fixed += 1
    cycle_lengths = tuple(sorted([1] * fixed + [2]))
    label = {4: "P2", 6: "P3", 8: "P4"}[len(pts)]
    return PsiClassification(
        label=label, c=c, alpha=alpha, field_disc=d, cube_root=omega,
        vertices=len(pts), cycle_lengths=cycle_lengths,
        preperiodic_points=pts,
    )
