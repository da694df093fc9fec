"""Command line front end.

One subcommand per capability: curve equations, moduli coordinates,
dynatomic and trace polynomials, multiplier invariants, portraits and the
portrait census, the symmetric-family classifier, modular-curve models,
fiber products, symmetry-locus intersections, family verification, and the
period-two parameter solver.  Maps are entered as expressions in x (and t
for one-parameter families), output goes to stdout with optional JSON, DOT
and CSV artifacts written atomically.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .curves import (
    build_dynatomic_curve,
    build_gen_dynatomic_curve,
    build_preimage_curve,
    build_trace_curve,
    fiber_product,
)
from .dynamics import RationalMap, dynatomic, trace_polynomial, u_invariant
from .errors import CritcyclesError, DegenerateMapError, MapSyntaxError
from .moduli import (
    classify_psi_portrait,
    coordinates,
    curve_equation,
    family_map,
    intersect_symmetry,
    period2_parameter,
    period4_standard_orbit,
    symmetry_value,
    verify_critical_cycle,
)
from .numbers import INF
from .polys.domains import QQ, FracDomain, PolyDomain, RatFunc
from .polys.unipoly import UniPoly
from .portraits import (
    census,
    classify,
    portrait,
    portrait_to_dot,
    portrait_to_json,
)

# ----------------------------------------------------------------------
# map expressions

_TOKEN_RE = re.compile(r"(\d+)|([xt])|([-+*/^()])|(\S)")


def _tokenize(text):
    out = []
    pos = 0
    for match in _TOKEN_RE.finditer(text):
        if match.group(4):
            raise MapSyntaxError(
                f"syntax error at offset {match.start()}: "
                f"unexpected character {match.group(4)!r}",
                position=match.start(),
            )
        kind = "int" if match.group(1) else ("var" if match.group(2) else "op")
        out.append((kind, match.group(0), match.start()))
        pos = match.end()
    return out


@dataclass(frozen=True)
class MapExpression:
    """A parsed map expression as a fraction of polynomials in Q[t][x].

    The denominator is nonzero as a rational function; whether the map
    lives over Q or over Q(t) is decided by whether t actually occurs.
    """

    num: UniPoly
    den: UniPoly

    def uses_parameter(self) -> bool:
        return any(
            c.degree > 0 for c in list(self.num.coeffs) + list(self.den.coeffs)
        )

    def to_map(self) -> RationalMap:
        if not self.den:
            raise DegenerateMapError(
                "denominator vanishes identically as a rational function"
            )
        if self.uses_parameter():
            frac = FracDomain("t")
            lift = lambda f: UniPoly(frac, [RatFunc(c) for c in f.coeffs], "x")
            return RationalMap(lift(self.num), lift(self.den))
        to_q = lambda f: UniPoly(QQ, [c[0] for c in f.coeffs], "x")
        return RationalMap(to_q(self.num), to_q(self.den))


class _Parser:
    """Recursive descent over expr/term/factor/base.

    Grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/')
    factor)*; factor := '-' factor | base ('^' integer)?; base := rational
    | 'x' | 't' | '(' expr ')'.  Values are fraction pairs over Q[t][x], so
    every operation stays exact and division never loses track of poles.
    """

    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.k = 0
        self.dom = PolyDomain(QQ, "t")
        self.one = UniPoly.const(self.dom, self.dom.one, "x")

    def peek(self):
        return self.tokens[self.k] if self.k < len(self.tokens) else None

    def fail(self, expected):
        tok = self.peek()
        pos = tok[2] if tok else len(self.text)
        got = f"got {tok[1]!r}" if tok else "input ended"
        raise MapSyntaxError(
            f"syntax error at offset {pos}: expected {expected}, {got}",
            position=pos,
        )

    def eat_op(self, symbols):
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in symbols:
            self.k += 1
            return tok[1]
        return None

    def parse(self) -> MapExpression:
        num, den = self.expr()
        if self.peek() is not None:
            self.fail("end of expression")
        return MapExpression(num, den)

    def expr(self):
        a = self.term()
        while True:
            op = self.eat_op("+-")
            if op is None:
                return a
            b = self.term()
            joined = a[0] * b[1] + b[0] * a[1] if op == "+" else \
                a[0] * b[1] - b[0] * a[1]
            a = (joined, a[1] * b[1])

    def term(self):
        a = self.factor()
        while True:
            op = self.eat_op("*/")
            if op is None:
                return a
            b = self.factor()
            if op == "*":
                a = (a[0] * b[0], a[1] * b[1])
            else:
                if not b[0]:
                    raise DegenerateMapError(
                        "division by an expression that is identically zero"
                    )
                a = (a[0] * b[1], a[1] * b[0])

    def factor(self):
        if self.eat_op("-"):
            a = self.factor()
            return (-a[0], a[1])
        a = self.base()
        if self.eat_op("^"):
            tok = self.peek()
            if tok is None or tok[0] != "int":
                self.fail("an integer exponent")
            self.k += 1
            e = int(tok[1])
            return (a[0] ** e, a[1] ** e)
        return a

    def base(self):
        tok = self.peek()
        if tok is None:
            self.fail("a value")
        kind, text, _ = tok
        if kind == "int":
            self.k += 1
            return (self.one.scale(Fraction(text)), self.one)
        if kind == "var":
            self.k += 1
            if text == "x":
                return (UniPoly.gen(self.dom, "x"), self.one)
            return (UniPoly.const(self.dom, self.dom.gen(), "x"), self.one)
        if text == "(":
            self.k += 1
            a = self.expr()
            if not self.eat_op(")"):
                self.fail("')'")
            return a
        self.fail("a value")


def parse_expression(text: str) -> MapExpression:
    return _Parser(text).parse()


def parse_map(text: str) -> RationalMap:
    """Parse a map expression into a rational map over Q, or over Q(t)
    when the parameter t occurs."""
    return parse_expression(text).to_map()


def bind_parameter(text: str, c: Fraction) -> str:
    """Substitute a rational value for the standalone letter c, so family
    formulas written with a symbolic parameter can be specialized."""
    return re.sub(r"\bc\b", f"({c})", text)


# ----------------------------------------------------------------------
# configuration and output plumbing

@dataclass
class RunConfig:
    """Validated knobs for one subcommand dispatch."""

    command: str
    family: str | None = None
    c: Fraction | None = None
    map_text: str | None = None
    n: int | None = None
    m: int | None = None
    steps: int | None = None
    target: str | None = None
    at: Fraction | None = None
    kind: str | None = None
    value: Fraction | None = None
    height: int | None = None
    max_period: int = 4
    vertex_cap: int = 512
    jobs: int | None = None
    cache: str | None = None
    dump_all: bool = False
    dot: str | None = None
    json_path: str | None = None
    csv_path: str | None = None
    json_errors: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        cfg = cls(command=ns.command, json_errors=ns.json_errors)
        for name in (
            "family", "map_text", "n", "m", "steps", "target", "kind",
            "height", "max_period", "vertex_cap", "jobs", "cache",
            "dump_all", "dot", "json_path", "csv_path",
        ):
            if getattr(ns, name, None) is not None:
                setattr(cfg, name, getattr(ns, name))
        for name in ("c", "value", "at"):
            text = getattr(ns, name, None)
            if text is not None:
                setattr(cfg, name, Fraction(text))
        if cfg.cache is None:
            cfg.cache = os.environ.get("CRITCYCLES_CACHE")
        return cfg


def _atomic_write(path, text: str):
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _write_json(path, data):
    _atomic_write(path, json.dumps(data, indent=2) + "\n")


def _require(cfg: RunConfig, *names):
    for name in names:
        if getattr(cfg, name) is None:
            flag = {"map_text": "--map", "json_path": "--json"}.get(
                name, "--" + name.replace("_", "-")
            )
            raise CritcyclesError(f"{cfg.command} requires {flag}")


def _config_map(cfg: RunConfig) -> RationalMap:
    """The map a subcommand should act on: --map text (with c bound when
    given) or a family member at --c."""
    if cfg.map_text is not None:
        text = cfg.map_text
        if cfg.c is not None:
            text = bind_parameter(text, cfg.c)
        return parse_map(text)
    _require(cfg, "family")
    return family_map(cfg.family, cfg.c)


# ----------------------------------------------------------------------
# subcommands

def _cmd_curve_eq(cfg: RunConfig) -> int:
    _require(cfg, "n")
    eq = curve_equation(cfg.n, cache_dir=cfg.cache)
    print(eq.polynomial)
    if cfg.json_path:
        _write_json(cfg.json_path, {"n": eq.n, "polynomial": str(eq.polynomial)})
    return 0


def _cmd_coords(cfg: RunConfig) -> int:
    m = _config_map(cfg)
    pt = coordinates(m)
    s = symmetry_value(pt.sigma1, pt.sigma2)
    print(f"sigma1 = {pt.sigma1}")
    print(f"sigma2 = {pt.sigma2}")
    print(f"symmetry = {s}")
    if cfg.json_path:
        _write_json(cfg.json_path, {
            "sigma1": str(pt.sigma1), "sigma2": str(pt.sigma2),
            "symmetry": str(s),
        })
    return 0


def _cmd_dynatomic(cfg: RunConfig) -> int:
    _require(cfg, "n")
    print(dynatomic(_config_map(cfg), cfg.n))
    return 0


def _cmd_trace_poly(cfg: RunConfig) -> int:
    _require(cfg, "n")
    print(trace_polynomial(_config_map(cfg), cfg.n))
    return 0


def _cmd_u_invariant(cfg: RunConfig) -> int:
    _require(cfg, "n")
    print(u_invariant(_config_map(cfg), cfg.n))
    return 0


def _cmd_portrait(cfg: RunConfig) -> int:
    m = _config_map(cfg)
    if m.dom.kind not in ("rational", "quad"):
        raise CritcyclesError("portraits need a specialized map, not a family")
    meta = {}
    if cfg.family:
        meta["family"] = cfg.family
    if cfg.c is not None:
        meta["c"] = str(cfg.c)
    G = portrait(m, n_max=cfg.max_period, vertex_cap=cfg.vertex_cap, meta=meta)
    cls_name = classify(G)
    cycles = "+".join(str(len(c)) for c in sorted(G.cycles(), key=len))
    print(f"class: {cls_name}")
    print(f"field: {G.field}")
    print(f"vertices: {len(G.vertices)}")
    print(f"cycles: {cycles}")
    if cfg.dot:
        _atomic_write(cfg.dot, portrait_to_dot(G))
    if cfg.json_path:
        _write_json(cfg.json_path, portrait_to_json(G))
    return 0


def _cmd_classify_psi(cfg: RunConfig) -> int:
    _require(cfg, "c")
    res = classify_psi_portrait(cfg.c)
    print(f"class: {res.label}")
    print(f"vertices: {res.vertices}")
    print(f"cycles: {'+'.join(str(k) for k in res.cycle_lengths)}")
    field = "Q" if res.field_disc is None else f"Q(sqrt({res.field_disc}))"
    print(f"field: {field}")
    if cfg.json_path:
        _write_json(cfg.json_path, {
            "class": res.label,
            "c": str(res.c),
            "field": field,
            "alpha": str(res.alpha),
            "cube_root": None if res.cube_root is None else str(res.cube_root),
            "vertices": res.vertices,
            "cycle_lengths": list(res.cycle_lengths),
            "preperiodic_points": [str(p) for p in res.preperiodic_points],
        })
    return 0


def _cmd_sweep(cfg: RunConfig) -> int:
    _require(cfg, "family", "height")
    report = census(
        cfg.family,
        height_bound=cfg.height,
        n_max=cfg.max_period,
        vertex_cap=cfg.vertex_cap,
        cache=cfg.cache,
        jobs=cfg.jobs,
    )
    for label, params in sorted(report.classes().items()):
        print(f"{label}: {len(params)}")
    print(f"parameters: {len(report.records)}")
    print(f"failures: {len(report.failures)}")
    if cfg.json_path:
        _write_json(cfg.json_path, report.to_json())
    if cfg.csv_path:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["c", "class", "vertices", "seconds"])
        for rec in report.records:
            writer.writerow([str(rec.c), rec.label, rec.vertices, rec.seconds])
        _atomic_write(cfg.csv_path, buf.getvalue())
    return 0 if not report.failures else 1


def _resolve_target(cfg: RunConfig, m: RationalMap):
    text = cfg.target
    if text in ("inf", "oo"):
        return INF
    if text in ("A", "Q"):
        if cfg.family != "period4":
            raise CritcyclesError(
                "named tail points A and Q belong to the period4 family"
            )
        orbit = period4_standard_orbit()
        key = orbit.cycle[3] if text == "A" else orbit.cycle[2]
        return orbit.extra_preimages[key]
    return m.dom.coerce(Fraction(text))


def _model_summary(model, kind: str) -> dict:
    data = model.to_json()
    data["kind"] = kind
    data["excluded_parameters"] = [
        str(r) for r in model.exceptional.rationals
    ]
    return data


def _build_model(cfg: RunConfig, m: RationalMap, kind: str):
    if kind == "dynatomic":
        _require(cfg, "n")
        return build_dynatomic_curve(m, cfg.n)[0]
    if kind == "generalized":
        _require(cfg, "m", "n")
        return build_gen_dynatomic_curve(m, cfg.m, cfg.n)[0]
    if kind == "trace":
        _require(cfg, "n")
        return build_trace_curve(m, cfg.n)[0]
    if kind == "preimage":
        _require(cfg, "steps", "target")
        return build_preimage_curve(m, cfg.steps, _resolve_target(cfg, m))[0]
    raise CritcyclesError(f"unknown curve kind {kind!r}")


def _standard_battery(cfg: RunConfig, m: RationalMap):
    """Every quickly buildable model for a one-parameter family: dynatomic
    curves for periods up to four, the standard mixed types, and the first
    and second preimage curves of the marked points."""
    out = []

    def attempt(kind, build):
        try:
            out.append((kind, build()))
        except CritcyclesError as exc:
            out.append((kind, exc))

    for n in (1, 2, 3, 4):
        attempt(f"dynatomic n={n}",
                lambda n=n: build_dynatomic_curve(m, n)[0])
    for tail, n in ((1, 4), (2, 2), (2, 4)):
        attempt(f"generalized (m,n)=({tail},{n})",
                lambda tail=tail, n=n: build_gen_dynatomic_curve(m, tail, n)[0])
    targets = ["1", "A", "Q", "inf"] if cfg.family == "period4" else ["1", "inf"]
    for text in targets:
        cfg.target = text
        attempt(f"preimage steps=1 target={text}",
                lambda: build_preimage_curve(m, 1, _resolve_target(cfg, m))[0])
    cfg.target = "inf"
    attempt("preimage steps=2 target=inf",
            lambda: build_preimage_curve(m, 2, _resolve_target(cfg, m))[0])
    return out


def _cmd_modular_curve(cfg: RunConfig) -> int:
    _require(cfg, "family")
    m = family_map(cfg.family)
    if cfg.dump_all:
        models = _standard_battery(cfg, m)
        failed = 0
        for kind, model in models:
            if isinstance(model, CritcyclesError):
                failed += 1
                print(f"{kind}: unavailable ({model})")
            else:
                print(f"{kind}: degree {model.degree_x}, "
                      f"excluded {[str(r) for r in model.exceptional.rationals]}")
        if cfg.json_path:
            _write_json(cfg.json_path, {
                "family": cfg.family,
                "models": [
                    {"kind": kind, "error": str(mod)}
                    if isinstance(mod, CritcyclesError)
                    else _model_summary(mod, kind)
                    for kind, mod in models
                ],
            })
        return 0 if not failed else 1
    kind = cfg.kind or "dynatomic"
    model = _build_model(cfg, m, kind)
    print(model.polynomial)
    print(f"excluded: {[str(r) for r in model.exceptional.rationals]}")
    if cfg.json_path:
        _write_json(cfg.json_path, _model_summary(model, kind))
    return 0


def _cmd_fiber_product(cfg: RunConfig) -> int:
    _require(cfg, "family", "n", "steps", "target", "at")
    m = family_map(cfg.family)
    first = build_dynatomic_curve(m, cfg.n)[0]
    second = build_preimage_curve(m, cfg.steps, _resolve_target(cfg, m))[0]
    F = fiber_product(first, second)
    common = F.has_common_fiber_point(cfg.at)
    print(f"common rational fiber point at {cfg.at}: {'yes' if common else 'no'}")
    if cfg.json_path:
        data = F.to_json()
        data["at"] = str(cfg.at)
        data["common_fiber_point"] = common
        _write_json(cfg.json_path, data)
    return 0


def _cmd_intersect_symmetry(cfg: RunConfig) -> int:
    _require(cfg, "n")
    rep = intersect_symmetry(cfg.n)
    print(f"points: {rep.point_count}")
    print(f"rational: {[f'({r}, {s})' for r, s in rep.rational_points]}")
    print(f"residue degrees: {rep.residue_degrees}")
    for br in rep.branches:
        line = f"branch {br.modulus}: {br.point_count} points"
        if br.certificate is not None and br.certificate.witness_prime:
            line += f" (irreducible mod {br.certificate.witness_prime})"
        print(line)
    if rep.warnings:
        for msg in rep.warnings:
            print(f"warning: {msg}")
    if cfg.json_path:
        _write_json(cfg.json_path, {
            "n": rep.n,
            "points": rep.point_count,
            "rational_points": [[str(r), str(s)] for r, s in rep.rational_points],
            "residue_degrees": rep.residue_degrees,
            "branches": [{
                "modulus": str(br.modulus),
                "points": br.point_count,
                "witness_prime": getattr(br.certificate, "witness_prime", None),
            } for br in rep.branches],
            "inconclusive": rep.inconclusive,
            "warnings": list(rep.warnings),
        })
    return 0 if not rep.inconclusive else 1


def _cmd_verify_family(cfg: RunConfig) -> int:
    _require(cfg, "family", "c")
    rep = verify_critical_cycle(cfg.family, cfg.c)
    print(f"family: {rep.family}")
    print(f"c: {rep.c}")
    print(f"period: {rep.period}")
    print(f"cycle: {' -> '.join(str(p) for p in rep.cycle)}")
    print(f"companion: {rep.companion} ({rep.companion_status})")
    if cfg.json_path:
        _write_json(cfg.json_path, {
            "family": rep.family,
            "c": str(rep.c),
            "period": rep.period,
            "critical_points": [str(p) for p in rep.critical_points],
            "cycle": [str(p) for p in rep.cycle],
            "companion": str(rep.companion),
            "companion_status": rep.companion_status,
        })
    return 0


def _cmd_period2_param(cfg: RunConfig) -> int:
    _require(cfg, "kind", "value")
    rep = period2_parameter(cfg.kind, cfg.value)
    print(f"c = {rep.c}")
    print(f"converse holds: {rep.converse_holds}")
    print(f"note: {rep.note}")
    if cfg.json_path:
        _write_json(cfg.json_path, {
            "c": str(rep.c), "kind": rep.kind, "value": str(rep.value),
            "converse_holds": rep.converse_holds, "note": rep.note,
        })
    return 0


_HANDLERS = {
    "curve-eq": _cmd_curve_eq,
    "coords": _cmd_coords,
    "dynatomic": _cmd_dynatomic,
    "trace-poly": _cmd_trace_poly,
    "u-invariant": _cmd_u_invariant,
    "portrait": _cmd_portrait,
    "classify-psi": _cmd_classify_psi,
    "sweep": _cmd_sweep,
    "modular-curve": _cmd_modular_curve,
    "fiber-product": _cmd_fiber_product,
    "intersect-symmetry": _cmd_intersect_symmetry,
    "verify-family": _cmd_verify_family,
    "period2-param": _cmd_period2_param,
}


def dispatch(cfg: RunConfig) -> int:
    try:
        return _HANDLERS[cfg.command](cfg)
    except CritcyclesError as exc:
        if cfg.json_errors:
            print(json.dumps({
                "error": type(exc).__name__, "message": str(exc),
            }), file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1


# ----------------------------------------------------------------------
# argument parsing

def _add_common(sub, *flags):
    if "family" in flags:
        sub.add_argument("--family", help="family tag, e.g. period4")
    if "c" in flags:
        sub.add_argument("--c", help="rational parameter a/b")
    if "map" in flags:
        sub.add_argument("--map", dest="map_text", help="map expression in x (and t)")
    if "n" in flags:
        sub.add_argument("-n", type=int, help="period")
    if "json" in flags:
        sub.add_argument("--json", dest="json_path", help="write a JSON artifact")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="critcycles",
        description="exact workbench for quadratic maps with a small critical cycle",
    )
    parser.add_argument(
        "--json-errors", action="store_true",
        help="report errors as JSON on stderr",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("curve-eq", help="critical-cycle curve equation")
    _add_common(sub, "n", "json")
    sub.add_argument("--cache", help="cache directory for slow equations")

    sub = subs.add_parser("coords", help="moduli coordinates of a map")
    _add_common(sub, "family", "c", "map", "json")

    sub = subs.add_parser("dynatomic", help="dynatomic polynomial")
    _add_common(sub, "family", "c", "map", "n")

    sub = subs.add_parser("trace-poly", help="cycle-trace polynomial")
    _add_common(sub, "family", "c", "map", "n")

    sub = subs.add_parser("u-invariant", help="multiplier-product invariant")
    _add_common(sub, "family", "c", "map", "n")

    sub = subs.add_parser("portrait", help="rational preperiodic portrait")
    _add_common(sub, "family", "c", "map", "json")
    sub.add_argument("--max-period", type=int, help="periodic search bound")
    sub.add_argument("--vertex-cap", type=int, help="closure size cap")
    sub.add_argument("--dot", help="write a DOT artifact")

    sub = subs.add_parser("classify-psi", help="symmetric family over its critical field")
    _add_common(sub, "c", "json")

    sub = subs.add_parser("sweep", help="portrait census over a height range")
    _add_common(sub, "family", "json")
    sub.add_argument("--height", type=int, help="parameter height bound")
    sub.add_argument("--max-period", type=int, help="periodic search bound")
    sub.add_argument("--vertex-cap", type=int, help="closure size cap")
    sub.add_argument("--jobs", type=int, help="worker count")
    sub.add_argument("--cache", help="append-only JSONL results cache")
    sub.add_argument("--csv", dest="csv_path", help="write records as CSV")

    sub = subs.add_parser("modular-curve", help="dynamical modular curve models")
    _add_common(sub, "family", "n", "json")
    sub.add_argument("--kind", choices=["dynatomic", "generalized", "trace", "preimage"])
    sub.add_argument("-m", type=int, help="tail length for generalized curves")
    sub.add_argument("--steps", type=int, help="preimage steps")
    sub.add_argument("--target", help="preimage target: rational, inf, A, or Q")
    sub.add_argument("--all", dest="dump_all", action="store_true",
                     help="dump the standard battery of models")

    sub = subs.add_parser("fiber-product", help="common fibers of two curve models")
    _add_common(sub, "family", "n", "json")
    sub.add_argument("--steps", type=int, help="preimage steps")
    sub.add_argument("--target", help="preimage target: rational, inf, A, or Q")
    sub.add_argument("--at", help="parameter value to test")

    sub = subs.add_parser("intersect-symmetry", help="curve meets the symmetry locus")
    _add_common(sub, "n", "json")

    sub = subs.add_parser("verify-family", help="recheck a family member's cycle")
    _add_common(sub, "family", "c", "json")

    sub = subs.add_parser("period2-param", help="parameter with a prescribed period-2 datum")
    _add_common(sub, "json")
    sub.add_argument("--kind", choices=["from-q", "from-p"])
    sub.add_argument("--value", help="rational multiplier or point a/b")

    return parser


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return dispatch(cfg)
