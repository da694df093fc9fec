"""Preperiodic portraits of quadratic rational maps over Q and quadratic fields.

A portrait is the finite functional graph whose vertices are the K-rational
preperiodic points of a map and whose edges run from x to phi(x).  Periodic
points are found by factoring dynatomic polynomials into pieces of degree at
most two, the vertex set is closed under rational preimages, and the graph is
canonicalized so portraits can be compared across maps and across fields.

The period search is capped (default four).  The cap is an assumption, not a
theorem: a map with rational points of higher period would yield a portrait
missing those cycles.  Every portrait records the cap in its metadata, so a
census run can corroborate an expected class list but never prove it complete.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path

from .dynamics import RationalMap, dynatomic, orbit_type
from .errors import (
    BudgetExceededError,
    ClosureCapError,
    CritcyclesError,
    ExcludedParameterError,
    UnsupportedDomainError,
    VerificationFailedError,
)
from .moduli import family_map, psi_alpha
from .numbers import (
    INF,
    Infinity,
    QuadElement,
    fraction_squarefree_part,
    height,
    quad_sqrt,
    rational_square_root,
)
from .polys.domains import QQ, QuadDomain
from .polys.factor2 import quadratic_factors
from .polys.roots import rational_roots
from .polys.unipoly import UniPoly

MAX_SEARCH_PERIOD = 6


def _field_name(dom) -> str:
    if dom.kind == "rational":
        return "Q"
    if dom.kind == "quad":
        return f"Q(sqrt({dom.d}))"
    raise UnsupportedDomainError(
        "portraits are computed over Q or a quadratic field"
    )


def _point_key(x):
    """Deterministic sort key; finite points first, infinity last."""
    if isinstance(x, Infinity):
        return (1, Fraction(0), Fraction(0))
    if isinstance(x, QuadElement):
        return (0, x.u, x.v)
    return (0, Fraction(x), Fraction(0))


def _coeff_bits(f: UniPoly) -> int:
    out = 1
    for c in f.coeffs:
        parts = (c.u, c.v) if isinstance(c, QuadElement) else (Fraction(c),)
        for q in parts:
            out = max(out, q.numerator.bit_length(), q.denominator.bit_length())
    return out


# ----------------------------------------------------------------------
# point searches

def _kroots_small(p: UniPoly) -> list:
    """Distinct roots of a polynomial of degree at most two inside its own
    coefficient field, via the discriminant."""
    dom = p.dom
    if not p:
        raise ValueError("zero polynomial has every value as a root")
    if p.degree == 0:
        return []
    if p.degree == 1:
        return [-p[0] / p[1]]
    if p.degree > 2:
        raise ValueError("quadratic root solver got degree > 2")
    a, b, c = p[2], p[1], p[0]
    disc = b * b - 4 * a * c
    s = rational_square_root(disc) if dom.kind == "rational" else quad_sqrt(disc)
    if s is None:
        return []
    roots = {(-b + s) / (2 * a), (-b - s) / (2 * a)}
    return sorted(roots, key=_point_key)


def _rational_part(x) -> Fraction:
    if isinstance(x, QuadElement):
        if x.v != 0:
            raise VerificationFailedError("norm polynomial kept an irrational coefficient")
        return x.u
    return Fraction(x)


def _kroots_of(phi: UniPoly) -> list:
    """All roots of phi inside its coefficient field (Q or quadratic)."""
    dom = phi.dom
    if phi.degree < 1:
        return []
    if dom.kind == "rational":
        return [r for r, _ in rational_roots(phi)]
    conj = UniPoly(dom, [c.conjugate() for c in phi.coeffs], phi.var)
    norm = UniPoly(QQ, [_rational_part(c) for c in (phi * conj).coeffs], phi.var)
    d = dom.d
    cands = [dom.coerce(r) for r, _ in rational_roots(norm)]
    for q in quadratic_factors(norm):
        disc = q[1] * q[1] - 4 * q[2] * q[0]
        if fraction_squarefree_part(disc) != d:
            continue
        scale = rational_square_root(disc / d)
        for sign in (1, -1):
            cands.append(QuadElement(d, -q[1] / (2 * q[2]), sign * scale / (2 * q[2])))
    # the norm polynomial only bounds the root set; keep actual roots
    zero = dom.zero
    return sorted({x for x in cands if phi.eval(x) == zero}, key=_point_key)


def rational_periodic_points(m: RationalMap, n_max: int = 4, budget: int | None = None):
    """All K-rational periodic points of period at most n_max, as a list of
    (point, exact period) pairs sorted with infinity last.

    Roots of the n-th dynatomic polynomial are collected for each n; over a
    quadratic field the dynatomic polynomial is located inside its rational
    norm via quadratic factors whose discriminant lands in d*(Q^*)^2.  The
    point at infinity is checked by direct iteration.  Exact periods come
    from walking the orbit, so degenerate parameters where a dynatomic root
    has lower period are reported with the true period.

    budget caps the total coefficient volume (degree times coefficient bits)
    fed to the root searches; exceeding it raises BudgetExceededError whose
    ``partial`` attribute holds the points found so far.
    """
    if not 1 <= n_max <= MAX_SEARCH_PERIOD:
        raise ValueError(f"period bound must be between 1 and {MAX_SEARCH_PERIOD}")
    _field_name(m.dom)
    found: dict = {}

    def record(x):
        if x in found:
            return
        orbit = [x]
        y = m.eval_value(x)
        while y != x:
            if len(orbit) > n_max:
                raise VerificationFailedError("claimed periodic point does not close up")
            orbit.append(y)
            y = m.eval_value(y)
        for z in orbit:
            found.setdefault(z, len(orbit))

    far = orbit_type(m, INF, step_cap=n_max + 1)
    if far.kind == "periodic" and far.period <= n_max:
        record(INF)

    spent = 0
    for n in range(1, n_max + 1):
        phi = dynatomic(m, n)
        if budget is not None:
            spent += (phi.degree + 1) * _coeff_bits(phi)
            if spent > budget:
                partial = sorted(found.items(), key=lambda t: _point_key(t[0]))
                raise BudgetExceededError(
                    f"periodic-point search budget exhausted at period {n}",
                    partial=partial,
                )
        for x in _kroots_of(phi):
            record(x)
    return sorted(found.items(), key=lambda t: _point_key(t[0]))


def rational_preimages(m: RationalMap, value) -> list:
    """All K-rational solutions of phi(x) = value, including infinity.

    Finite fibers come from the quadratic formula with an exact square test
    in the coefficient field; infinity joins the fiber exactly when the
    degree-two map sends it to the requested value.
    """
    if m.degree != 2:
        raise ValueError("preimage solver is specialized to degree-two maps")
    dom = m.dom
    _field_name(dom)
    if isinstance(value, Infinity):
        pts = _kroots_small(m.den) if m.den.degree >= 1 else []
    else:
        w = dom.coerce(value)
        pts = _kroots_small(m.num - m.den.scale(w))
    target = value if isinstance(value, Infinity) else dom.coerce(value)
    if m.eval_value(INF) == target:
        pts = pts + [INF]
    return sorted(pts, key=_point_key)


# ----------------------------------------------------------------------
# the portrait graph

@dataclass(frozen=True)
class Portrait:
    """Finite functional graph of K-rational preperiodic points.

    ``vertices`` hold exact field elements (or INF); ``successors[i]`` is the
    index of the image of vertex i, so every vertex has out-degree one and
    the edge count equals the vertex count.  ``meta`` records the generator's
    assumptions, in particular the period bound used for the cycle search.
    """

    vertices: tuple
    successors: tuple
    field: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.vertices)
        if len(self.successors) != n:
            raise ValueError("successor array does not match the vertex list")
        if any(not 0 <= s < n for s in self.successors):
            raise ValueError("successor index out of range")
        if len(set(self.labels)) != n:
            raise ValueError("vertex labels are not distinct")

    @property
    def labels(self) -> tuple:
        return tuple(str(v) for v in self.vertices)

    def index_of(self, point) -> int:
        return self.vertices.index(point)

    def cycles(self) -> tuple:
        """Vertex cycles in successor order, each rotated to start at its
        smallest index, listed in order of discovery."""
        color = [0] * len(self.vertices)
        out = []
        for v0 in range(len(self.vertices)):
            if color[v0]:
                continue
            path, v = [], v0
            while color[v] == 0:
                color[v] = 1
                path.append(v)
                v = self.successors[v]
            if color[v] == 1:
                cyc = path[path.index(v):]
                j = cyc.index(min(cyc))
                out.append(tuple(cyc[j:] + cyc[:j]))
            for w in path:
                color[w] = 2
        return tuple(out)

    def components(self) -> tuple:
        """Weakly connected components as sorted index tuples."""
        parent = list(range(len(self.vertices)))

        def root(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for v, w in enumerate(self.successors):
            parent[root(v)] = root(w)
        groups: dict = {}
        for v in range(len(self.vertices)):
            groups.setdefault(root(v), []).append(v)
        return tuple(tuple(g) for g in sorted(groups.values()))


@dataclass(frozen=True)
class PortraitClass:
    """Isomorphism class of a portrait.

    ``certificate`` is a canonical string: two portraits get equal
    certificates exactly when they are isomorphic as directed graphs.  The
    edge count always equals the vertex count since out-degrees are one.
    """

    certificate: str
    vertices: int
    edges: int
    cycle_lengths: tuple


def portrait(m: RationalMap, n_max: int = 4, vertex_cap: int = 512, meta=None) -> Portrait:
    """The full K-rational preperiodic portrait of a quadratic map.

    Periodic points are found first, then the vertex set is closed under
    rational preimages by breadth-first search.  A closure needing more than
    ``vertex_cap`` vertices raises ClosureCapError.
    """
    periodic = rational_periodic_points(m, n_max=n_max)
    points = [p for p, _ in periodic]
    index = {p: i for i, p in enumerate(points)}
    queue = deque(points)
    while queue:
        v = queue.popleft()
        for u in rational_preimages(m, v):
            if u in index:
                continue
            if len(points) >= vertex_cap:
                raise ClosureCapError(
                    f"preimage closure exceeded {vertex_cap} vertices"
                )
            index[u] = len(points)
            points.append(u)
            queue.append(u)
    succ = []
    for v in points:
        w = m.eval_value(v)
        if w not in index:
            raise VerificationFailedError("a vertex image escaped the closure")
        succ.append(index[w])
    info = {"n_max": n_max, "vertex_cap": vertex_cap}
    if meta:
        info.update(meta)
    return Portrait(
        vertices=tuple(points),
        successors=tuple(succ),
        field=_field_name(m.dom),
        meta=info,
    )


def canonical_form(G: Portrait) -> PortraitClass:
    """Canonical certificate of a portrait.

    Each preimage tree hanging off a cycle vertex is encoded bottom-up with
    sorted child encodings, each cycle becomes the lexicographically minimal
    rotation of its tree encodings, and the component strings are sorted.
    """
    succ = G.successors
    oncycle = [False] * len(succ)
    for cyc in G.cycles():
        for v in cyc:
            oncycle[v] = True
    children: list = [[] for _ in succ]
    for v, w in enumerate(succ):
        if not oncycle[v]:
            children[w].append(v)

    def encode(v) -> str:
        return "(" + "".join(sorted(encode(u) for u in children[v])) + ")"

    comps = []
    lengths = []
    for cyc in G.cycles():
        encs = [encode(v) for v in cyc]
        best = min(
            tuple(encs[i:] + encs[:i]) for i in range(len(encs))
        )
        comps.append("[" + "|".join(best) + "]")
        lengths.append(len(cyc))
    return PortraitClass(
        certificate="+".join(sorted(comps)),
        vertices=len(G.vertices),
        edges=len(G.vertices),
        cycle_lengths=tuple(sorted(lengths)),
    )


# ----------------------------------------------------------------------
# the reference catalog

def psi_straightened_map(c) -> RationalMap:
    """Member of the symmetric period-two family conjugated so its critical
    cycle is 0 <-> infinity, over the field of its critical points."""
    c = Fraction(c)
    alpha, _ = psi_alpha(c)
    e = c * alpha - 1
    dom = QQ if isinstance(alpha, Fraction) else QuadDomain(alpha.d)
    return RationalMap(
        UniPoly(dom, [dom.coerce(e)], "x"),
        UniPoly(dom, [dom.zero, dom.zero, dom.one], "x"),
        normalize=False,
    )


CATALOG_REFERENCES = (
    ("I1", "period4", Fraction(2)),
    ("I2", "period4", Fraction(-11, 3)),
    ("I3", "period4", Fraction(3, 2)),
    ("F1", "period4", Fraction(1, 6)),
    ("F2", "period4", Fraction(5, 2)),
    ("P1", "symmetric", Fraction(9, 2)),
    ("P2", "symmetric", Fraction(81, 8)),
    ("P3", "symmetric", Fraction(2)),
    ("P4", "symmetric", Fraction(400, 343)),
)

_catalog: dict | None = None


def reference_catalog() -> dict:
    """Portrait classes of the census, one reference parameter each.

    Certificates are recomputed from the reference maps rather than stored,
    so the catalog stays consistent with the canonicalization."""
    global _catalog
    if _catalog is None:
        table = {}
        for name, kind, c in CATALOG_REFERENCES:
            m = family_map("period4", c) if kind == "period4" else psi_straightened_map(c)
            table[name] = canonical_form(portrait(m, meta={"reference": name}))
        certs = [cls.certificate for cls in table.values()]
        if len(set(certs)) != len(certs):
            raise VerificationFailedError("reference portraits are not pairwise distinct")
        _catalog = table
    return _catalog


def classify(G: Portrait, catalog: dict | None = None) -> str:
    """Name of the portrait's class in the catalog, or "novel"."""
    cert = canonical_form(G).certificate
    table = reference_catalog() if catalog is None else catalog
    for name in sorted(table):
        if table[name].certificate == cert:
            return name
    return "novel"


# ----------------------------------------------------------------------
# census over a parameter family

@dataclass(frozen=True)
class CensusRecord:
    c: Fraction
    label: str
    vertices: int
    seconds: float


@dataclass(frozen=True)
class CensusReport:
    """Outcome of a census sweep; failures are recorded, never fatal."""

    family: str
    height_bound: int
    n_max: int
    records: tuple
    failures: tuple

    def classes(self) -> dict:
        out: dict = {}
        for rec in self.records:
            out.setdefault(rec.label, []).append(rec.c)
        for label in out:
            out[label].sort(key=lambda q: (height(q), q))
        return out

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "field": "Q",
            "height_bound": self.height_bound,
            "n_max": self.n_max,
            "classes": {k: [str(c) for c in v] for k, v in sorted(self.classes().items())},
            "failures": [[str(c), msg] for c, msg in self.failures],
        }


def rationals_up_to_height(bound: int) -> list:
    """All rationals a/b in lowest terms with max(|a|, b) <= bound, ordered
    by height and then by value."""
    out = []
    for b in range(1, bound + 1):
        for a in range(-bound, bound + 1):
            if gcd(abs(a), b) == 1:
                out.append(Fraction(a, b))
    out.sort(key=lambda q: (height(q), q))
    return out


def _census_options_hash(family: str, n_max: int, vertex_cap: int) -> str:
    blob = json.dumps(
        {"family": family, "n_max": n_max, "vertex_cap": vertex_cap},
        sort_keys=True,
    )
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _census_worker(task):
    family, c_text, n_max, vertex_cap = task
    start = time.perf_counter()
    try:
        m = family_map(family, Fraction(c_text))
        G = portrait(m, n_max=n_max, vertex_cap=vertex_cap,
                     meta={"family": family, "c": c_text})
        return {
            "c": c_text,
            "class": classify(G),
            "vertices": len(G.vertices),
            "seconds": round(time.perf_counter() - start, 6),
        }
    except CritcyclesError as exc:
        return {"c": c_text, "error": f"{type(exc).__name__}: {exc}"}


def _resolve_jobs(jobs) -> int:
    if jobs is None:
        jobs = int(os.environ.get("CRITCYCLES_JOBS", "0")) or (os.cpu_count() or 1)
    return max(1, int(jobs))


def census(
    family: str = "period4",
    height_bound: int = 10,
    n_max: int = 4,
    vertex_cap: int = 512,
    cache=None,
    jobs=None,
) -> CensusReport:
    """Portrait census over all admissible parameters of bounded height.

    Parameters run through every rational of height at most ``height_bound``
    outside the family's excluded set.  Results stream into the append-only
    JSONL ``cache`` (header line plus one record per parameter), and a rerun
    against the same cache recomputes nothing it already holds, so the sweep
    is resumable and idempotent.  Per-parameter errors become failure records
    instead of aborting the sweep.
    """
    params = []
    for c in rationals_up_to_height(height_bound):
        try:
            family_map(family, c)
        except ExcludedParameterError:
            continue
        params.append(c)

    header = {
        "version": 1,
        "family": family,
        "options_hash": _census_options_hash(family, n_max, vertex_cap),
    }
    cached: dict = {}
    path = Path(cache) if cache is not None else None
    if path is not None and path.exists():
        lines = [ln for ln in path.read_text().splitlines() if ln.strip()]
        if lines:
            if json.loads(lines[0]) != header:
                raise CritcyclesError(
                    "census cache was built with different options"
                )
            for ln in lines[1:]:
                rec = json.loads(ln)
                cached[rec["c"]] = rec

    todo = [str(c) for c in params if str(c) not in cached]
    tasks = [(family, c_text, n_max, vertex_cap) for c_text in todo]
    jobs = _resolve_jobs(jobs)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(tasks) // (8 * jobs))
            fresh = list(pool.map(_census_worker, tasks, chunksize=chunk))
    else:
        fresh = [_census_worker(t) for t in tasks]

    if path is not None:
        is_new = not path.exists() or not path.read_text().strip()
        with open(path, "a") as fh:
            if is_new:
                fh.write(json.dumps(header) + "\n")
            for rec in fresh:
                fh.write(json.dumps(rec) + "\n")

    for rec in fresh:
        cached[rec["c"]] = rec
    records, failures = [], []
    for c in params:
        rec = cached[str(c)]
        if "error" in rec:
            failures.append((c, rec["error"]))
        else:
            records.append(CensusRecord(
                c=c, label=rec["class"], vertices=rec["vertices"],
                seconds=rec["seconds"],
            ))
    return CensusReport(
        family=family,
        height_bound=height_bound,
        n_max=n_max,
        records=tuple(records),
        failures=tuple(failures),
    )


# ----------------------------------------------------------------------
# export

def portrait_to_dot(G: Portrait) -> str:
    """Graphviz source, one digraph per connected component, vertices
    labeled by their exact coordinates."""
    labels = G.labels
    blocks = []
    for k, comp in enumerate(G.components()):
        lines = [f"digraph component_{k} {{"]
        for v in comp:
            lines.append(f'    "{labels[v]}" -> "{labels[G.successors[v]]}";')
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n".join(blocks) + "\n"


def portrait_to_json(G: Portrait) -> dict:
    cls = canonical_form(G)
    labels = G.labels
    return {
        "field": G.field,
        "vertices": list(labels),
        "edges": [[labels[v], labels[G.successors[v]]] for v in range(len(labels))],
        "classes": {
            "name": classify(G),
            "certificate": cls.certificate,
            "cycle_lengths": list(cls.cycle_lengths),
        },
        "assumptions": {k: str(v) for k, v in sorted(G.meta.items())},
    }
