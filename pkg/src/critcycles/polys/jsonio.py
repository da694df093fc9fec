"""JSON wire format for polynomials.

A polynomial serializes as {"vars": [...], "terms": [[exponents, coeff]]}
with exponent tuples parallel to the variable list and coefficients written
as exact "num/den" strings.  Terms are emitted in descending graded-lex
order so equal polynomials serialize to equal documents.
"""

from __future__ import annotations

from fractions import Fraction

from .multipoly import MultiPoly, _grlex_key
from .domains import QQ
from .unipoly import UniPoly


def _coeff_str(c: Fraction) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def multipoly_to_json(mp: MultiPoly) -> dict:
    order = sorted(mp.terms, key=_grlex_key, reverse=True)
    return {
        "vars": list(mp.vars),
        "terms": [[list(e), _coeff_str(mp.terms[e])] for e in order],
    }


def multipoly_from_json(data: dict) -> MultiPoly:
    variables = tuple(data["vars"])
    terms = {tuple(e): Fraction(c) for e, c in data["terms"]}
    return MultiPoly(variables, terms)


def unipoly_to_json(p: UniPoly) -> dict:
    return {
        "vars": [p.var],
        "terms": [
            [[k], _coeff_str(p[k])]
            for k in range(p.degree, -1, -1)
            if p[k]
        ],
    }


def unipoly_from_json(data: dict, dom=QQ) -> UniPoly:
    (var,) = data["vars"]
    coeffs: list[Fraction] = []
    for exps, c in data["terms"]:
        (k,) = exps
        while len(coeffs) <= k:
            coeffs.append(Fraction(0))
        coeffs[k] = Fraction(c)
    return UniPoly(dom, coeffs, var)
