"""Polynomial arithmetic over the exact domains the workbench needs."""

from .multipoly import MultiPoly
from .unipoly import (
    UniPoly,
    discriminant,
    lagrange_interp,
    nth_root_poly,
    poly_gcd,
    resultant,
    squarefree_part,
)
from .domains import (
    QQ,
    Domain,
    FracDomain,
    MultiPolyRing,
    PolyDomain,
    QuadDomain,
    QuotientField,
    RatFunc,
)
from .jsonio import (
    multipoly_from_json,
    multipoly_to_json,
    unipoly_from_json,
    unipoly_to_json,
)

__all__ = [
    "Domain",
    "FracDomain",
    "MultiPoly",
    "MultiPolyRing",
    "PolyDomain",
    "QQ",
    "QuadDomain",
    "QuotientField",
    "RatFunc",
    "UniPoly",
    "discriminant",
    "lagrange_interp",
    "multipoly_from_json",
    "multipoly_to_json",
    "nth_root_poly",
    "poly_gcd",
    "resultant",
    "squarefree_part",
    "unipoly_from_json",
    "unipoly_to_json",
]
