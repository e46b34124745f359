"""Relative Weil restrictions, fibered-product genera and Chabauty bookkeeping
with exact rational arithmetic."""

from relweil import kernels
from relweil.arith import (
    MultiPoly,
    UniPoly,
    discriminant,
    poly_gcd,
    resultant,
    yun_squarefree,
)
from relweil.number_field import NFElement, NumberField, QuotientRing

__version__ = "0.1.0"

__all__ = [
    "MultiPoly",
    "NFElement",
    "NumberField",
    "QuotientRing",
    "UniPoly",
    "discriminant",
    "kernels",
    "poly_gcd",
    "resultant",
    "yun_squarefree",
]
