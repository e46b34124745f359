"""Exact rational and polynomial arithmetic."""

from relweil.arith.algorithms import (
    SquarefreeDecomposition,
    SquarefreePart,
    discriminant,
    poly_gcd,
    poly_xgcd,
    resultant,
    yun_squarefree,
)
from relweil.arith.multipoly import MultiPoly
from relweil.arith.rational import Q, format_rational, parse_rational
from relweil.arith.unipoly import UniPoly

__all__ = [
    "MultiPoly",
    "Q",
    "SquarefreeDecomposition",
    "SquarefreePart",
    "UniPoly",
    "discriminant",
    "format_rational",
    "parse_rational",
    "poly_gcd",
    "poly_xgcd",
    "resultant",
    "yun_squarefree",
]
