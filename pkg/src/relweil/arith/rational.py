"""Rational numbers.

``fractions.Fraction`` already keeps ``gcd(num, den) == 1`` and ``den > 0``,
so it is used directly as the coefficient type for K = Q.
"""

import math
import re
from fractions import Fraction

from relweil.errors import ParseError

Q = Fraction

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def to_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def parse_rational(text, path=None):
    """Parse ``"p"`` or ``"p/q"``; integers are accepted unchanged."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}", path=path)
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"malformed rational {text!r}", path=path)
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", path=path, line=1, column=text.index("/") + 2)
    return Fraction(num, den)


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def is_rational_square(q):
    q = Fraction(q)
    if q < 0:
        return False
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    return rn * rn == q.numerator and rd * rd == q.denominator


def is_canonical(q):
    return isinstance(q, Fraction) and q.denominator > 0 and math.gcd(q.numerator, q.denominator) == 1
