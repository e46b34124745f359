"""Generic helpers over the coefficient types used in the package.

Coefficients are ``Fraction``, ``int`` (inside integer PRS only), number-field
elements, or polynomials. All support ``+ - *``, ``bool`` and ``== 0``.
"""

from fractions import Fraction

from relweil.errors import NotDivisible


def exquo(a, b):
    """Exact quotient ``a / b`` in the coefficient domain."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise NotDivisible(f"{b} does not divide {a}")
        return q
    method = getattr(a, "exquo", None)
    if method is not None:
        return method(b)
    if isinstance(a, int):
        a = Fraction(a)
    return a / b


def inverse(a):
    """Field inverse; quotient-ring elements may raise ZeroDivisorEncountered."""
    if isinstance(a, (int, Fraction)):
        return 1 / Fraction(a)
    return a.inverse()


def power(a, n):
    result = 1
    while n:
        if n & 1:
            result = a * result
        n >>= 1
        if n:
            a = a * a
    return result
