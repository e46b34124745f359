"""GCD, resultant, discriminant and squarefree decomposition.

Over Q the gcd and resultant run the subresultant PRS on integer coefficient
lists, which keeps intermediate coefficients small. Over number fields and
quotient rings the gcd is a monic Euclidean algorithm: every leading
coefficient is inverted, so a zero divisor surfaces as
:class:`~relweil.errors.ZeroDivisorEncountered` instead of a silently wrong
degree. Resultants follow the Sylvester-determinant convention with the rows
of the first argument on top.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from relweil import kernels
from relweil.arith.multipoly import MultiPoly
from relweil.arith.ring import exquo, inverse, power
from relweil.arith.unipoly import UniPoly
from relweil.errors import PreconditionError


def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def _is_rational(f):
    return all(isinstance(c, Fraction) for c in f.coeffs)


def _integer_coeffs(f):
    """Integer list proportional to ``f`` and the scale used."""
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in f.coeffs], den


def _subresultant(A, B):
    """Subresultant PRS on trimmed lists with ``len(A) >= len(B) >= 1``.

    Returns ``(last non-zero remainder, res(A, B))``.
    """
    g = h = 1
    s = 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da & 1 and db & 1:
            s = -s
        R = _trim(kernels.dense_prem(A, B))
        A = B
        if R:
            div = g * power(h, delta)
            R = [exquo(c, div) for c in R]
        B = R
        g = A[-1]
        if delta:
            h = exquo(power(g, delta), power(h, delta - 1))
        if len(B) > 1:
            continue
        da = len(A) - 1
        if not B:
            return A, (0 if da > 0 else s * h)
        return B, s * exquo(power(B[0], da), power(h, da - 1))


def _prs_resultant(A, B):
    """Resultant of two non-zero coefficient lists (any integral domain)."""
    A, B = _trim(A), _trim(B)
    da, db = len(A) - 1, len(B) - 1
    sign = 1
    if da < db:
        A, B = B, A
        if da & 1 and db & 1:
            sign = -1
    if len(B) == 1:
        return sign * power(B[0], len(A) - 1)
    return sign * _subresultant(A, B)[1]


# ------------------------------------------------------------------- gcd
def _euclid_gcd(f, g):
    a, b = f.monic(), g.monic()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        r = a % b
        a, b = b, r.monic() if r else r
    return a


def poly_gcd(f, g):
    """Monic gcd; zero iff both inputs are zero."""
    if f.var != g.var and f.degree > 0 and g.degree > 0:
        raise PreconditionError(f"different variables {f.var!r}, {g.var!r}")
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if _is_rational(f) and _is_rational(g):
        A, _ = _integer_coeffs(f)
        B, _ = _integer_coeffs(g)
        if len(A) < len(B):
            A, B = B, A
        if len(B) == 1:
            return UniPoly((Fraction(1),), f.var)
        last, _ = _subresultant(A, B)
        return UniPoly([Fraction(c) for c in last], f.var).monic()
    return _euclid_gcd(f, g)


def poly_xgcd(a, b):
    """``(g, s, t)`` with ``g = s*a + t*b`` monic (field coefficients)."""
    one = Fraction(1)
    r0, r1 = a, b
    s0, s1 = UniPoly((one,), a.var), UniPoly((), a.var)
    t0, t1 = UniPoly((), a.var), UniPoly((one,), a.var)
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = inverse(r0.lc)
    return r0 * inv, s0 * inv, t0 * inv


# ------------------------------------------------------------- resultant
def resultant(f, g, eliminate=None):
    """Resultant of ``f`` and ``g`` with respect to ``eliminate``.

    ``UniPoly`` inputs give a coefficient; ``MultiPoly`` inputs give a
    ``MultiPoly`` in the remaining variables.
    """
    if not f or not g:
        raise PreconditionError("resultant of a zero polynomial")
    if isinstance(f, UniPoly) and isinstance(g, UniPoly):
        if _is_rational(f) and _is_rational(g):
            A, ca = _integer_coeffs(f)
            B, cb = _integer_coeffs(g)
            r = _prs_resultant(A, B)
            return Fraction(r) / (Fraction(ca) ** g.degree * Fraction(cb) ** f.degree)
        return _prs_resultant(list(f.coeffs), list(g.coeffs))
    if not isinstance(f, MultiPoly):
        f = MultiPoly.const(f, g.vars)
    if not isinstance(g, MultiPoly):
        g = MultiPoly.const(g, f.vars)
    f, g = f._unify(g)
    if eliminate is None:
        raise PreconditionError("multivariate resultant needs the variable to eliminate")
    uf, ug = f.as_univariate(eliminate), g.as_univariate(eliminate)
    rest = tuple(v for v in f.vars if v != eliminate)
    r = _prs_resultant(list(uf.coeffs), list(ug.coeffs))
    if not isinstance(r, MultiPoly):
        r = MultiPoly.const(r, rest)
    return r.with_vars(rest) if r.vars != rest else r


def discriminant(f, var=None):
    """``(-1)**(d(d-1)/2) * res(f, f') / lc(f)``."""
    if isinstance(f, MultiPoly):
        if var is None:
            raise PreconditionError("multivariate discriminant needs a variable")
        d = f.degree(var)
        if d < 1:
            raise PreconditionError("discriminant of a constant")
        lead = f.as_univariate(var).lc
        r = resultant(f, f.diff(var), var)
        r = r.exquo(lead) if isinstance(lead, MultiPoly) else r / lead
        return -r if (d * (d - 1) // 2) & 1 else r
    d = f.degree
    if d < 1:
        raise PreconditionError("discriminant of a constant")
    if d == 1:
        return Fraction(1) if _is_rational(f) else f.lc * 0 + 1
    r = exquo(resultant(f, f.derivative()), f.lc)
    return -r if (d * (d - 1) // 2) & 1 else r


# ----------------------------------------------------------- squarefree
@dataclass(frozen=True)
class SquarefreePart:
    multiplicity: int
    factor: UniPoly
    degree: int


@dataclass(frozen=True)
class SquarefreeDecomposition:
    parts: tuple
    unit: object = Fraction(1)

    def reconstruct(self, var=None):
        acc = UniPoly((self.unit,), var or (self.parts[0].factor.var if self.parts else "x"))
        for p in self.parts:
            acc = acc * p.factor ** p.multiplicity
        return acc

    def squarefree_part(self):
        acc = None
        for p in self.parts:
            acc = p.factor if acc is None else acc * p.factor
        return acc

    def as_tuples(self):
        return [(p.multiplicity, p.factor, p.degree) for p in self.parts]


def yun_squarefree(f):
    """Yun's algorithm; parts are monic, pairwise coprime, ordered by multiplicity."""
    if not f:
        raise PreconditionError("squarefree decomposition of zero")
    unit = f.lc
    f = f.monic()
    if f.degree < 1:
        return SquarefreeDecomposition((), unit)
    df = f.derivative()
    a0 = poly_gcd(f, df)
    b = f.exquo(a0)
    c = df.exquo(a0)
    d = c - b.derivative()
    parts = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exquo(a)
        c = d.exquo(a)
        d = c - b.derivative()
        if a.degree > 0:
            parts.append(SquarefreePart(i, a, a.degree))
        i += 1
    return SquarefreeDecomposition(tuple(parts), unit)
