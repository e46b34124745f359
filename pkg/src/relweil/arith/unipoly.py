"""Dense univariate polynomials over an arbitrary coefficient ring."""

from fractions import Fraction

from relweil import kernels
from relweil.arith.ring import exquo, inverse
from relweil.errors import NotDivisible


def _norm(c):
    return Fraction(c) if type(c) is int else c


def _coeff_str(c):
    s = str(c)
    if isinstance(c, Fraction) or s.lstrip("-").isalnum():
        return s
    return f"({s})"


class UniPoly:
    """Polynomial ``sum(coeffs[i] * var**i)``; the zero polynomial has no coefficients.

    Integer coefficients are promoted to ``Fraction`` so that arithmetic over Q
    never silently falls back to floats.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="x"):
        c = [_norm(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)
        self.var = var

    @classmethod
    def gen(cls, var="x", one=Fraction(1)):
        return cls((0 * one, one), var)

    @classmethod
    def constant(cls, c, var="x"):
        return cls((c,), var)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def _lift(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly((other,), self.var)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if self.degree > 0:
            return False
        return (self.coeffs[0] if self.coeffs else 0) == other

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.var)
        return UniPoly(kernels.dense_mul(self.coeffs, other.coeffs), self.var)

    def __rmul__(self, other):
        return UniPoly([other * c for c in self.coeffs], self.var)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly((Fraction(1),), self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, inner):
        """``self(inner)`` for a polynomial ``inner``."""
        acc = UniPoly((), inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def map_coeffs(self, fn, var=None):
        return UniPoly([fn(c) for c in self.coeffs], var or self.var)

    def monic(self):
        if not self.coeffs:
            return self
        inv = inverse(self.coeffs[-1])
        return UniPoly([c * inv for c in self.coeffs[:-1]] + [self.coeffs[-1] * inv], self.var)

    def divmod(self, other):
        """Euclidean division; ``other.lc`` must be invertible."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        inv = inverse(other.lc)
        db = other.degree
        r = list(self.coeffs)
        q = [0] * max(len(r) - db, 0)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            c = c * inv
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = r[k - db + j] - c * other.coeffs[j]
        return UniPoly(q, self.var), UniPoly(r[:db], self.var)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exquo(self, other):
        """Exact quotient over an integral domain (no inversions)."""
        if not isinstance(other, UniPoly):
            return UniPoly([exquo(c, other) for c in self.coeffs], self.var)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        db = other.degree
        r = list(self.coeffs)
        q = [0] * max(len(r) - db, 0)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            c = exquo(c, other.coeffs[-1])
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = r[k - db + j] - c * other.coeffs[j]
        if any(r[:db]):
            raise NotDivisible(f"({other}) does not divide ({self})")
        return UniPoly(q, self.var)

    def prem(self, other):
        if self.degree < other.degree:
            return self
        return UniPoly(kernels.dense_prem(self.coeffs, other.coeffs), self.var)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if isinstance(c, Fraction):
                sign = "-" if c < 0 else "+"
                mag = abs(c)
                body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else f"{mag}")
            else:
                sign = "+"
                cs = _coeff_str(c)
                body = mono if (cs == "1" and mono) else (f"{cs}*{mono}" if mono else cs)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out
